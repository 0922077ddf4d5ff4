/*
   Copyright 2026 The preserverlab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "preserverlab/canonform.hpp"
#include "preserverlab/elemop.hpp"
#include "preserverlab/field.hpp"
#include "preserverlab/matrix.hpp"
#include "preserverlab/multipoly.hpp"
#include "preserverlab/omegaclass.hpp"
#include "preserverlab/oracle.hpp"
#include "preserverlab/preserver.hpp"

namespace preserverlab::json {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Readers throw InvalidInput naming the offending member. Writers emit field
/// elements as strings (coefficient arrays of strings for GF(p^k), {"re","im"}
/// for Q(i)); sizes, counts and seeds are plain JSON integers.

Json field_to_json(const Field& f);
Field field_from_json(const Json& j);
/// "GF(5)", "GF(2^3)", "Q", "Q(i)" or a JSON descriptor.
Field parse_field_arg(const std::string& s);

Json scalar_to_json(const Field& f, const Scalar& s);
Scalar scalar_from_json(const Field& f, const Json& j);

/// {"field": ..., "rows": [[...], ...]}; the field is omitted when with_field is false.
Json matrix_to_json(const ExactMatrix& m, bool with_field = true);
/// `context` supplies the field when the document has none.
ExactMatrix matrix_from_json(const Json& j, const std::optional<Field>& context = std::nullopt);
/// Inverse of matrix_key for a square matrix over f.
ExactMatrix matrix_from_key(const Field& f, const std::string& key);

Json unipoly_to_json(const UniPoly& p, bool with_field = true);
UniPoly unipoly_from_json(const Json& j, const std::optional<Field>& context = std::nullopt);

Json poly_to_json(const MultilinearPoly& p);
MultilinearPoly poly_from_json(const Json& j, const std::optional<Field>& context = std::nullopt);

Json hom_to_json(const FieldHom& h);
FieldHom hom_from_json(const Field& f, const Json& j);

Json tuple_to_json(const Tuple& t);
Tuple tuple_from_json(const Json& j, const std::optional<Field>& context = std::nullopt);

Json basis_to_json(const SubspaceBasis& b);
SubspaceBasis basis_from_json(const Json& j, const std::optional<Field>& context = std::nullopt);

Json spec_to_json(const PreserverSpec& s);
PreserverSpec spec_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

Json report_to_json(const LemmaReport& r);
LemmaReport report_from_json(const Json& j);

struct ClassificationDoc {
    Field base;
    OmegaClassification result;
    std::size_t dimension = 0;
};
Json classification_to_json(const ClassificationDoc& c);
ClassificationDoc classification_from_json(const Json& j);

Json rcf_to_json(const PrimaryRationalForm& rf);
PrimaryRationalForm rcf_from_json(const Json& j);

struct JordanDoc {
    Field base;
    SplitJordanData data;
};
Json jordan_to_json(const JordanDoc& d);
JordanDoc jordan_from_json(const Json& j);

Json example_to_json(const ExampleReport& r);
ExampleReport example_from_json(const Json& j);

/// Adds {"v": 1, "kind": kind} in front of the members of body.
Json document(const std::string& kind, const Json& body);
/// Checks the version (and the kind, when given) and returns the document.
const Json& expect_document(const Json& j, const std::string& kind = "");

}  // namespace preserverlab::json
