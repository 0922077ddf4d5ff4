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

#include "preserverlab/jsonio.hpp"

#include <cctype>
#include <regex>

#include "preserverlab/errors.hpp"

namespace preserverlab::json {

namespace {

const Json& member(const Json& j, const char* key) {
    if (!j.is_object()) throw InvalidInput(std::string("expected an object with member '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw InvalidInput(std::string("missing member '") + key + "'");
    return *it;
}

const Json* optional_member(const Json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::uint64_t get_uint(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw InvalidInput(std::string("member '") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::uint64_t get_uint_or(const Json& j, const char* key, std::uint64_t fallback) {
    return optional_member(j, key) ? get_uint(j, key) : fallback;
}

bool get_bool(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_boolean()) throw InvalidInput(std::string("member '") + key + "' must be a boolean");
    return v.get<bool>();
}

bool get_bool_or(const Json& j, const char* key, bool fallback) {
    return optional_member(j, key) ? get_bool(j, key) : fallback;
}

std::string get_string(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_string()) throw InvalidInput(std::string("member '") + key + "' must be a string");
    return v.get<std::string>();
}

const Json& get_array(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_array()) throw InvalidInput(std::string("member '") + key + "' must be an array");
    return v;
}

mpz_class parse_integer(const std::string& s) {
    static const std::regex re("[-+]?[0-9]+");
    if (!std::regex_match(s, re)) throw InvalidInput("not an integer: '" + s + "'");
    return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

mpq_class parse_rational(const std::string& s) {
    static const std::regex re("[-+]?[0-9]+(/[0-9]+)?");
    if (!std::regex_match(s, re)) throw InvalidInput("not a rational: '" + s + "'");
    mpq_class q(s[0] == '+' ? s.substr(1) : s, 10);
    if (q.get_den() == 0) throw InvalidInput("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

mpq_class rational_value(const Json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InvalidInput("expected a rational as a string, got " + j.dump());
}

mpz_class integer_value(const Json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (j.is_string()) return parse_integer(j.get<std::string>());
    throw InvalidInput("expected an integer as a string, got " + j.dump());
}

// Field::format of a Gaussian rational: "a", "bi", "a+bi", "a-bi", "i", "-i".
Scalar parse_gaussian_text(const Field& f, const std::string& s) {
    if (s.empty() || s.back() != 'i') return f.gaussian(parse_rational(s), 0);
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;)
        if (body[i] == '+' || body[i] == '-') {
            split = i;
            break;
        }
    auto im_of = [](const std::string& t) -> mpq_class {
        if (t.empty() || t == "+") return 1;
        if (t == "-") return -1;
        return parse_rational(t);
    };
    if (split == std::string::npos) return f.gaussian(0, im_of(body));
    return f.gaussian(parse_rational(body.substr(0, split)), im_of(body.substr(split)));
}

// Nested bracket lists as printed by ExactMatrix::str.
struct KeyNode {
    std::string atom;
    std::vector<KeyNode> items;
    bool is_list = false;
};

KeyNode parse_key_node(const std::string& s, std::size_t& pos) {
    KeyNode node;
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos < s.size() && s[pos] == '[') {
        node.is_list = true;
        ++pos;
        if (pos < s.size() && s[pos] == ']') {
            ++pos;
            return node;
        }
        while (true) {
            node.items.push_back(parse_key_node(s, pos));
            while (pos < s.size() && s[pos] == ' ') ++pos;
            if (pos >= s.size()) throw InvalidInput("unterminated matrix key");
            if (s[pos] == ']') {
                ++pos;
                return node;
            }
            if (s[pos] != ',') throw InvalidInput("malformed matrix key");
            ++pos;
        }
    }
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != ']') ++pos;
    node.atom = s.substr(start, pos - start);
    while (!node.atom.empty() && node.atom.back() == ' ') node.atom.pop_back();
    return node;
}

Scalar scalar_from_key_node(const Field& f, const KeyNode& n) {
    switch (f.kind()) {
        case FieldKind::prime:
            if (n.is_list) break;
            return f.from_mpz(parse_integer(n.atom));
        case FieldKind::extension: {
            if (!n.is_list) break;
            std::vector<std::uint64_t> c;
            for (auto& d : n.items) c.push_back(parse_integer(d.atom).get_ui());
            return f.from_coefficients(c);
        }
        case FieldKind::rationals:
            if (n.is_list) break;
            return f.from_rational(parse_rational(n.atom));
        case FieldKind::gaussian_rationals:
            if (n.is_list) break;
            return parse_gaussian_text(f, n.atom);
    }
    throw InvalidInput("matrix key entry does not match " + f.name());
}

OmegaCase case_from_string(const std::string& s) {
    for (auto c : {OmegaCase::trivial_zero, OmegaCase::rank_one_square_zero, OmegaCase::scalar_idempotent_line,
                   OmegaCase::other})
        if (to_string(c) == s) return c;
    throw InvalidInput("unknown case '" + s + "'");
}

ClassPath path_from_string(const std::string& s) {
    for (auto p : {ClassPath::structural, ClassPath::direct})
        if (to_string(p) == s) return p;
    throw InvalidInput("unknown path '" + s + "'");
}

Strategy strategy_from_string(const std::string& s) {
    for (auto k : {Strategy::exhaustive, Strategy::witnesses, Strategy::sample})
        if (to_string(k) == s) return k;
    throw InvalidInput("unknown strategy '" + s + "'");
}

EntryTweak tweak_from_string(const std::string& s) {
    for (auto t : {EntryTweak::none, EntryTweak::add_a12_identity, EntryTweak::subtract_trace_over_n})
        if (to_string(t) == s) return t;
    throw InvalidInput("unknown tweak '" + s + "'");
}

Json rows_of(const ExactMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.field(), m.at(i, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Field field_in(const Json& j, const std::optional<Field>& context) {
    if (auto* f = optional_member(j, "field")) return field_from_json(*f);
    if (context) return *context;
    throw InvalidInput("missing member 'field'");
}

Json named_pairs(const std::vector<std::pair<std::string, std::string>>& v) {
    Json a = Json::array();
    for (auto& [k, x] : v) a.push_back(Json{{"name", k}, {"value", x}});
    return a;
}

std::vector<std::pair<std::string, std::string>> named_pairs_from(const Json& a) {
    if (!a.is_array()) throw InvalidInput("expected an array of {name, value}");
    std::vector<std::pair<std::string, std::string>> v;
    for (auto& e : a) v.emplace_back(get_string(e, "name"), get_string(e, "value"));
    return v;
}

}  // namespace

// ---- field -----------------------------------------------------------------

Json field_to_json(const Field& f) {
    switch (f.kind()) {
        case FieldKind::prime:
            return Json{{"kind", "gf"}, {"p", f.characteristic()}, {"k", 1}};
        case FieldKind::extension:
            return Json{{"kind", "gf"}, {"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}};
        case FieldKind::rationals:
            return Json{{"kind", "q"}};
        case FieldKind::gaussian_rationals:
            return Json{{"kind", "qi"}};
    }
    return Json{};
}

Field field_from_json(const Json& j) {
    if (j.is_string()) return parse_field_arg(j.get<std::string>());
    const std::string kind = get_string(j, "kind");
    if (kind == "q") return Field::rationals();
    if (kind == "qi") return Field::gaussian_rationals();
    if (kind != "gf") throw InvalidInput("unknown field kind '" + kind + "'");
    const std::uint64_t p = get_uint(j, "p");
    const std::uint64_t k = get_uint_or(j, "k", 1);
    if (k == 0) throw InvalidInput("field degree must be positive");
    if (auto* m = optional_member(j, "modulus")) {
        if (!m->is_array()) throw InvalidInput("member 'modulus' must be an array");
        std::vector<std::uint64_t> mod;
        for (auto& c : *m) {
            if (!c.is_number_unsigned() && !(c.is_number_integer() && c.get<long long>() >= 0))
                throw InvalidInput("modulus coefficients must be non-negative integers");
            mod.push_back(c.get<std::uint64_t>());
        }
        if (mod.size() != k + 1) throw InvalidInput("modulus length must be k + 1");
        if (k == 1) return Field::prime(p);
        return Field::extension(p, mod);
    }
    return k == 1 ? Field::prime(p) : Field::galois(p, static_cast<unsigned>(k));
}

Field parse_field_arg(const std::string& s) {
    if (!s.empty() && s.front() == '{') {
        try {
            return field_from_json(Json::parse(s));
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput(std::string("bad field descriptor: ") + e.what());
        }
    }
    std::string t;
    for (char c : s) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (t == "Q") return Field::rationals();
    if (t == "Q(I)" || t == "QI") return Field::gaussian_rationals();
    static const std::regex gf("GF\\(?([0-9]+)(\\^([0-9]+))?\\)?");
    std::smatch m;
    if (std::regex_match(t, m, gf)) {
        std::uint64_t p = std::stoull(m[1].str());
        unsigned k = m[3].matched ? static_cast<unsigned>(std::stoul(m[3].str())) : 1;
        if (k == 0) throw InvalidInput("field degree must be positive");
        if (!m[3].matched) {
            // GF(q) for a prime power q
            std::uint64_t d = 2;
            while (d * d <= p && p % d != 0) ++d;
            if (d * d <= p) {
                std::uint64_t r = p;
                unsigned e = 0;
                while (r % d == 0) r /= d, ++e;
                if (r == 1) p = d, k = e;
            }
        }
        return k == 1 ? Field::prime(p) : Field::galois(p, k);
    }
    throw InvalidInput("unrecognized field '" + s + "' (use GF(p), GF(p^k), Q, Q(i) or a JSON descriptor)");
}

// ---- scalars ---------------------------------------------------------------

Json scalar_to_json(const Field& f, const Scalar& s) {
    switch (f.kind()) {
        case FieldKind::prime:
            return f.format(s);
        case FieldKind::extension: {
            Json a = Json::array();
            for (auto c : f.coefficients(s)) a.push_back(std::to_string(c));
            return a;
        }
        case FieldKind::rationals:
            return std::get<mpq_class>(s).get_str();
        case FieldKind::gaussian_rationals: {
            const auto& g = std::get<GaussianRational>(s);
            return Json{{"re", g.re.get_str()}, {"im", g.im.get_str()}};
        }
    }
    return Json{};
}

Scalar scalar_from_json(const Field& f, const Json& j) {
    switch (f.kind()) {
        case FieldKind::prime:
            return f.from_mpz(integer_value(j));
        case FieldKind::extension: {
            if (!j.is_array()) return f.from_mpz(integer_value(j));
            if (j.size() > f.degree()) throw InvalidInput("too many coefficients for " + f.name());
            std::vector<std::uint64_t> c;
            const mpz_class p(static_cast<unsigned long>(f.characteristic()));
            for (auto& e : j) {
                mpz_class v = integer_value(e) % p;
                if (v < 0) v += p;
                c.push_back(v.get_ui());
            }
            c.resize(f.degree(), 0);
            return f.from_coefficients(c);
        }
        case FieldKind::rationals:
            return f.from_rational(rational_value(j));
        case FieldKind::gaussian_rationals:
            if (j.is_object()) return f.gaussian(rational_value(member(j, "re")), rational_value(member(j, "im")));
            if (j.is_string()) return parse_gaussian_text(f, j.get<std::string>());
            return f.gaussian(rational_value(j), 0);
    }
    throw InvalidInput("unsupported field");
}

// ---- matrices and polynomials ----------------------------------------------

Json matrix_to_json(const ExactMatrix& m, bool with_field) {
    Json j;
    if (with_field) j["field"] = field_to_json(m.field());
    j["rows"] = rows_of(m);
    return j;
}

ExactMatrix matrix_from_json(const Json& j, const std::optional<Field>& context) {
    const Field f = field_in(j, context);
    const Json& rows = get_array(j, "rows");
    if (rows.empty()) throw InvalidInput("matrix has no rows");
    const std::size_t r = rows.size();
    if (!rows[0].is_array() || rows[0].empty()) throw InvalidInput("matrix rows must be non-empty arrays");
    const std::size_t c = rows[0].size();
    std::vector<Scalar> e;
    e.reserve(r * c);
    for (auto& row : rows) {
        if (!row.is_array() || row.size() != c) throw InvalidInput("matrix rows must have equal length");
        for (auto& x : row) e.push_back(scalar_from_json(f, x));
    }
    return ExactMatrix(f, r, c, std::move(e));
}

ExactMatrix matrix_from_key(const Field& f, const std::string& key) {
    std::size_t pos = 0;
    const KeyNode root = parse_key_node(key, pos);
    if (!root.is_list || root.items.empty()) throw InvalidInput("malformed matrix key");
    const std::size_t r = root.items.size();
    std::vector<Scalar> e;
    std::size_t c = 0;
    for (auto& row : root.items) {
        if (!row.is_list) throw InvalidInput("malformed matrix key");
        if (c == 0) c = row.items.size();
        if (row.items.size() != c) throw InvalidInput("ragged matrix key");
        for (auto& x : row.items) e.push_back(scalar_from_key_node(f, x));
    }
    return ExactMatrix(f, r, c, std::move(e));
}

Json unipoly_to_json(const UniPoly& p, bool with_field) {
    Json j;
    if (with_field) j["field"] = field_to_json(p.field());
    Json c = Json::array();
    for (auto& x : p.coeffs()) c.push_back(scalar_to_json(p.field(), x));
    j["coeffs"] = std::move(c);
    return j;
}

UniPoly unipoly_from_json(const Json& j, const std::optional<Field>& context) {
    const Field f = field_in(j, context);
    std::vector<Scalar> c;
    for (auto& x : get_array(j, "coeffs")) c.push_back(scalar_from_json(f, x));
    return UniPoly(f, std::move(c));
}

Json poly_to_json(const MultilinearPoly& p) {
    Json terms = Json::array();
    for (auto& [sigma, c] : p.terms()) terms.push_back(Json{{"perm", sigma}, {"coeff", scalar_to_json(p.field(), c)}});
    return Json{{"k", p.arity()}, {"field", field_to_json(p.field())}, {"terms", std::move(terms)}};
}

MultilinearPoly poly_from_json(const Json& j, const std::optional<Field>& context) {
    const Field f = field_in(j, context);
    const std::uint64_t k = get_uint(j, "k");
    if (k < 1 || k > kMaxArity) throw InvalidInput("arity must be between 1 and " + std::to_string(kMaxArity));
    MultilinearPoly p(f, static_cast<unsigned>(k));
    for (auto& t : get_array(j, "terms")) {
        const Json& perm = get_array(t, "perm");
        Permutation s;
        for (auto& x : perm) {
            if (!x.is_number_integer() || x.get<long long>() < 1) throw InvalidInput("perm entries must be positive integers");
            s.push_back(x.get<unsigned>());
        }
        if (s.size() != k || !is_permutation(s)) throw InvalidInput("perm " + perm.dump() + " is not a permutation of 1.." + std::to_string(k));
        p.add_term(s, scalar_from_json(f, member(t, "coeff")));
    }
    return p;
}

Json hom_to_json(const FieldHom& h) {
    switch (h.kind()) {
        case FieldHom::Kind::identity:
            return Json{{"kind", "identity"}};
        case FieldHom::Kind::frobenius:
            return Json{{"kind", "frobenius"}, {"power", h.power()}};
        case FieldHom::Kind::conjugation:
            return Json{{"kind", "conjugation"}};
    }
    return Json{};
}

FieldHom hom_from_json(const Field& f, const Json& j) {
    const std::string kind = get_string(j, "kind");
    if (kind == "identity") return FieldHom::identity(f);
    if (kind == "frobenius") return FieldHom::frobenius(f, static_cast<unsigned>(get_uint(j, "power")));
    if (kind == "conjugation") return FieldHom::conjugation(f);
    throw InvalidInput("unknown automorphism kind '" + kind + "'");
}

Json tuple_to_json(const Tuple& t) {
    Json j;
    if (!t.empty()) j["field"] = field_to_json(t.front().field());
    Json ms = Json::array();
    for (auto& m : t) ms.push_back(matrix_to_json(m, false));
    j["matrices"] = std::move(ms);
    return j;
}

Tuple tuple_from_json(const Json& j, const std::optional<Field>& context) {
    Tuple t;
    if (j.is_array()) {
        for (auto& m : j) t.push_back(matrix_from_json(m, context));
        return t;
    }
    std::optional<Field> f = context;
    if (auto* fj = optional_member(j, "field")) f = field_from_json(*fj);
    for (auto& m : get_array(j, "matrices")) t.push_back(matrix_from_json(m.is_array() ? Json{{"rows", m}} : m, f));
    return t;
}

Json basis_to_json(const SubspaceBasis& b) {
    Json list = Json::array();
    for (auto& m : b.basis()) list.push_back(rows_of(m));
    return Json{{"field", field_to_json(b.field())}, {"rows", b.rows()}, {"cols", b.cols()}, {"dim", b.dim()}, {"basis", std::move(list)}};
}

SubspaceBasis basis_from_json(const Json& j, const std::optional<Field>& context) {
    const Field f = field_in(j, context);
    const std::size_t r = get_uint(j, "rows"), c = get_uint(j, "cols");
    std::vector<ExactMatrix> ms;
    for (auto& rows : get_array(j, "basis")) {
        ExactMatrix m = matrix_from_json(Json{{"rows", rows}}, f);
        if (m.rows() != r || m.cols() != c) throw InvalidInput("basis element has the wrong shape");
        ms.push_back(std::move(m));
    }
    if (auto* d = optional_member(j, "dim"); d && d->get<std::size_t>() != ms.size())
        throw InvalidInput("member 'dim' disagrees with the basis length");
    return SubspaceBasis(f, r, c, std::move(ms));
}

// ---- preserver specs and verdicts --------------------------------------------

Json spec_to_json(const PreserverSpec& s) {
    Json j{{"n", s.n}, {"field", field_to_json(s.field)}};
    if (s.mode == PreserverSpec::Mode::table) {
        j["mode"] = "table";
        Json t = Json::array();
        for (auto& [key, to] : s.table)
            t.push_back(Json{{"from", rows_of(matrix_from_key(s.field, key))}, {"to", rows_of(to)}});
        j["table"] = std::move(t);
        return j;
    }
    j["mode"] = "parametric";
    j["T"] = rows_of(s.T);
    j["phi"] = hom_to_json(s.phi);
    j["transpose"] = s.transpose;
    j["gamma"] = scalar_to_json(s.field, s.gamma);
    auto table = [&](const std::map<std::string, Scalar>& m) {
        Json a = Json::array();
        for (auto& [key, v] : m)
            a.push_back(Json{{"matrix", rows_of(matrix_from_key(s.field, key))}, {"value", scalar_to_json(s.field, v)}});
        return a;
    };
    j["gamma_table"] = table(s.gamma_table);
    j["shift_table"] = table(s.shift_table);
    j["tweak"] = to_string(s.tweak);
    return j;
}

PreserverSpec spec_from_json(const Json& j) {
    const Field f = field_from_json(member(j, "field"));
    const std::size_t n = get_uint(j, "n");
    if (n == 0) throw InvalidInput("n must be positive");
    auto square = [&](const Json& rows) {
        ExactMatrix m = matrix_from_json(Json{{"rows", rows}}, f);
        if (m.rows() != n || m.cols() != n) throw InvalidInput("spec matrices must be n x n");
        return m;
    };
    const std::string mode = optional_member(j, "mode") ? get_string(j, "mode") : "parametric";
    if (mode == "table") {
        std::vector<std::pair<ExactMatrix, ExactMatrix>> entries;
        for (auto& e : get_array(j, "table")) entries.emplace_back(square(member(e, "from")), square(member(e, "to")));
        PreserverSpec s = PreserverSpec::from_table(f, n, entries);
        s.validate();
        return s;
    }
    if (mode != "parametric") throw InvalidInput("unknown spec mode '" + mode + "'");
    PreserverSpec s = PreserverSpec::identity(f, n);
    if (auto* t = optional_member(j, "T")) s.set_similarity(square(*t));
    if (auto* p = optional_member(j, "phi")) s.phi = hom_from_json(f, *p);
    s.transpose = get_bool_or(j, "transpose", false);
    if (auto* g = optional_member(j, "gamma")) s.gamma = scalar_from_json(f, *g);
    auto table = [&](const char* key, std::map<std::string, Scalar>& out) {
        if (!optional_member(j, key)) return;
        for (auto& e : get_array(j, key)) {
            const std::string k = matrix_key(square(member(e, "matrix")));
            if (!out.emplace(k, scalar_from_json(f, member(e, "value"))).second)
                throw InvalidInput(std::string(key) + " lists a matrix twice");
        }
    };
    table("gamma_table", s.gamma_table);
    table("shift_table", s.shift_table);
    if (optional_member(j, "tweak")) s.tweak = tweak_from_string(get_string(j, "tweak"));
    s.validate();
    return s;
}

Json verdict_to_json(const Verdict& v) {
    Json j{{"holds", v.holds}, {"strategy", to_string(v.strategy)}, {"strong", v.strong}, {"checked", v.checked}, {"seed", v.seed}};
    std::optional<Field> f;
    if (v.witness && !v.witness->empty()) f = v.witness->front().field();
    if (f) j["field"] = field_to_json(*f);
    auto tuple = [](const Tuple& t) {
        Json a = Json::array();
        for (auto& m : t) a.push_back(rows_of(m));
        return a;
    };
    if (v.witness) j["witness"] = tuple(*v.witness);
    if (v.image) j["image"] = tuple(*v.image);
    if (v.value) j["value"] = rows_of(*v.value);
    if (v.image_value) j["image_value"] = rows_of(*v.image_value);
    return j;
}

Verdict verdict_from_json(const Json& j) {
    Verdict v;
    v.holds = get_bool(j, "holds");
    v.strategy = strategy_from_string(get_string(j, "strategy"));
    v.strong = get_bool(j, "strong");
    v.checked = get_uint(j, "checked");
    v.seed = get_uint(j, "seed");
    std::optional<Field> f;
    if (auto* fj = optional_member(j, "field")) f = field_from_json(*fj);
    auto mat = [&](const Json& rows) {
        if (!f) throw InvalidInput("verdict matrices need member 'field'");
        return matrix_from_json(Json{{"rows", rows}}, f);
    };
    auto tuple = [&](const Json& a) {
        if (!a.is_array()) throw InvalidInput("verdict tuples must be arrays");
        Tuple t;
        for (auto& rows : a) t.push_back(mat(rows));
        return t;
    };
    if (auto* w = optional_member(j, "witness")) v.witness = tuple(*w);
    if (auto* w = optional_member(j, "image")) v.image = tuple(*w);
    if (auto* w = optional_member(j, "value")) v.value = mat(*w);
    if (auto* w = optional_member(j, "image_value")) v.image_value = mat(*w);
    return v;
}

// ---- lemma reports -----------------------------------------------------------

namespace {

Json counterexample_to_json(const Field& f, const Counterexample& c) {
    Json ms = Json::array(), ss = Json::array();
    for (auto& [k, m] : c.matrices) ms.push_back(Json{{"name", k}, {"matrix", rows_of(m)}});
    for (auto& [k, s] : c.scalars) ss.push_back(Json{{"name", k}, {"value", scalar_to_json(f, s)}});
    return Json{{"what", c.what}, {"matrices", std::move(ms)}, {"scalars", std::move(ss)}, {"text", named_pairs(c.text)}};
}

Counterexample counterexample_from_json(const Field& f, const Json& j) {
    Counterexample c;
    c.what = get_string(j, "what");
    for (auto& m : get_array(j, "matrices"))
        c.matrices.emplace_back(get_string(m, "name"), matrix_from_json(Json{{"rows", member(m, "matrix")}}, f));
    for (auto& s : get_array(j, "scalars")) c.scalars.emplace_back(get_string(s, "name"), scalar_from_json(f, member(s, "value")));
    c.text = named_pairs_from(get_array(j, "text"));
    return c;
}

}  // namespace

Json report_to_json(const LemmaReport& r) {
    Json fails = Json::array(), sec = Json::array();
    for (auto& c : r.failures) fails.push_back(counterexample_to_json(r.field, c));
    for (auto& c : r.secondary_failures) sec.push_back(counterexample_to_json(r.field, c));
    return Json{{"lemma", r.lemma},
                {"field", field_to_json(r.field)},
                {"passed", r.passed()},
                {"exhaustive", r.exhaustive},
                {"seed", r.seed},
                {"instances", r.instances},
                {"premise_held", r.premise_held},
                {"failure_count", r.failure_count},
                {"failures", std::move(fails)},
                {"secondary_label", r.secondary_label},
                {"secondary_failure_count", r.secondary_failure_count},
                {"secondary_failures", std::move(sec)},
                {"notes", r.notes}};
}

LemmaReport report_from_json(const Json& j) {
    LemmaReport r;
    r.lemma = get_string(j, "lemma");
    r.field = field_from_json(member(j, "field"));
    r.exhaustive = get_bool(j, "exhaustive");
    r.seed = get_uint(j, "seed");
    r.instances = get_uint(j, "instances");
    r.premise_held = get_uint(j, "premise_held");
    r.failure_count = get_uint(j, "failure_count");
    for (auto& c : get_array(j, "failures")) r.failures.push_back(counterexample_from_json(r.field, c));
    r.secondary_label = get_string(j, "secondary_label");
    r.secondary_failure_count = get_uint(j, "secondary_failure_count");
    for (auto& c : get_array(j, "secondary_failures")) r.secondary_failures.push_back(counterexample_from_json(r.field, c));
    for (auto& n : get_array(j, "notes")) {
        if (!n.is_string()) throw InvalidInput("notes must be strings");
        r.notes.push_back(n.get<std::string>());
    }
    if (get_bool(j, "passed") != r.passed()) throw InvalidInput("member 'passed' disagrees with failure_count");
    if (r.failures.size() > r.failure_count || r.secondary_failures.size() > r.secondary_failure_count)
        throw InvalidInput("more stored failures than counted");
    return r;
}

// ---- classification and canonical forms --------------------------------------

namespace {

// Null when the embedding is the identity or the source is a prime field.
Json generator_image_json(const FieldEmbedding& e) {
    if (e.is_identity() || e.source().kind() != FieldKind::extension) return nullptr;
    return scalar_to_json(e.target(), e.generator_image());
}

FieldEmbedding embedding_from_json(const Field& base, const Field& target, const Json& g) {
    if (!g.is_null()) return FieldEmbedding(base, target, scalar_from_json(target, g));
    if (base == target) return FieldEmbedding(base);
    if (base.kind() == FieldKind::extension) throw InvalidInput("generator_image is required for an extension base field");
    return FieldEmbedding(base, target, target.zero());
}

}  // namespace

Json classification_to_json(const ClassificationDoc& c) {
    const auto& r = c.result;
    Json j{{"case", to_string(r.kind)}, {"path", to_string(r.path)}, {"dimension", c.dimension}, {"field", field_to_json(c.base)}};
    if (r.embedding.is_identity())
        j["extension"] = nullptr;
    else
        j["extension"] = Json{{"field", field_to_json(r.field)},
                              {"generator_image", generator_image_json(r.embedding)}};
    if (r.witness) j["witness"] = rows_of(*r.witness);
    if (r.basis) j["basis"] = basis_to_json(*r.basis);
    return j;
}

ClassificationDoc classification_from_json(const Json& j) {
    ClassificationDoc c;
    c.base = field_from_json(member(j, "field"));
    c.dimension = get_uint(j, "dimension");
    auto& r = c.result;
    r.kind = case_from_string(get_string(j, "case"));
    r.path = path_from_string(get_string(j, "path"));
    if (auto* e = optional_member(j, "extension")) {
        r.field = field_from_json(member(*e, "field"));
        r.embedding = embedding_from_json(c.base, r.field, member(*e, "generator_image"));
    } else {
        r.field = c.base;
        r.embedding = FieldEmbedding(c.base);
    }
    if (auto* w = optional_member(j, "witness")) r.witness = matrix_from_json(Json{{"rows", *w}}, r.field);
    if (auto* b = optional_member(j, "basis")) r.basis = basis_from_json(*b);
    return c;
}

Json rcf_to_json(const PrimaryRationalForm& rf) {
    const Field& f = rf.transform.field();
    Json blocks = Json::array();
    for (auto& b : rf.blocks)
        blocks.push_back(Json{{"factor", unipoly_to_json(b.factor, false)},
                              {"exponent", b.exponent},
                              {"poly", unipoly_to_json(b.block.poly, false)},
                              {"size", b.block.matrix.rows()}});
    return Json{{"field", field_to_json(f)}, {"blocks", std::move(blocks)}, {"transform", rows_of(rf.transform)}};
}

PrimaryRationalForm rcf_from_json(const Json& j) {
    const Field f = field_from_json(member(j, "field"));
    PrimaryRationalForm rf;
    for (auto& b : get_array(j, "blocks")) {
        PrimaryBlock pb;
        pb.factor = unipoly_from_json(member(b, "factor"), f);
        pb.exponent = static_cast<unsigned>(get_uint(b, "exponent"));
        const UniPoly poly = unipoly_from_json(member(b, "poly"), f);
        UniPoly power = UniPoly::constant(f, f.one());
        for (unsigned e = 0; e < pb.exponent; ++e) power = power * pb.factor;
        if (!(power == poly)) throw InvalidInput("block poly is not factor^exponent");
        pb.block = companion(poly);
        if (pb.block.matrix.rows() != get_uint(b, "size")) throw InvalidInput("block size disagrees with its poly");
        rf.blocks.push_back(std::move(pb));
    }
    rf.transform = matrix_from_json(Json{{"rows", member(j, "transform")}}, f);
    return rf;
}

Json jordan_to_json(const JordanDoc& d) {
    const Field& f = d.data.field;
    Json j{{"base_field", field_to_json(d.base)}, {"field", field_to_json(f)}};
    j["generator_image"] = generator_image_json(d.data.embedding);
    Json blocks = Json::array();
    for (auto& g : d.data.groups)
        for (auto s : g.cells)
            blocks.push_back(Json{{"eigenvalue", scalar_to_json(f, g.eigenvalue)},
                                  {"size", s},
                                  {"poly", unipoly_to_json(UniPoly(f, {f.neg(g.eigenvalue), f.one()}), false)}});
    j["blocks"] = std::move(blocks);
    j["transform"] = rows_of(d.data.S);
    return j;
}

JordanDoc jordan_from_json(const Json& j) {
    JordanDoc d;
    d.base = field_from_json(member(j, "base_field"));
    const Field f = field_from_json(member(j, "field"));
    d.data.field = f;
    const Json* g = optional_member(j, "generator_image");
    d.data.embedding = embedding_from_json(d.base, f, g ? *g : Json(nullptr));
    for (auto& b : get_array(j, "blocks")) {
        const Scalar ev = scalar_from_json(f, member(b, "eigenvalue"));
        const std::size_t size = get_uint(b, "size");
        if (size == 0) throw InvalidInput("Jordan cells must be non-empty");
        if (d.data.groups.empty() || !f.equal(d.data.groups.back().eigenvalue, ev)) d.data.groups.push_back(EigenGroup{ev, {}});
        d.data.groups.back().cells.push_back(size);
    }
    d.data.S = matrix_from_json(Json{{"rows", member(j, "transform")}}, f);
    return d;
}

Json example_to_json(const ExampleReport& r) {
    Json j{{"id", r.id}, {"expected", r.expected}, {"computed", r.computed}, {"matches", r.matches}};
    j["verdict"] = r.verdict ? verdict_to_json(*r.verdict) : Json(nullptr);
    j["facts"] = named_pairs(r.facts);
    return j;
}

ExampleReport example_from_json(const Json& j) {
    ExampleReport r;
    r.id = get_string(j, "id");
    r.expected = get_string(j, "expected");
    r.computed = get_string(j, "computed");
    r.matches = get_bool(j, "matches");
    if (auto* v = optional_member(j, "verdict")) r.verdict = verdict_from_json(*v);
    r.facts = named_pairs_from(get_array(j, "facts"));
    return r;
}

// ---- documents ---------------------------------------------------------------

Json document(const std::string& kind, const Json& body) {
    Json d{{"v", kSchemaVersion}, {"kind", kind}};
    for (auto it = body.begin(); it != body.end(); ++it) d[it.key()] = it.value();
    return d;
}

const Json& expect_document(const Json& j, const std::string& kind) {
    if (!j.is_object()) throw InvalidInput("expected a JSON object");
    if (auto* v = optional_member(j, "v"); v && (!v->is_number_integer() || v->get<int>() != kSchemaVersion))
        throw InvalidInput("unsupported schema version " + v->dump());
    if (!kind.empty())
        if (auto* k = optional_member(j, "kind"); k && (!k->is_string() || k->get<std::string>() != kind))
            throw InvalidInput("expected a '" + kind + "' document, got " + k->dump());
    return j;
}

}  // namespace preserverlab::json
