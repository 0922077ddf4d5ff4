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

#include "preserverlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "preserverlab/errors.hpp"
#include "preserverlab/jsonio.hpp"

namespace preserverlab::cli {

namespace {

using json::Json;

struct Context {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string input;  // combined document: file path, "-" or empty for stdin
    std::optional<Json> combined;
    std::optional<Json> stdin_doc;

    Context(std::istream& i, std::ostream& o, std::ostream& e) : in(i), out(o), err(e) {}
};

Json parse_text(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("cannot parse JSON from " + origin + ": " + e.what());
    }
}

Json load(Context& ctx, const std::string& path) {
    if (path.empty() || path == "-") {
        if (!ctx.stdin_doc) {
            std::stringstream ss;
            ss << ctx.in.rdbuf();
            ctx.stdin_doc = parse_text(ss.str(), "stdin");
        }
        return *ctx.stdin_doc;
    }
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_text(ss.str(), path);
}

/// The JSON for `key`: its own file when given, else that member of the combined input.
Json input_member(Context& ctx, const std::string& key, const std::string& path) {
    if (!path.empty()) return json::expect_document(load(ctx, path));
    if (!ctx.combined) ctx.combined = json::expect_document(load(ctx, ctx.input));
    auto it = ctx.combined->find(key);
    if (it == ctx.combined->end()) throw InvalidInput("input has no member '" + key + "' (pass --" + key + " FILE)");
    return *it;
}

std::optional<Json> optional_input_member(Context& ctx, const std::string& key) {
    if (!ctx.combined) ctx.combined = json::expect_document(load(ctx, ctx.input));
    auto it = ctx.combined->find(key);
    if (it == ctx.combined->end() || it->is_null()) return std::nullopt;
    return *it;
}

void emit(Context& ctx, const std::string& kind, const Json& body) { ctx.out << json::document(kind, body).dump(2) << "\n"; }

Json tuple_rows(const Tuple& t) {
    Json a = Json::array();
    for (auto& m : t) a.push_back(json::matrix_to_json(m, false)["rows"]);
    return a;
}

MultilinearPoly default_anticommutator(const Field& f) {
    MultilinearPoly p(f, 2);
    p.add_term({1, 2}, f.one());
    p.add_term({2, 1}, f.one());
    return p;
}

// ---- subcommands -------------------------------------------------------------

int cmd_eval(Context& ctx, const std::string& poly_path, const std::string& tuple_path) {
    const MultilinearPoly p = json::poly_from_json(input_member(ctx, "poly", poly_path));
    const Tuple t = json::tuple_from_json(input_member(ctx, "tuple", tuple_path), p.field());
    if (t.size() != p.arity()) throw InvalidInput("tuple length differs from the arity of the polynomial");
    const ExactMatrix v = evaluate(p, t);
    emit(ctx, "evaluation", Json{{"field", json::field_to_json(p.field())}, {"value", json::matrix_to_json(v, false)["rows"]}, {"zero", v.is_zero()}});
    return kExitOk;
}

int cmd_zeros(Context& ctx, const std::string& poly_path, std::size_t n, std::uint64_t limit, bool identity,
              std::uint64_t samples) {
    const MultilinearPoly p = json::poly_from_json(input_member(ctx, "poly", poly_path));
    if (n == 0) throw InvalidInput("--n must be positive");
    if (identity) {
        SearchPlan plan;
        plan.mode = samples ? SearchMode::sample : SearchMode::exhaustive;
        plan.samples = samples;
        plan.seed = ctx.seed;
        plan.jobs = ctx.jobs;
        const IdentityVerdict v = is_identity_on(p, n, plan);
        Json body{{"field", json::field_to_json(p.field())}, {"n", n}, {"k", p.arity()}, {"outcome", to_string(v.outcome)},
                  {"checked", v.checked}, {"seed", ctx.seed}};
        body["witness"] = v.witness ? tuple_rows(*v.witness) : Json(nullptr);
        emit(ctx, "identity_test", body);
        return kExitOk;
    }
    Json tuples = Json::array();
    const std::uint64_t count = enumerate_zero_set(p, n, [&](const std::vector<ExactMatrix>& t) {
        if (tuples.size() < limit) tuples.push_back(tuple_rows(t));
        return true;
    });
    emit(ctx, "zero_set",
         Json{{"field", json::field_to_json(p.field())}, {"n", n}, {"k", p.arity()}, {"count", count}, {"listed", tuples.size()}, {"tuples", tuples}});
    return kExitOk;
}

Json normalized_json(const NormalizedPoly& np) {
    const Field& f = np.field();
    auto list = [&](const std::vector<Scalar>& v) {
        Json a = Json::array();
        for (auto& s : v) a.push_back(json::scalar_to_json(f, s));
        return a;
    };
    return Json{{"base", json::poly_to_json(np.base)}, {"i0", np.i0},          {"j0", np.j0},
                {"beta", list(np.beta)},              {"tilde_beta", list(np.tilde_beta)}, {"hat_beta", list(np.hat_beta)},
                {"xi_j0k", json::scalar_to_json(f, np.xi_j0k)}};
}

std::pair<ExactMatrix, NormalizedPoly> matrix_and_poly(Context& ctx, const std::string& mpath, const std::string& ppath) {
    const MultilinearPoly p = json::poly_from_json(input_member(ctx, "poly", ppath));
    const ExactMatrix A = json::matrix_from_json(input_member(ctx, "matrix", mpath), p.field());
    if (!A.is_square()) throw InvalidInput("matrix must be square");
    if (!(A.field() == p.field())) throw InvalidInput("matrix and polynomial live over different fields");
    return {A, normalize(p)};
}

int cmd_omega(Context& ctx, const std::string& mpath, const std::string& ppath) {
    const auto [A, np] = matrix_and_poly(ctx, mpath, ppath);
    emit(ctx, "omega",
         Json{{"field", json::field_to_json(A.field())},
              {"normalized", normalized_json(np)},
              {"right", json::basis_to_json(omega_right(A, np).basis)},
              {"left", json::basis_to_json(omega_left(A, np).basis)},
              {"intersection", json::basis_to_json(omega_intersection(A, np))}});
    return kExitOk;
}

json::ClassificationDoc classification_doc(const ExactMatrix& A, const NormalizedPoly& np, const OmegaClassification& c) {
    json::ClassificationDoc d;
    d.base = A.field();
    d.result = c;
    d.dimension = c.basis ? c.basis->dim() : omega_intersection(map_entries(c.embedding, A), np.map(c.embedding)).dim();
    return d;
}

int cmd_classify(Context& ctx, const std::string& mpath, const std::string& ppath, bool lift, const std::string& path) {
    const auto [A, np] = matrix_and_poly(ctx, mpath, ppath);
    if (path == "structural" || path == "direct") {
        const OmegaClassification c = path == "structural" ? classify_structural(A, np, lift) : classify_direct(A, np, lift, ctx.seed);
        emit(ctx, "classification", json::classification_to_json(classification_doc(A, np, c)));
        return kExitOk;
    }
    const CrossValidation cv = cross_validate(A, np, lift, ctx.seed);
    Json body{{"agree", cv.agree},
              {"structural", json::classification_to_json(classification_doc(A, np, cv.structural))},
              {"direct", json::classification_to_json(classification_doc(A, np, cv.direct))},
              {"diagnostic", cv.diagnostic}};
    emit(ctx, "cross_validation", body);
    return cv.agree ? kExitOk : kExitViolated;
}

int cmd_spectrum(Context& ctx) {
    const Json L = input_member(ctx, "L", "");
    const ExactMatrix Lm = json::matrix_from_json(L);
    const ExactMatrix Mm = json::matrix_from_json(input_member(ctx, "M", ""), Lm.field());
    std::vector<Scalar> c;
    const Json coeffs = input_member(ctx, "coeffs", "");
    if (!coeffs.is_array() || coeffs.empty()) throw InvalidInput("member 'coeffs' must be a non-empty array");
    for (auto& x : coeffs) c.push_back(json::scalar_from_json(Lm.field(), x));
    const ElementaryOperator op(c, Lm, Mm);
    const ExactMatrix K = op.kron_matrix();
    Json body{{"field", json::field_to_json(Lm.field())},
              {"operator", json::matrix_to_json(K, false)["rows"]},
              {"char_poly", json::unipoly_to_json(char_poly(K), false)}};
    try {
        body["singleton"] = json::scalar_to_json(Lm.field(), spectrum_single_eigenvalue(op));
    } catch (const InvalidInput&) {
        body["singleton"] = nullptr;
    }
    emit(ctx, "spectrum", body);
    return kExitOk;
}

int cmd_companion(Context& ctx, const std::string& ppath) {
    const UniPoly f = json::unipoly_from_json(input_member(ctx, "poly", ppath));
    const CompanionBlock b = companion(f);
    emit(ctx, "companion", Json{{"field", json::field_to_json(f.field())}, {"poly", json::unipoly_to_json(f, false)}, {"matrix", json::matrix_to_json(b.matrix, false)["rows"]}});
    return kExitOk;
}

ExactMatrix square_input(Context& ctx, const std::string& mpath) {
    ExactMatrix A = json::matrix_from_json(input_member(ctx, "matrix", mpath));
    if (!A.is_square()) throw InvalidInput("matrix must be square");
    return A;
}

int cmd_rcf(Context& ctx, const std::string& mpath) {
    emit(ctx, "rcf", json::rcf_to_json(primary_rational_form(square_input(ctx, mpath))));
    return kExitOk;
}

int cmd_jordan(Context& ctx, const std::string& mpath) {
    const ExactMatrix A = square_input(ctx, mpath);
    emit(ctx, "jordan", json::jordan_to_json({A.field(), jordan_over_splitting_field(A)}));
    return kExitOk;
}

int cmd_anticommutant(Context& ctx, const std::string& mpath) {
    emit(ctx, "subspace", json::basis_to_json(anticommutant(square_input(ctx, mpath))));
    return kExitOk;
}

int cmd_verify(Context& ctx, const std::string& spec_path, const std::string& check, bool seed_set, bool jobs_set) {
    const PreserverSpec spec = json::spec_from_json(input_member(ctx, "spec", spec_path));
    StrategyPlan plan;
    if (auto s = optional_input_member(ctx, "strategy")) {
        const Json& sj = *s;
        if (sj.is_string()) {
            plan.kind = sj.get<std::string>() == "exhaustive" ? Strategy::exhaustive
                        : sj.get<std::string>() == "sample"   ? Strategy::sample
                        : sj.get<std::string>() == "witnesses" ? Strategy::witnesses
                                                               : throw InvalidInput("unknown strategy " + sj.dump());
        } else {
            const std::string kind = sj.value("kind", "witnesses");
            if (kind == "exhaustive")
                plan.kind = Strategy::exhaustive;
            else if (kind == "sample")
                plan.kind = Strategy::sample;
            else if (kind != "witnesses")
                throw InvalidInput("unknown strategy '" + kind + "'");
            plan.samples = sj.value("samples", plan.samples);
            plan.seed = sj.value("seed", plan.seed);
            plan.jobs = sj.value("jobs", plan.jobs);
            if (sj.contains("candidates"))
                for (auto& t : sj["candidates"]) plan.candidates.push_back(json::tuple_from_json(t, spec.field));
        }
    }
    if (seed_set) plan.seed = ctx.seed;
    if (jobs_set) plan.jobs = ctx.jobs;

    if (check == "zero-kernel") {
        const Verdict v = check_zero_kernel(spec, plan);
        emit(ctx, "verdict", json::verdict_to_json(v));
        return v.holds ? kExitOk : kExitViolated;
    }
    const MultilinearPoly p1 = json::poly_from_json(input_member(ctx, "p1", ""), spec.field);
    if (check == "idempotent-structure") {
        const IdempotentStructureReport r = check_rank_one_idempotent_structure(spec, p1, plan.jobs);
        Json ex = Json::array();
        for (auto& [P, image] : r.exceptions)
            ex.push_back(Json{{"P", json::matrix_to_json(P, false)["rows"]}, {"image", json::matrix_to_json(image, false)["rows"]}});
        emit(ctx, "idempotent_structure",
             Json{{"holds", r.holds()}, {"field", json::field_to_json(spec.field)}, {"precondition", json::verdict_to_json(r.precondition)}, {"checked", r.checked}, {"exceptions", ex}});
        return r.holds() ? kExitOk : kExitViolated;
    }
    if (check != "zeros") throw InvalidInput("unknown check '" + check + "'");
    const auto p2j = optional_input_member(ctx, "p2");
    const MultilinearPoly p2 = p2j ? json::poly_from_json(*p2j, spec.field) : p1;
    bool strong = false;
    if (auto s = optional_input_member(ctx, "strong")) {
        if (!s->is_boolean()) throw InvalidInput("member 'strong' must be a boolean");
        strong = s->get<bool>();
    }
    const Verdict v = check_maps_zeros(p1, p2, spec, strong, plan);
    emit(ctx, "verdict", json::verdict_to_json(v));
    return v.holds ? kExitOk : kExitViolated;
}

int cmd_examples(Context& ctx, const std::string& id) {
    if (!id.empty()) {
        const ExampleReport r = reproduce_example(id, ctx.jobs, ctx.seed);
        emit(ctx, "example", json::example_to_json(r));
        return r.matches ? kExitOk : kExitViolated;
    }
    Json reports = Json::array();
    bool all = true;
    for (auto& e : example_ids()) {
        const ExampleReport r = reproduce_example(e, ctx.jobs, ctx.seed);
        all = all && r.matches;
        reports.push_back(json::example_to_json(r));
    }
    emit(ctx, "examples", Json{{"all_match", all}, {"reports", reports}});
    return all ? kExitOk : kExitViolated;
}

struct OracleArgs {
    std::string lemma, field = "GF(5)", poly;
    std::size_t n = 3;
    std::uint64_t trials = 100, cases = 200, lists_per_pair = 0;
    unsigned phi_power = 0, max_block = 3, max_degree = 3;
};

int cmd_oracle(Context& ctx, const OracleArgs& a) {
    const Field f = json::parse_field_arg(a.field);
    auto poly = [&] {
        return a.poly.empty() ? default_anticommutator(f) : json::poly_from_json(json::expect_document(load(ctx, a.poly)), f);
    };
    auto phi = [&] { return a.phi_power ? FieldHom::frobenius(f, a.phi_power) : FieldHom::identity(f); };
    LemmaReport r;
    if (a.lemma == "orthogonality") {
        r = verify_orthogonality_lemma(f, a.n, a.trials, ctx.seed);
    } else if (a.lemma == "zero_detection") {
        const MultilinearPoly p = poly();
        if (!(p.field() == f)) throw InvalidInput("polynomial field differs from --field");
        r = verify_zero_detection(p, a.n, ctx.jobs);
    } else if (a.lemma == "nilpotent_proportionality") {
        const MultilinearPoly p = poly();
        if (!(p.field() == f)) throw InvalidInput("polynomial field differs from --field");
        r = verify_nilpotent_proportionality(p, a.n, phi(), a.trials, ctx.seed, ctx.jobs);
    } else if (a.lemma == "B_structure") {
        r = verify_B_structure_lemma(f, a.n, phi(), a.trials, ctx.seed, ctx.jobs);
    } else if (a.lemma == "spectrum_formula") {
        SpectrumSweep sw;
        sw.max_block = a.max_block;
        sw.cases = a.cases;
        sw.lists_per_pair = a.lists_per_pair;
        sw.max_degree = a.max_degree;
        sw.seed = ctx.seed;
        sw.jobs = ctx.jobs;
        r = check_spectrum_formula(f, sw);
    } else if (a.lemma == "local_linear_dependence") {
        const Tuple t = json::tuple_from_json(input_member(ctx, "matrices", ""));
        if (t.size() != 3) throw InvalidInput("local_linear_dependence needs exactly three matrices");
        const LldResult l = local_linear_dependence(t[0], t[1], t[2]);
        Json body{{"field", json::field_to_json(t[0].field())}, {"dependent_everywhere", l.dependent_everywhere}, {"conclusion", to_string(l.conclusion)}};
        body["independent_at"] = l.independent_at ? json::matrix_to_json(*l.independent_at, false)["rows"] : Json(nullptr);
        body["projection"] = l.projection ? json::matrix_to_json(*l.projection, false)["rows"] : Json(nullptr);
        emit(ctx, "local_linear_dependence", body);
        return kExitOk;
    } else {
        throw InvalidInput("unknown lemma '" + a.lemma + "'");
    }
    emit(ctx, "lemma_report", json::report_to_json(r));
    return r.passed() ? kExitOk : kExitViolated;
}

int cmd_enumerate(Context& ctx, const std::string& what, const std::string& field, std::size_t n, unsigned k) {
    const Field f = json::parse_field_arg(field);
    Json items = Json::array();
    if (what == "homs") {
        for (auto& h : enumerate_homs(f)) items.push_back(json::hom_to_json(h));
    } else if (what == "permutations") {
        if (k < 1 || k > kMaxArity) throw InvalidInput("--k must be between 1 and " + std::to_string(kMaxArity));
        for (auto& s : all_permutations(k)) items.push_back(Json{{"perm", s}, {"sign", sign(s)}});
    } else if (what == "rank-one-idempotents") {
        if (!f.is_finite()) throw InvalidInput("enumeration needs a finite field");
        require_budget(rank_one_idempotent_count(n, f), std::uint64_t{1} << 20, "rank-one idempotents");
        for (auto& P : enumerate_rank_one_idempotents(n, f)) items.push_back(json::matrix_to_json(P, false)["rows"]);
    } else if (what == "matrices") {
        if (!f.is_finite()) throw InvalidInput("enumeration needs a finite field");
        const std::uint64_t count = matrix_count(f, n, n);
        require_budget(count, std::uint64_t{1} << 20, "matrices");
        for (std::uint64_t i = 0; i < count; ++i) items.push_back(json::matrix_to_json(matrix_at(f, n, n, i), false)["rows"]);
    } else {
        throw InvalidInput("unknown enumeration '" + what + "'");
    }
    emit(ctx, "enumeration", Json{{"what", what}, {"field", json::field_to_json(f)}, {"count", items.size()}, {"items", items}});
    return kExitOk;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json::document("error", Json{{"error", kind}, {"message", message}}).dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Context ctx{in, out, err};
    CLI::App app{"Exact computations with multilinear matrix polynomials and their zero sets.", "preserverlab"};
    app.require_subcommand(1);
    app.fallthrough();
    auto* seed_opt = app.add_option("--seed", ctx.seed, "Seed for every sampled computation");
    auto* jobs_opt = app.add_option("--jobs", ctx.jobs, "Worker threads; output does not depend on it")->check(CLI::Range(1u, 256u));
    app.add_option("--input", ctx.input, "Combined JSON input (default: stdin)");

    std::function<int()> action;
    std::string matrix_path, poly_path, tuple_path, spec_path;

    auto* eval = app.add_subcommand("eval", "Evaluate a polynomial on a tuple of matrices");
    eval->add_option("--poly", poly_path, "Polynomial JSON");
    eval->add_option("--tuple", tuple_path, "Tuple JSON");
    eval->callback([&] { action = [&] { return cmd_eval(ctx, poly_path, tuple_path); }; });

    std::size_t zn = 2;
    std::uint64_t zlimit = 16, zsamples = 0;
    bool zidentity = false;
    auto* zeros = app.add_subcommand("zeros", "Enumerate the zero set of p on M_n, or test whether p is an identity");
    zeros->add_option("--poly", poly_path, "Polynomial JSON");
    zeros->add_option("--n", zn, "Matrix size")->required();
    zeros->add_option("--limit", zlimit, "Tuples to list");
    zeros->add_flag("--identity", zidentity, "Search for a non-zero evaluation instead");
    zeros->add_option("--samples", zsamples, "Sampled identity test with this many tuples (0: exhaustive)");
    zeros->callback([&] { action = [&] { return cmd_zeros(ctx, poly_path, zn, zlimit, zidentity, zsamples); }; });

    auto* omega = app.add_subcommand("omega", "Annihilator spaces of a matrix for a polynomial");
    omega->add_option("--matrix", matrix_path, "Matrix JSON");
    omega->add_option("--poly", poly_path, "Polynomial JSON");
    omega->callback([&] { action = [&] { return cmd_omega(ctx, matrix_path, poly_path); }; });

    bool lift = false;
    std::string path = "structural";
    auto* classify = app.add_subcommand("classify", "Classify the annihilator intersection");
    classify->add_option("--matrix", matrix_path, "Matrix JSON");
    classify->add_option("--poly", poly_path, "Polynomial JSON");
    classify->add_flag("--lift", lift, "Work over the splitting field of the characteristic polynomial");
    classify->add_option("--path", path, "structural, direct or both")->check(CLI::IsMember({"structural", "direct", "both"}));
    classify->callback([&] { action = [&] { return cmd_classify(ctx, matrix_path, poly_path, lift, path); }; });

    auto* spectrum = app.add_subcommand("spectrum", "Spectrum of an elementary operator {coeffs, L, M}");
    spectrum->callback([&] { action = [&] { return cmd_spectrum(ctx); }; });

    auto* comp = app.add_subcommand("companion", "Companion matrix of a monic polynomial");
    comp->add_option("--poly", poly_path, "Univariate polynomial JSON");
    comp->callback([&] { action = [&] { return cmd_companion(ctx, poly_path); }; });

    auto* rcf = app.add_subcommand("rcf", "Primary rational canonical form");
    rcf->add_option("--matrix", matrix_path, "Matrix JSON");
    rcf->callback([&] { action = [&] { return cmd_rcf(ctx, matrix_path); }; });

    auto* jordan = app.add_subcommand("jordan", "Jordan form over the splitting field");
    jordan->add_option("--matrix", matrix_path, "Matrix JSON");
    jordan->callback([&] { action = [&] { return cmd_jordan(ctx, matrix_path); }; });

    auto* anti = app.add_subcommand("anticommutant", "Basis of {X : XA + AX = 0}");
    anti->add_option("--matrix", matrix_path, "Matrix JSON");
    anti->callback([&] { action = [&] { return cmd_anticommutant(ctx, matrix_path); }; });

    std::string check = "zeros";
    auto* verify = app.add_subcommand("verify-preserver", "Check a transformation against {spec, p1, p2, strong, strategy}");
    verify->add_option("--spec", spec_path, "Preserver spec JSON");
    verify->add_option("--check", check, "zeros, zero-kernel or idempotent-structure")
        ->check(CLI::IsMember({"zeros", "zero-kernel", "idempotent-structure"}));
    verify->callback([&] { action = [&] { return cmd_verify(ctx, spec_path, check, seed_opt->count() > 0, jobs_opt->count() > 0); }; });

    std::string example_id;
    auto* examples = app.add_subcommand("examples", "Reproduce the built-in worked examples");
    bool all_examples = false;
    examples->add_option("--id", example_id, "One example id");
    examples->add_flag("--all", all_examples, "Every example (the default)");
    examples->get_option("--all")->excludes("--id");
    examples->callback([&] { action = [&] { return cmd_examples(ctx, example_id); }; });

    OracleArgs oa;
    auto* oracle = app.add_subcommand("oracle", "Run a brute-force lemma oracle");
    oracle->add_option("--lemma", oa.lemma, "orthogonality, zero_detection, nilpotent_proportionality, B_structure, "
                                            "spectrum_formula or local_linear_dependence")
        ->required();
    oracle->add_option("--field", oa.field, "GF(p), GF(p^k), Q, Q(i) or a JSON descriptor");
    oracle->add_option("--n", oa.n, "Matrix size");
    oracle->add_option("--trials", oa.trials, "Sampled instances");
    oracle->add_option("--poly", oa.poly, "Polynomial JSON (default xy + yx)");
    oracle->add_option("--phi-power", oa.phi_power, "Frobenius power of the automorphism (0: identity)");
    oracle->add_option("--max-block", oa.max_block, "Largest Jordan block for spectrum_formula");
    oracle->add_option("--cases", oa.cases, "Random cases for spectrum_formula");
    oracle->add_option("--lists-per-pair", oa.lists_per_pair, "Sweep every block pair with this many coefficient lists");
    oracle->add_option("--max-degree", oa.max_degree, "Largest operator degree for spectrum_formula");
    oracle->callback([&] { action = [&] { return cmd_oracle(ctx, oa); }; });

    std::string what, efield = "GF(2)";
    std::size_t en = 2;
    unsigned ek = 2;
    auto* enumerate = app.add_subcommand("enumerate", "List rank-one idempotents, matrices, automorphisms or permutations");
    enumerate->add_option("--what", what, "rank-one-idempotents, matrices, homs or permutations")->required();
    enumerate->add_option("--field", efield, "Field");
    enumerate->add_option("--n", en, "Matrix size");
    enumerate->add_option("--k", ek, "Permutation degree");
    enumerate->callback([&] { action = [&] { return cmd_enumerate(ctx, what, efield, en, ek); }; });

    std::vector<const char*> argv{"preserverlab"};
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        emit_error(err, "invalid_input", e.what());
        return kExitInvalid;
    }

    try {
        return action();
    } catch (const BudgetExceeded& e) {
        emit_error(err, "budget_exceeded", e.what());
        return kExitBudget;
    } catch (const InvalidInput& e) {
        emit_error(err, "invalid_input", e.what());
        return kExitInvalid;
    } catch (const Unsupported& e) {
        emit_error(err, "unsupported", e.what());
        return kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
        emit_error(err, "invalid_input", e.what());
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        emit_error(err, "invalid_input", e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        emit_error(err, "internal", e.what());
        return kExitInternal;
    }
}

}  // namespace preserverlab::cli
