// Acceptance run: one line per criterion, non-zero exit when any criterion fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "preserverlab/canonform.hpp"
#include "preserverlab/cli.hpp"
#include "preserverlab/elemop.hpp"
#include "preserverlab/errors.hpp"
#include "preserverlab/matrix.hpp"
#include "preserverlab/multipoly.hpp"
#include "preserverlab/omegaclass.hpp"
#include "preserverlab/oracle.hpp"
#include "preserverlab/parallel.hpp"
#include "preserverlab/preserver.hpp"
#include "preserverlab/rng.hpp"

using namespace preserverlab;

namespace {

unsigned g_jobs = 4;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failed sub-checks; the first few are kept for the report line.
class Tally {
   public:
    void check(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        ++failed_;
        if (failed_ <= 3) failures_ += (failures_.empty() ? "" : "; ") + what;
    }
    Outcome outcome(const std::string& summary) const {
        if (failed_ == 0) return {true, summary + " (" + std::to_string(checks_) + " checks)"};
        return {false, std::to_string(failed_) + "/" + std::to_string(checks_) + " checks failed: " + failures_};
    }

   private:
    std::uint64_t checks_ = 0, failed_ = 0;
    std::string failures_;
};

MultilinearPoly poly(const Field& f, unsigned k, const std::vector<std::pair<Permutation, long long>>& terms) {
    MultilinearPoly p(f, k);
    for (auto& [s, c] : terms) p.add_term(s, f.from_int(c));
    return p;
}

MultilinearPoly anticommutator(const Field& f) { return poly(f, 2, {{{1, 2}, 1}, {{2, 1}, 1}}); }
MultilinearPoly commutator(const Field& f) { return poly(f, 2, {{{1, 2}, 1}, {{2, 1}, -1}}); }
MultilinearPoly product(const Field& f) { return poly(f, 2, {{{1, 2}, 1}}); }

ExactMatrix random_matrix(const Field& f, std::size_t n, Rng& rng) {
    std::vector<Scalar> e;
    for (std::size_t i = 0; i < n * n; ++i) e.push_back(f.element(rng.below(f.order())));
    return ExactMatrix(f, n, n, e);
}

ExactMatrix random_invertible(const Field& f, std::size_t n, Rng& rng) {
    for (;;) {
        ExactMatrix m = random_matrix(f, n, rng);
        if (!f.is_zero(det(m))) return m;
    }
}

UniPoly power_of_linear(const Field& f, const Scalar& v, std::size_t e) {
    const UniPoly lin(f, {f.neg(v), f.one()});
    UniPoly acc = UniPoly::constant(f, f.one());
    for (std::size_t i = 0; i < e; ++i) acc = acc * lin;
    return acc;
}

// ---- 1 -----------------------------------------------------------------------

Outcome singleton_spectrum() {
    const Field f = Field::prime(5);
    constexpr std::uint64_t kLists = 50;
    struct Case {
        std::size_t m, n;
        std::uint64_t lambda, mu;
    };
    std::vector<Case> cases;
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::uint64_t l = 0; l < 5; ++l)
                for (std::uint64_t u = 0; u < 5; ++u) cases.push_back({m, n, l, u});

    // Kronecker route: char_poly of the operator matrix against (x - v)^{mn}.
    const auto bad = parallel_map<std::uint64_t>(cases.size(), g_jobs, [&](std::uint64_t i) -> std::uint64_t {
        const Case& c = cases[i];
        Rng rng(1000 + i);
        const Scalar lambda = f.element(c.lambda), mu = f.element(c.mu);
        const ExactMatrix L = jordan_cell(f, c.m, lambda), M = jordan_cell(f, c.n, mu);
        std::uint64_t failures = 0;
        for (std::uint64_t t = 0; t < kLists; ++t) {
            const std::size_t deg = rng.below(4);
            std::vector<Scalar> coeffs;
            for (std::size_t j = 0; j <= deg; ++j) coeffs.push_back(f.element(rng.below(5)));
            Scalar v = f.zero();
            for (std::size_t j = 0; j <= deg; ++j)
                v = f.add(v, f.mul(coeffs[j], f.mul(f.pow(lambda, deg - j), f.pow(mu, j))));
            const ExactMatrix K = ElementaryOperator(coeffs, L, M).kron_matrix();
            if (!(char_poly(K) == power_of_linear(f, v, c.m * c.n))) ++failures;
        }
        return failures;
    });
    Tally tally;
    for (std::size_t i = 0; i < cases.size(); ++i)
        tally.check(bad[i] == 0, "kron route m=" + std::to_string(cases[i].m) + " n=" + std::to_string(cases[i].n) +
                                     " lambda=" + std::to_string(cases[i].lambda) + " mu=" + std::to_string(cases[i].mu));

    // Action route: the oracle builds the matrix column by column from X -> sum c_j L^{t-j} X M^j.
    SpectrumSweep sweep;
    sweep.max_block = 3;
    sweep.lists_per_pair = kLists;
    sweep.max_degree = 3;
    sweep.seed = 1;
    sweep.jobs = g_jobs;
    const LemmaReport r = check_spectrum_formula(f, sweep);
    tally.check(r.passed(), "action route: " + std::to_string(r.failure_count) + " failures");
    tally.check(r.instances == cases.size() * kLists, "action route covered " + std::to_string(r.instances) + " lists");
    return tally.outcome(std::to_string(cases.size()) + " block pairs x " + std::to_string(kLists) +
                         " lists over GF(5), kron and action routes");
}

// ---- 2 -----------------------------------------------------------------------

Outcome trichotomy_exhaustive() {
    const Field f = Field::prime(3);
    const NormalizedPoly np = normalize(anticommutator(f));
    std::vector<ExactMatrix> mats;
    for (std::uint64_t i = 0; i < matrix_count(f, 2, 2); ++i) mats.push_back(matrix_at(f, 2, 2, i));
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) mats.push_back(random_matrix(f, 3, rng));

    // 0 agree and classified, 1 paths disagree, 2 case Other
    const auto status = parallel_map<int>(mats.size(), g_jobs, [&](std::uint64_t i) {
        const CrossValidation cv = cross_validate(mats[i], np, true, i);
        if (!cv.agree) return 1;
        if (cv.structural.kind == OmegaCase::other || cv.direct.kind == OmegaCase::other) return 2;
        return 0;
    });
    Tally tally;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        tally.check(status[i] != 1, "paths disagree on " + mats[i].str());
        tally.check(status[i] != 2, "Other for " + mats[i].str());
    }
    return tally.outcome("81 of M2(F3) and 1000 seeded M3(F3), structural = direct, never Other");
}

// ---- 3 -----------------------------------------------------------------------

// True when some entry of (aB1 + bB2)^2 is a positive definite form in (a, b),
// so no nonzero member of the plane squares to zero.
bool plane_has_no_square_zero(const SubspaceBasis& V) {
    const ExactMatrix& B1 = V.basis()[0];
    const ExactMatrix& B2 = V.basis()[1];
    const ExactMatrix U = B1 * B1, W = B2 * B2, C = B1 * B2 + B2 * B1;
    for (std::size_t i = 0; i < U.rows(); ++i)
        for (std::size_t j = 0; j < U.cols(); ++j) {
            mpq_class u = std::get<mpq_class>(U.at(i, j)), w = std::get<mpq_class>(W.at(i, j)), c = std::get<mpq_class>(C.at(i, j));
            if (u < 0) u = -u, w = -w, c = -c;
            if (u > 0 && w > 0 && c * c < 4 * u * w) return true;
        }
    return false;
}

Outcome trichotomy_over_q() {
    const Field q = Field::rationals();
    const ExactMatrix A = direct_sum(ExactMatrix::from_ints(q, {{0, -3}, {1, 0}}), ExactMatrix::identity(q, 1));
    const NormalizedPoly np = normalize(anticommutator(q));
    Tally tally;
    const OmegaClassification c = classify_direct(A, np, false, 0);
    tally.check(c.kind == OmegaCase::other, "classified as " + to_string(c.kind));
    tally.check(c.basis && c.basis->dim() == 2, "direct basis dimension differs from 2");
    const SubspaceBasis V = omega_intersection(A, np);
    tally.check(V.dim() == 2, "intersection dimension " + std::to_string(V.dim()));
    tally.check(V.dim() == 2 && plane_has_no_square_zero(V), "no definite entry in X^2 over the plane");
    // each basis member is X (+) 0 with X anticommuting with the rotation block
    const SubspaceBasis anti = anticommutant(A);
    tally.check(anti == V, "anticommutant differs from the intersection");
    return tally.outcome("dimension 2, Other, X^2 definite on the plane");
}

// ---- 4 -----------------------------------------------------------------------

Outcome idempotent_line() {
    Tally tally;
    std::uint64_t total = 0;
    for (auto [p, n] : {std::pair<std::uint64_t, std::size_t>{3, 2}, {5, 3}}) {
        const Field f = Field::prime(p);
        const NormalizedPoly np = normalize(anticommutator(f));
        const std::vector<ExactMatrix> idem = enumerate_rank_one_idempotents(n, f);
        const ExactMatrix I = ExactMatrix::identity(f, n);
        const auto ok = parallel_map<int>(idem.size(), g_jobs, [&](std::uint64_t i) {
            const ExactMatrix& P = idem[i];
            const ExactMatrix A = I - P;
            const SubspaceBasis line = SubspaceBasis::span(f, n, n, {P});
            const SubspaceBasis V = omega_intersection(A, np);
            int bits = 0;
            if (V.dim() == 1 && V == line) bits |= 1;
            if (anticommutant(A) == line) bits |= 2;
            if (n == 2) {
                // brute force over all of M2(F3)
                std::vector<ExactMatrix> zeros;
                for (std::uint64_t x = 0; x < matrix_count(f, n, n); ++x) {
                    const ExactMatrix X = matrix_at(f, n, n, x);
                    if (is_zero_tuple(np.base, {X, A}) && is_zero_tuple(np.base, {A, X})) zeros.push_back(X);
                }
                bool multiples = zeros.size() == p;
                for (auto& X : zeros) {
                    bool found = false;
                    for (std::uint64_t c = 0; c < p; ++c) found = found || X == P.scale(f.element(c));
                    multiples = multiples && found;
                }
                if (multiples) bits |= 4;
            } else {
                bits |= 4;
            }
            return bits;
        });
        const std::uint64_t expected = n == 2 ? 12 : 31 * 25;
        tally.check(idem.size() == expected, "GF(" + std::to_string(p) + ") has " + std::to_string(idem.size()) + " idempotents");
        for (std::size_t i = 0; i < idem.size(); ++i) {
            tally.check(ok[i] & 1, "intersection is not span{P} for P = " + idem[i].str());
            tally.check(ok[i] & 2, "anticommutant is not span{P} for P = " + idem[i].str());
            tally.check(ok[i] & 4, "brute-force zero set is not F P for P = " + idem[i].str());
        }
        total += idem.size();
    }
    return tally.outcome(std::to_string(total) + " rank-one idempotents of M2(F3) and M3(F5)");
}

// ---- 5 -----------------------------------------------------------------------

Outcome standard_identity() {
    const Field f = Field::prime(2);
    Tally tally;
    SearchPlan plan;
    plan.jobs = g_jobs;
    const MultilinearPoly s4 = standard_polynomial(f, 4);
    const IdentityVerdict v4 = is_identity_on(s4, 2, plan);
    tally.check(v4.outcome == IdentityOutcome::identity, "s4 search: " + to_string(v4.outcome));
    tally.check(v4.checked == 65536, "s4 search visited " + std::to_string(v4.checked) + " tuples");
    // second route: the zero-set odometer
    tally.check(count_zero_set(s4, 2) == 65536, "s4 zero set is not all of M2(F2)^4");

    const MultilinearPoly s2 = standard_polynomial(f, 2);
    const IdentityVerdict v2 = is_identity_on(s2, 2, plan);
    tally.check(v2.outcome == IdentityOutcome::not_identity && v2.witness, "s2 has no witness");
    if (v2.witness) tally.check(!evaluate(s2, *v2.witness).is_zero(), "s2 witness evaluates to zero");
    tally.check(s2 == commutator(f), "s2 differs from xy - yx");
    return tally.outcome("s4 vanishes on all 65536 tuples, s2 witness found");
}

// ---- 6 -----------------------------------------------------------------------

std::string tuple_text(const std::optional<Tuple>& t) {
    if (!t) return "none";
    std::string s;
    for (auto& m : *t) s += (s.empty() ? "" : ", ") + m.str();
    return "(" + s + ")";
}

Outcome examples_reproduce() {
    Tally tally;
    const std::vector<std::string> ids = example_ids();
    tally.check(ids.size() == 6, std::to_string(ids.size()) + " examples registered");
    for (auto& id : ids) {
        const ExampleReport r = reproduce_example(id, g_jobs, 0);
        tally.check(r.matches, id + ": expected '" + r.expected + "', computed '" + r.computed + "'");
        if (r.verdict && !r.verdict->holds) {
            const Verdict& v = *r.verdict;
            tally.check(v.value && v.value->is_zero(), id + ": witness is not a zero of p1");
            tally.check(v.image_value && !v.image_value->is_zero(), id + ": image is a zero of p2");
        }
        const std::string w = r.verdict ? tuple_text(r.verdict->witness) : "none";
        if (id == "add_a12")
            tally.check(w == "([[1, 0, 0], [0, 0, 0], [0, 0, 0]], [[0, 1, 0], [0, 0, 0], [0, 0, 0]], [[0, 1, 0], [0, 0, 0], [0, 0, 0]])",
                        id + " witness " + w);
        if (id == "transpose_xy") tally.check(w == "([[1, 0], [0, 0]], [[0, 0], [1, 0]])", id + " witness " + w);
        if (id == "gaussian_conjugation") tally.check(w == "([[1, 1], [-1, 1]], [[1, i], [i, -1]])", id + " witness " + w);
        if (id == "trace_kernel")
            tally.check(r.verdict && r.verdict->holds && r.verdict->strong, id + ": strong commutativity preservation not confirmed");
    }
    return tally.outcome("add_a12, trace_kernel, jordan_theta, real_omega, gaussian_conjugation, transpose_xy");
}

// ---- 7 -----------------------------------------------------------------------

Outcome sufficient_condition() {
    Tally tally;
    std::uint64_t specs = 0;
    Rng rng(7);
    for (const Field& f : {Field::prime(2), Field::galois(2, 2)}) {
        std::vector<ExactMatrix> Ts;
        if (f.order() == 2) {
            for (std::uint64_t i = 0; i < 16; ++i)
                if (!f.is_zero(det(matrix_at(f, 2, 2, i)))) Ts.push_back(matrix_at(f, 2, 2, i));
        } else {
            Ts.push_back(ExactMatrix::identity(f, 2));
            for (int i = 0; i < 3; ++i) Ts.push_back(random_invertible(f, 2, rng));
        }
        std::vector<Scalar> gammas;
        for (std::uint64_t g = 1; g < f.order(); ++g) gammas.push_back(f.element(g));
        // The rank-one idempotent check is defined for generic p only (nonzero
        // coefficient sum), so it runs with xy; xy - yx enters through the zero maps.
        const MultilinearPoly generic = product(f);
        for (auto& T : Ts)
            for (auto& phi : enumerate_homs(f))
                for (auto& gamma : gammas) {
                    PreserverSpec s = PreserverSpec::identity(f, 2);
                    s.set_similarity(T);
                    s.phi = phi;
                    s.gamma = gamma;
                    s.validate();
                    StrategyPlan plan;
                    plan.kind = Strategy::exhaustive;
                    plan.jobs = g_jobs;
                    const std::string tag = f.name() + " T=" + T.str() + " gamma=" + f.format(gamma);
                    for (auto& p : {product(f), commutator(f)}) {
                        const Verdict v = check_maps_zeros(p, p, s, true, plan);
                        tally.check(v.holds, tag + " p=" + p.str() + " violated at " + tuple_text(v.witness));
                        const std::uint64_t pairs = f.order() * f.order() * f.order() * f.order();
                        tally.check(v.checked == pairs * pairs, tag + " checked " + std::to_string(v.checked));
                    }
                    tally.check(check_zero_kernel(s, plan).holds, tag + " zero kernel");
                    tally.check(check_rank_one_idempotent_structure(s, generic, g_jobs).holds(), tag + " idempotent structure");
                    ++specs;
                }
    }
    return tally.outcome(std::to_string(specs) + " specs on M2(F2) and M2(F4), xy and xy - yx, exhaustive and strong");
}

// ---- 8 -----------------------------------------------------------------------

bool same_form(const PrimaryRationalForm& a, const PrimaryRationalForm& b) {
    if (a.blocks.size() != b.blocks.size()) return false;
    for (std::size_t i = 0; i < a.blocks.size(); ++i)
        if (!(a.blocks[i].factor == b.blocks[i].factor) || a.blocks[i].exponent != b.blocks[i].exponent) return false;
    return a.block_matrix() == b.block_matrix();
}

Outcome rational_form() {
    Tally tally;
    const Field f7 = Field::prime(7), f3 = Field::prime(3);
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const std::size_t deg = 1 + rng.below(6);
        std::vector<Scalar> c;
        for (std::size_t j = 0; j < deg; ++j) c.push_back(f7.element(rng.below(7)));
        c.push_back(f7.one());
        const UniPoly f(f7, c);
        const CompanionBlock b = companion(f);
        tally.check(char_poly(b.matrix) == f, "companion char_poly for " + f.str());
    }
    for (int i = 0; i < 200; ++i) {
        const ExactMatrix A = random_matrix(f3, 4, rng);
        const PrimaryRationalForm rf = primary_rational_form(A);
        const ExactMatrix P = rf.transform;
        const auto Pinv = inverse(P);
        tally.check(Pinv && *Pinv * A * P == rf.block_matrix(), "P^-1 A P differs from the blocks for " + A.str());
        UniPoly prod = UniPoly::constant(f3, f3.one());
        std::size_t size = 0;
        for (auto& blk : rf.blocks) {
            UniPoly pw = UniPoly::constant(f3, f3.one());
            for (unsigned e = 0; e < blk.exponent; ++e) pw = pw * blk.factor;
            tally.check(is_irreducible(blk.factor) && pw == blk.block.poly, "block is not a power of an irreducible for " + A.str());
            prod = prod * blk.block.poly;
            size += blk.block.matrix.rows();
        }
        tally.check(size == 4 && prod == char_poly(A), "block polynomials do not multiply to char_poly for " + A.str());
    }
    for (int i = 0; i < 100; ++i) {
        const ExactMatrix A = random_matrix(f3, 4, rng);
        const ExactMatrix S = random_invertible(f3, 4, rng);
        tally.check(same_form(primary_rational_form(S * A * inverse_or_throw(S)), primary_rational_form(A)),
                    "forms of A and SAS^-1 differ for " + A.str());
    }
    return tally.outcome("200 companions over GF(7), 200 M4(F3) forms, 100 similarity invariances");
}

// ---- 9 -----------------------------------------------------------------------

Outcome oracle_suite() {
    Tally tally;
    const Field f3 = Field::prime(3), f5 = Field::prime(5);
    auto record = [&](const LemmaReport& r, bool want_exhaustive, const std::string& tag) {
        tally.check(r.passed(), tag + ": " + std::to_string(r.failure_count) + " failures" +
                                    (r.failures.empty() ? "" : " (" + r.failures.front().what + ")"));
        tally.check(!want_exhaustive || r.exhaustive, tag + " was not exhaustive");
    };
    record(verify_orthogonality_lemma(f3, 2), true, "orthogonality M2(F3)");
    for (std::size_t n : {2, 3}) {
        const LemmaReport r = verify_zero_detection(anticommutator(f3), n, g_jobs);
        record(r, true, "zero detection M" + std::to_string(n) + "(F3)");
        tally.check(r.secondary_failure_count == 0, "zero detection witness set M" + std::to_string(n) + "(F3)");
    }
    const LemmaReport np = verify_nilpotent_proportionality(anticommutator(f5), 3, FieldHom::identity(f5), 100, 9, g_jobs);
    record(np, false, "nilpotent proportionality M3(F5)");
    tally.check(np.instances == 100, "nilpotent proportionality ran " + std::to_string(np.instances) + " pairs");
    tally.check(np.premise_held > 0 && np.premise_held < np.instances, "only one side of the biconditional was exercised");
    SpectrumSweep sweep;
    sweep.cases = 200;
    sweep.seed = 9;
    sweep.jobs = g_jobs;
    const LemmaReport sp = check_spectrum_formula(f5, sweep);
    record(sp, false, "spectrum formula");
    tally.check(sp.instances == 200, "spectrum formula ran " + std::to_string(sp.instances) + " cases");
    return tally.outcome("orthogonality, zero detection (n = 2, 3), nilpotent proportionality, spectrum formula");
}

// ---- 10 ----------------------------------------------------------------------

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run_cli(std::vector<std::string> args, const std::string& input) {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

Outcome determinism() {
    struct Job {
        std::vector<std::string> args;
        std::string input;
    };
    const std::string classify_input = R"j({"poly": {"k": 2, "field": "GF(3)", "terms": [{"perm": [1, 2], "coeff": "1"}, {"perm": [2, 1], "coeff": "1"}]},
 "matrix": {"field": "GF(3)", "rows": [["1", "2", "0"], ["0", "1", "1"], ["2", "0", "0"]]}})j";
    const std::string verify_input = R"j({"spec": {"n": 3, "field": "GF(5)", "T": [["1", "1", "0"], ["0", "1", "0"], ["0", "0", "2"]], "gamma": "3"},
 "p1": {"k": 2, "field": "GF(5)", "terms": [{"perm": [1, 2], "coeff": "1"}, {"perm": [2, 1], "coeff": "4"}]},
 "strong": true, "strategy": {"kind": "sample", "samples": 3000}})j";
    const std::string s2 = R"j({"k": 2, "field": "GF(3)", "terms": [{"perm": [1, 2], "coeff": "1"}, {"perm": [2, 1], "coeff": "2"}]})j";
    const std::vector<Job> jobs{
        {{"oracle", "--lemma", "spectrum_formula", "--field", "GF(5)", "--cases", "200", "--seed", "10"}, ""},
        {{"oracle", "--lemma", "spectrum_formula", "--field", "GF(5)", "--lists-per-pair", "2", "--seed", "11"}, ""},
        {{"oracle", "--lemma", "nilpotent_proportionality", "--field", "GF(5)", "--n", "3", "--trials", "100", "--seed", "12"}, ""},
        {{"oracle", "--lemma", "orthogonality", "--field", "GF(7)", "--n", "3", "--trials", "300", "--seed", "13"}, ""},
        {{"oracle", "--lemma", "B_structure", "--field", "GF(5)", "--n", "4", "--trials", "8", "--seed", "14"}, ""},
        {{"classify", "--lift", "--path", "both", "--seed", "15"}, classify_input},
        {{"examples", "--id", "trace_kernel", "--seed", "16"}, ""},
        {{"verify-preserver", "--seed", "17"}, verify_input},
        {{"zeros", "--identity", "--samples", "500", "--poly", "-", "--n", "2", "--seed", "18"}, s2},
    };
    Tally tally;
    for (auto& job : jobs) {
        std::vector<CliRun> runs;
        for (const char* j : {"1", "1", "4", "4"}) {
            auto args = job.args;
            args.insert(args.end(), {"--jobs", j});
            runs.push_back(run_cli(args, job.input));
        }
        const std::string tag = job.args[0] + (job.args.size() > 2 ? " " + job.args[2] : "");
        tally.check(runs[0].code == 0, tag + " exited " + std::to_string(runs[0].code) + " " + runs[0].err);
        bool same = true;
        for (auto& r : runs) same = same && r.code == runs[0].code && r.out == runs[0].out && !r.out.empty();
        tally.check(same, tag + " output differs between runs");
    }
    return tally.outcome(std::to_string(jobs.size()) + " sampled commands, 2 runs each at --jobs 1 and --jobs 4, byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--jobs") g_jobs = static_cast<unsigned>(std::max(1, std::atoi(argv[i + 1])));

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"singleton spectrum law", singleton_spectrum},
        {"trichotomy over M2(F3) and M3(F3)", trichotomy_exhaustive},
        {"trichotomy failure over Q", trichotomy_over_q},
        {"idempotent line", idempotent_line},
        {"standard polynomial identity on M2(F2)", standard_identity},
        {"worked examples reproduce", examples_reproduce},
        {"sufficient-condition preservers", sufficient_condition},
        {"rational canonical form", rational_form},
        {"lemma oracle suite", oracle_suite},
        {"determinism across runs and jobs", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.precision(1);
        line << std::fixed << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << " [" << criteria[i].first
             << "] " << o.detail << " (" << secs << "s)";
        std::cout << line.str() << std::endl;
        if (!o.pass) ++failed;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
