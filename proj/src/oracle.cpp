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

#include "preserverlab/oracle.hpp"

#include <algorithm>
#include <array>

#include "preserverlab/codemat.hpp"
#include "preserverlab/errors.hpp"
#include "preserverlab/parallel.hpp"
#include "preserverlab/rng.hpp"

namespace preserverlab {

namespace {

std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Each instance draws from its own stream, so reports do not depend on jobs.
Rng instance_rng(std::uint64_t seed, std::uint64_t i) { return Rng(mix(seed ^ mix(i + 1))); }

Scalar random_scalar(const Field& f, Rng& rng) {
    if (f.is_finite()) return f.element(rng.below(f.order()));
    return f.from_int(static_cast<long long>(rng.below(7)) - 3);
}

Scalar random_nonzero(const Field& f, Rng& rng) {
    while (true) {
        Scalar s = random_scalar(f, rng);
        if (!f.is_zero(s)) return s;
    }
}

ExactMatrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, Rng& rng) {
    std::vector<Scalar> e;
    e.reserve(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) e.push_back(random_scalar(f, rng));
    return ExactMatrix(f, rows, cols, std::move(e));
}

ExactMatrix random_nonzero_vector(const Field& f, std::size_t n, Rng& rng) {
    while (true) {
        ExactMatrix v = random_matrix(f, n, 1, rng);
        if (!v.is_zero()) return v;
    }
}

ExactMatrix random_invertible(const Field& f, std::size_t n, Rng& rng) {
    while (true) {
        ExactMatrix s = random_matrix(f, n, n, rng);
        if (!f.is_zero(det(s))) return s;
    }
}

Scalar dot(const ExactMatrix& a, const ExactMatrix& b) {
    const Field& f = a.field();
    Scalar s = f.zero();
    for (std::size_t i = 0; i < a.rows(); ++i) s = f.add(s, f.mul(a.at(i, 0), b.at(i, 0)));
    return s;
}

void record(LemmaReport& r, Counterexample c) {
    if (r.failure_count++ < kMaxStoredFailures) r.failures.push_back(std::move(c));
}

void record_secondary(LemmaReport& r, Counterexample c) {
    if (r.secondary_failure_count++ < kMaxStoredFailures) r.secondary_failures.push_back(std::move(c));
}

void require_finite(const Field& f, const char* what) {
    if (!f.is_finite()) throw InvalidInput(std::string(what) + " needs a finite field");
}

std::vector<CodeMatrix> repeat_tuple(const CodeMatrix& first, const CodeMatrix& rest, unsigned k, unsigned slot) {
    std::vector<CodeMatrix> t(k, rest);
    t[slot] = first;
    return t;
}

}  // namespace

const ExactMatrix& Counterexample::matrix(const std::string& name) const {
    for (auto& [k, v] : matrices)
        if (k == name) return v;
    throw InvalidInput("counterexample has no matrix " + name);
}

const Scalar& Counterexample::scalar(const std::string& name) const {
    for (auto& [k, v] : scalars)
        if (k == name) return v;
    throw InvalidInput("counterexample has no scalar " + name);
}

// ---- zero sets -------------------------------------------------------------

std::uint64_t enumerate_zero_set(const MultilinearPoly& p, std::size_t n,
                                 const std::function<bool(const std::vector<ExactMatrix>&)>& visit) {
    const Field& f = p.field();
    require_finite(f, "zero set enumeration");
    const unsigned k = p.arity();
    const std::uint64_t per = matrix_count(f, n, n);
    const std::uint64_t total = saturating_pow(per, k);
    require_budget(total, std::uint64_t{1} << 24, "zero set tuples");

    std::vector<std::uint64_t> digits(k, 0);
    std::vector<ExactMatrix> tuple(k, matrix_at(f, n, n, 0));
    std::uint64_t found = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (is_zero_tuple(p, tuple)) {
            ++found;
            if (!visit(tuple)) break;
        }
        // Odometer with the last slot fastest.
        for (unsigned s = k; s-- > 0;) {
            if (++digits[s] < per) {
                tuple[s] = matrix_at(f, n, n, digits[s]);
                break;
            }
            digits[s] = 0;
            tuple[s] = matrix_at(f, n, n, 0);
        }
    }
    return found;
}

std::uint64_t count_zero_set(const MultilinearPoly& p, std::size_t n) {
    return enumerate_zero_set(p, n, [](const std::vector<ExactMatrix>&) { return true; });
}

// ---- orthogonality ---------------------------------------------------------

OrthogonalityCheck check_orthogonality(const ExactMatrix& P, const ExactMatrix& X, const OrthogonalityScalars& s) {
    const Field& f = P.field();
    OrthogonalityCheck r;
    r.premise = is_idempotent(P) && !f.is_zero(f.add(f.one(), f.add(s.mu, s.nu)));
    const ExactMatrix PX = P * X, XP = X * P, PXP = PX * P;
    r.equations = (PX + PXP.scale(s.mu) + XP.scale(s.nu)).is_zero() && (XP + PXP.scale(s.mu2) + PX.scale(s.nu2)).is_zero();
    r.orthogonal = PX.is_zero() && XP.is_zero();
    return r;
}

namespace {

Counterexample orthogonality_payload(const ExactMatrix& P, const ExactMatrix& X, const OrthogonalityScalars& s) {
    Counterexample c;
    c.what = "equations hold but PX, XP not both zero";
    c.matrices = {{"P", P}, {"X", X}};
    c.scalars = {{"mu", s.mu}, {"nu", s.nu}, {"mu2", s.mu2}, {"nu2", s.nu2}};
    return c;
}

}  // namespace

LemmaReport verify_orthogonality_lemma(const Field& f, std::size_t n, std::uint64_t trials, std::uint64_t seed) {
    LemmaReport r;
    r.lemma = "orthogonality";
    r.field = f;
    r.seed = seed;

    const std::uint64_t q = f.order();
    const std::uint64_t per = f.is_finite() ? saturating_pow(q, n * n) : 0;
    std::vector<ExactMatrix> idempotents;
    if (f.is_finite() && per <= (std::uint64_t{1} << 12)) {
        for (std::uint64_t i = 0; i < per; ++i) {
            ExactMatrix m = matrix_at(f, n, n, i);
            if (is_idempotent(m)) idempotents.push_back(std::move(m));
        }
        const std::uint64_t total = idempotents.size() * per * saturating_pow(q, 4);
        r.exhaustive = total <= (std::uint64_t{1} << 26);
    }

    if (r.exhaustive) {
        std::vector<Scalar> el;
        for (std::uint64_t i = 0; i < q; ++i) el.push_back(f.element(i));
        for (const auto& P : idempotents)
            for (std::uint64_t xi = 0; xi < per; ++xi) {
                const ExactMatrix X = matrix_at(f, n, n, xi);
                const ExactMatrix PX = P * X, XP = X * P, PXP = PX * P;
                const bool orth = PX.is_zero() && XP.is_zero();
                for (auto& mu : el)
                    for (auto& nu : el) {
                        if (f.is_zero(f.add(f.one(), f.add(mu, nu)))) continue;
                        const bool first = (PX + PXP.scale(mu) + XP.scale(nu)).is_zero();
                        for (auto& mu2 : el)
                            for (auto& nu2 : el) {
                                ++r.instances;
                                if (!first || !(XP + PXP.scale(mu2) + PX.scale(nu2)).is_zero()) continue;
                                ++r.premise_held;
                                if (!orth) record(r, orthogonality_payload(P, X, {mu, nu, mu2, nu2}));
                            }
                    }
            }
        r.notes.push_back(std::to_string(idempotents.size()) + " idempotents x " + std::to_string(per) +
                          " matrices x all scalar quadruples with 1 + mu + nu != 0");
        return r;
    }

    // Sampled: X is drawn from the solution space of the two equations.
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng = instance_rng(seed, t);
        const std::size_t rk = rng.below(n + 1);
        std::vector<Scalar> d;
        for (std::size_t i = 0; i < n; ++i) d.push_back(i < rk ? f.one() : f.zero());
        const ExactMatrix S = random_invertible(f, n, rng);
        const ExactMatrix P = S * ExactMatrix::diag(f, d) * inverse_or_throw(S);
        OrthogonalityScalars s;
        do {
            s = {random_scalar(f, rng), random_scalar(f, rng), random_scalar(f, rng), random_scalar(f, rng)};
        } while (f.is_zero(f.add(f.one(), f.add(s.mu, s.nu))));

        ExactMatrix sys(f, 2 * n * n, n * n);
        for (std::size_t col = 0; col < n * n; ++col) {
            const ExactMatrix E = ExactMatrix::unit(f, n, col % n, col / n);
            const ExactMatrix PX = P * E, XP = E * P, PXP = PX * P;
            const ExactMatrix v1 = vec(PX + PXP.scale(s.mu) + XP.scale(s.nu));
            const ExactMatrix v2 = vec(XP + PXP.scale(s.mu2) + PX.scale(s.nu2));
            for (std::size_t i = 0; i < n * n; ++i) {
                sys.set(i, col, v1.at(i, 0));
                sys.set(n * n + i, col, v2.at(i, 0));
            }
        }
        const auto kernel = null_space(sys);
        ExactMatrix X(f, n, n);
        for (const auto& v : kernel) X = X + unvec(v, n, n).scale(random_scalar(f, rng));

        ++r.instances;
        const auto c = check_orthogonality(P, X, s);
        if (!c.equations) throw std::logic_error("orthogonality sampler left the solution space");
        ++r.premise_held;
        if (!c.orthogonal) record(r, orthogonality_payload(P, X, s));
    }
    r.notes.push_back("sampled " + std::to_string(trials) + " instances; X drawn from the solution space");
    return r;
}

// ---- zero detection --------------------------------------------------------

LemmaReport verify_zero_detection(const MultilinearPoly& p, std::size_t n, unsigned jobs) {
    const Field& f = p.field();
    require_finite(f, "zero detection");
    if (classify(p) != PolyClass::generic) throw InvalidInput("zero detection needs a generic polynomial");
    const std::uint64_t per = matrix_count(f, n, n);
    require_budget(per, std::uint64_t{1} << 20, "zero detection matrices");

    const CompiledPoly cp(p);
    const CodeOps& ops = cp.ops();
    const unsigned k = p.arity();
    std::vector<CodeMatrix> rank_one;
    for (std::uint64_t i = 0; i < per; ++i) {
        const ExactMatrix m = matrix_at(f, n, n, i);
        if (is_rank_one(m)) rank_one.push_back(ops.from(m));
    }
    std::vector<CodeMatrix> units;
    for (std::size_t i = 0; i < n; ++i) units.push_back(ops.from(ExactMatrix::unit(f, n, i, i)));

    struct Outcome {
        bool zero = false;
        std::uint64_t full = kNoIndex;        // first rank-one X with p(A, X, ..., X) != 0
        std::uint64_t restricted = kNoIndex;  // first i with p(A, E_ii, ..., E_ii) != 0
    };
    auto first_witness = [&](const CodeMatrix& A, const std::vector<CodeMatrix>& set) {
        for (std::uint64_t i = 0; i < set.size(); ++i)
            if (!cp.is_zero_tuple(repeat_tuple(A, set[i], k, 0))) return i;
        return kNoIndex;
    };
    const auto outcomes = parallel_map<Outcome>(per, jobs, [&](std::uint64_t ai) {
        CodeMatrix A;
        ops.at_index(n, ai, A);
        Outcome o;
        o.zero = A.is_zero();
        o.full = first_witness(A, rank_one);
        o.restricted = first_witness(A, units);
        return o;
    });

    LemmaReport r;
    r.lemma = "zero_detection";
    r.field = f;
    r.exhaustive = true;
    r.secondary_label = "witness set {E_ii}";
    for (std::uint64_t ai = 0; ai < per; ++ai) {
        const Outcome& o = outcomes[ai];
        ++r.instances;
        ++r.premise_held;
        auto payload = [&](const std::string& what, std::uint64_t wi, const std::vector<CodeMatrix>& set) {
            Counterexample c;
            c.what = what;
            c.matrices.push_back({"A", matrix_at(f, n, n, ai)});
            if (wi != kNoIndex) c.matrices.push_back({"X", ops.to(set[wi])});
            return c;
        };
        if (o.zero && o.full != kNoIndex) record(r, payload("A = 0 but p(A, X, ..., X) != 0", o.full, rank_one));
        if (!o.zero && o.full == kNoIndex) record(r, payload("A != 0 but no rank-one X separates it", kNoIndex, rank_one));
        if (o.zero && o.restricted != kNoIndex)
            record_secondary(r, payload("A = 0 but p(A, E_ii, ..., E_ii) != 0", o.restricted, units));
        if (!o.zero && o.restricted == kNoIndex)
            record_secondary(r, payload("A != 0 but no E_ii separates it", kNoIndex, units));
    }
    r.notes.push_back(std::to_string(per) + " matrices A, " + std::to_string(rank_one.size()) + " rank-one X");
    return r;
}

// ---- rank-one nilpotents ---------------------------------------------------

bool in_omega_intersection(const NormalizedPoly& np, const ExactMatrix& A, const ExactMatrix& X) {
    const unsigned k = np.arity();
    std::vector<ExactMatrix> t(k, A);
    t[0] = X;
    if (!is_zero_tuple(np.base, t)) return false;
    t[0] = A;
    t[np.j0 - 1] = X;
    return is_zero_tuple(np.base, t);
}

namespace {

struct RankOneIdempotents {
    std::vector<ExactMatrix> P, Pphi;
};

RankOneIdempotents idempotents_with_image(const Field& f, std::size_t n, const FieldHom& phi) {
    require_budget(rank_one_idempotent_count(n, f), std::uint64_t{1} << 20, "rank-one idempotents");
    RankOneIdempotents r;
    r.P = enumerate_rank_one_idempotents(n, f);
    for (auto& P : r.P) r.Pphi.push_back(apply_hom_entrywise(phi, P));
    return r;
}

ProportionalityCheck pair_check(const CompiledPoly& cp, unsigned j0, const RankOneIdempotents& I, const ExactMatrix& N1,
                                const ExactMatrix& N2, const FieldHom& phi) {
    const CodeOps& ops = cp.ops();
    const unsigned k = cp.arity();
    auto member = [&](const CodeMatrix& A, const CodeMatrix& X) {
        return cp.is_zero_tuple(repeat_tuple(X, A, k, 0)) && cp.is_zero_tuple(repeat_tuple(X, A, k, j0 - 1));
    };
    ProportionalityCheck r;
    const CodeMatrix c1 = ops.from(N1), c2 = ops.from(N2);
    for (std::size_t i = 0; i < I.P.size(); ++i) {
        if (member(ops.from(I.P[i]), c1) != member(ops.from(I.Pphi[i]), c2)) {
            r.condition = false;
            r.distinguishing = I.P[i];
            break;
        }
    }
    const Field& f = N1.field();
    const ExactMatrix N1phi = apply_hom_entrywise(phi, N1);
    for (std::size_t e = 0; e < N1phi.entries().size(); ++e) {
        if (f.is_zero(N1phi.entries()[e])) continue;
        Scalar lambda = f.div(N2.entries()[e], N1phi.entries()[e]);
        if (!f.is_zero(lambda) && N1phi.scale(lambda) == N2) {
            r.proportional = true;
            r.lambda = lambda;
        }
        break;
    }
    return r;
}

ExactMatrix random_rank_one_nilpotent(const Field& f, std::size_t n, Rng& rng) {
    const ExactMatrix x = random_nonzero_vector(f, n, rng);
    while (true) {
        const ExactMatrix g = random_nonzero_vector(f, n, rng);
        if (f.is_zero(dot(g, x))) return x * g.transpose();
    }
}

}  // namespace

ProportionalityCheck check_nilpotent_pair(const NormalizedPoly& np, const ExactMatrix& N1, const ExactMatrix& N2,
                                          const FieldHom& phi) {
    const Field& f = N1.field();
    require_finite(f, "nilpotent proportionality");
    const CompiledPoly cp(np.base);
    return pair_check(cp, np.j0, idempotents_with_image(f, N1.rows(), phi), N1, N2, phi);
}

LemmaReport verify_nilpotent_proportionality(const MultilinearPoly& p, std::size_t n, const FieldHom& phi,
                                             std::uint64_t pairs, std::uint64_t seed, unsigned jobs) {
    const Field& f = p.field();
    require_finite(f, "nilpotent proportionality");
    if (n < 3) throw InvalidInput("nilpotent proportionality needs n >= 3");
    if (!(phi.field() == f)) throw InvalidInput("automorphism over a different field");
    const NormalizedPoly np = normalize(p);
    const CompiledPoly cp(np.base);
    const RankOneIdempotents I = idempotents_with_image(f, n, phi);

    struct Instance {
        ExactMatrix N1, N2;
        ProportionalityCheck check;
    };
    const auto results = parallel_map<Instance>(pairs, jobs, [&](std::uint64_t i) {
        Rng rng = instance_rng(seed, i);
        Instance in;
        in.N1 = random_rank_one_nilpotent(f, n, rng);
        const ExactMatrix N1phi = apply_hom_entrywise(phi, in.N1);
        switch (i % 3) {
            case 0:
                in.N2 = N1phi.scale(random_nonzero(f, rng));
                break;
            case 1:
                in.N2 = random_rank_one_nilpotent(f, n, rng);
                break;
            default: {
                // Same image as N1^phi, independent kernel.
                const RankOneFactor fac = rank_one_factorize(N1phi);
                while (true) {
                    const ExactMatrix g = random_nonzero_vector(f, n, rng);
                    if (f.is_zero(dot(g, fac.x))) {
                        in.N2 = fac.x * g.transpose();
                        break;
                    }
                }
            }
        }
        in.check = pair_check(cp, np.j0, I, in.N1, in.N2, phi);
        return in;
    });

    LemmaReport r;
    r.lemma = "nilpotent_proportionality";
    r.field = f;
    r.seed = seed;
    for (const auto& in : results) {
        ++r.instances;
        if (in.check.condition) ++r.premise_held;
        if (in.check.condition == in.check.proportional) continue;
        Counterexample c;
        c.what = in.check.condition ? "condition holds but N2 is not a multiple of N1^phi"
                                    : "N2 is a multiple of N1^phi but the condition fails";
        c.matrices = {{"N1", in.N1}, {"N2", in.N2}};
        if (in.check.distinguishing) c.matrices.push_back({"P", *in.check.distinguishing});
        c.text = {{"phi", phi.describe()}};
        record(r, std::move(c));
    }
    r.notes.push_back("condition checked against all " + std::to_string(I.P.size()) + " rank-one idempotents");
    return r;
}

// ---- B structure -----------------------------------------------------------

namespace {

using CodeVec = std::vector<std::uint64_t>;

struct VecSpace {
    const Field& f;
    std::size_t n;

    std::uint64_t dot(const CodeVec& a, const CodeVec& b) const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (a[i] && b[i]) s = f.code_add(s, f.code_mul(a[i], b[i]));
        return s;
    }
    CodeVec apply(const std::vector<std::uint64_t>& m, const CodeVec& v) const {
        CodeVec out(n, 0);
        for (std::size_t i = 0; i < n; ++i) out[i] = dot(CodeVec(m.begin() + i * n, m.begin() + (i + 1) * n), v);
        return out;
    }
    ExactMatrix column(const CodeVec& v) const {
        std::vector<Scalar> e(v.begin(), v.end());
        return ExactMatrix(f, n, 1, std::move(e));
    }
};

std::vector<CodeVec> all_vectors(const Field& f, std::size_t n) {
    const std::uint64_t q = f.order(), count = saturating_pow(q, n);
    std::vector<CodeVec> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        CodeVec v(n);
        std::uint64_t r = i;
        for (std::size_t j = n; j-- > 0;) {
            v[j] = r % q;
            r /= q;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<CodeVec> projective_vectors(const std::vector<CodeVec>& all) {
    std::vector<CodeVec> out;
    for (const auto& v : all) {
        auto it = std::find_if(v.begin(), v.end(), [](std::uint64_t c) { return c != 0; });
        if (it != v.end() && *it == 1) out.push_back(v);
    }
    return out;
}

std::vector<std::uint64_t> codes(const ExactMatrix& m) {
    std::vector<std::uint64_t> c;
    for (auto& s : m.entries()) c.push_back(m.field().index_of(s));
    return c;
}

}  // namespace

BStructureCheck check_B_structure(const ExactMatrix& A, const ExactMatrix& B, const Scalar& alpha, const Scalar& beta,
                                  const FieldHom& phi) {
    const Field& f = A.field();
    require_finite(f, "B structure check");
    const std::size_t n = A.rows();
    require_budget(saturating_pow(f.order(), n), std::uint64_t{1} << 16, "vectors");

    BStructureCheck r;
    const ExactMatrix Aphi = apply_hom_entrywise(phi, A);
    r.in_span = SubspaceBasis::span(f, n, n, {Aphi, ExactMatrix::identity(f, n)}).contains(B);

    // phi(f)^T B phi(x) = phi(f^T B' x) with B' = B^{phi^-1}, so zero tests can
    // stay in the unconjugated coordinates.
    const std::vector<std::uint64_t> a = codes(A), b = codes(apply_hom_entrywise(phi.inverse(), B));
    const VecSpace V{f, n};
    const auto all = all_vectors(f, n);
    const auto proj = projective_vectors(all);
    std::vector<CodeVec> Ay, By;
    for (const auto& y : proj) {
        Ay.push_back(V.apply(a, y));
        By.push_back(V.apply(b, y));
    }
    const bool alpha0 = f.is_zero(alpha), beta0 = f.is_zero(beta);

    for (std::size_t xi = 0; xi < proj.size(); ++xi) {
        const CodeVec& x = proj[xi];
        // Type of f: (f^T A x == 0, f^T B' x == 0); type of (g, y): (g^T A y == 0, g^T B' y == 0).
        std::array<std::optional<std::size_t>, 4> ftype;
        std::array<std::optional<std::pair<std::size_t, std::size_t>>, 4> gytype;
        for (std::size_t fi = 0; fi < proj.size(); ++fi) {
            if (V.dot(proj[fi], x) != 0) continue;
            const int t = (V.dot(proj[fi], Ay[xi]) == 0 ? 2 : 0) | (V.dot(proj[fi], By[xi]) == 0 ? 1 : 0);
            if (!ftype[t]) ftype[t] = fi;
        }
        int seen = 0;
        for (std::size_t gi = 0; gi < all.size() && seen < 4; ++gi) {
            if (V.dot(all[gi], x) != 1) continue;
            for (std::size_t yi = 0; yi < proj.size(); ++yi) {
                if (V.dot(all[gi], proj[yi]) != 0) continue;
                const int t = (V.dot(all[gi], Ay[yi]) == 0 ? 2 : 0) | (V.dot(all[gi], By[yi]) == 0 ? 1 : 0);
                if (!gytype[t]) {
                    gytype[t] = std::make_pair(gi, yi);
                    if (++seen == 4) break;
                }
            }
        }
        for (int ft = 0; ft < 4; ++ft) {
            if (!ftype[ft]) continue;
            for (int gt = 0; gt < 4; ++gt) {
                if (!gytype[gt]) continue;
                const bool lhs = (ft & 2) && (alpha0 || (gt & 2));
                const bool rhs = (ft & 1) && (beta0 || (gt & 1));
                if (lhs == rhs) continue;
                const auto [gi, yi] = *gytype[gt];
                r.condition = false;
                r.P = V.column(x) * V.column(all[gi]).transpose();
                r.N = V.column(proj[yi]) * V.column(proj[*ftype[ft]]).transpose();
                return r;
            }
        }
    }
    return r;
}

LemmaReport verify_B_structure_lemma(const Field& f, std::size_t n, const FieldHom& phi, std::uint64_t trials,
                                     std::uint64_t seed, unsigned jobs) {
    require_finite(f, "B structure lemma");
    if (n < 4) throw InvalidInput("B structure lemma needs n >= 4");
    if (!(phi.field() == f)) throw InvalidInput("automorphism over a different field");
    require_budget(saturating_pow(f.order(), n), std::uint64_t{1} << 16, "vectors");

    struct Instance {
        ExactMatrix A, B;
        Scalar alpha, beta;
        BStructureCheck check;
    };
    const ExactMatrix I = ExactMatrix::identity(f, n);
    const auto results = parallel_map<Instance>(trials, jobs, [&](std::uint64_t i) {
        Rng rng = instance_rng(seed, i);
        Instance in;
        auto rank_one = [&] { return random_nonzero_vector(f, n, rng) * random_nonzero_vector(f, n, rng).transpose(); };
        do {
            switch (i % 4) {
                case 0:
                case 1:
                    in.A = random_matrix(f, n, n, rng);
                    in.B = apply_hom_entrywise(phi, in.A).scale(random_nonzero(f, rng)) + I.scale(random_scalar(f, rng));
                    if (i % 4 == 1) in.B = in.B + rank_one();
                    in.alpha = random_scalar(f, rng);
                    in.beta = in.alpha;
                    break;
                case 2:
                    in.A = random_matrix(f, n, n, rng);
                    in.B = random_matrix(f, n, n, rng);
                    in.alpha = random_scalar(f, rng);
                    in.beta = random_scalar(f, rng);
                    break;
                default:
                    in.A = I.scale(random_nonzero(f, rng));
                    in.B = I.scale(random_scalar(f, rng));
                    if ((i / 4) % 2 == 1) in.B = in.B + rank_one();
                    in.alpha = random_scalar(f, rng);
                    in.beta = in.alpha;
            }
        } while (in.A.is_zero() || in.B.is_zero());
        in.check = check_B_structure(in.A, in.B, in.alpha, in.beta, phi);
        return in;
    });

    LemmaReport r;
    r.lemma = "B_structure";
    r.field = f;
    r.seed = seed;
    r.secondary_label = "converse: B in span{A^phi, Id} implies the condition";
    for (const auto& in : results) {
        ++r.instances;
        if (in.check.condition) ++r.premise_held;
        Counterexample c;
        c.matrices = {{"A", in.A}, {"B", in.B}};
        c.scalars = {{"alpha", in.alpha}, {"beta", in.beta}};
        c.text = {{"phi", phi.describe()}};
        if (in.check.condition && !in.check.in_span) {
            c.what = "condition holds but B is outside span{A^phi, Id}";
            record(r, std::move(c));
        } else if (!in.check.condition && in.check.in_span) {
            c.what = "B in span{A^phi, Id} but the condition fails";
            c.matrices.push_back({"P", *in.check.P});
            c.matrices.push_back({"N", *in.check.N});
            record_secondary(r, std::move(c));
        }
    }
    r.notes.push_back("condition decided over all rank-one idempotents P and rank-one N with PN = 0 = NP");
    return r;
}

// ---- local linear dependence -----------------------------------------------

std::string to_string(LldCase c) {
    switch (c) {
        case LldCase::globally_dependent:
            return "globally_dependent";
        case LldCase::common_3dim_image:
            return "common_3dim_image";
        case LldCase::rank_one_projection:
            return "rank_one_projection";
        case LldCase::none:
            return "none";
    }
    return "none";
}

LldResult local_linear_dependence(const ExactMatrix& R1, const ExactMatrix& R2, const ExactMatrix& R3) {
    const Field& f = R1.field();
    require_finite(f, "local linear dependence");
    const std::size_t n = R1.rows();
    for (const ExactMatrix* R : {&R1, &R2, &R3})
        if (!(R->field() == f) || R->rows() != n || R->cols() != n)
            throw InvalidInput("local linear dependence needs three n x n matrices over one field");
    const std::uint64_t vectors = matrix_count(f, n, 1);
    require_budget(vectors, std::uint64_t{1} << 16, "vectors");

    LldResult r;
    r.dependent_everywhere = true;
    for (std::uint64_t i = 1; i < vectors; ++i) {
        const ExactMatrix u = matrix_at(f, n, 1, i);
        ExactMatrix cols(f, n, 3);
        const ExactMatrix imgs[3] = {R1 * u, R2 * u, R3 * u};
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t row = 0; row < n; ++row) cols.set(row, c, imgs[c].at(row, 0));
        if (rank(cols) == 3) {
            r.dependent_everywhere = false;
            r.independent_at = u;
            break;
        }
    }

    auto span_dim = [&](const ExactMatrix& a, const ExactMatrix& b, const ExactMatrix& c) {
        return SubspaceBasis::span(f, n, n, {a, b, c}).dim();
    };
    if (span_dim(R1, R2, R3) < 3) {
        r.conclusion = LldCase::globally_dependent;
        return r;
    }
    ExactMatrix side(f, n, 3 * n);
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t c = 0; c < n; ++c) {
            side.set(row, c, R1.at(row, c));
            side.set(row, n + c, R2.at(row, c));
            side.set(row, 2 * n + c, R3.at(row, c));
        }
    if (rank(side) <= 3) {
        r.conclusion = LldCase::common_3dim_image;
        return r;
    }
    const std::uint64_t count = rank_one_idempotent_count(n, f);
    require_budget(count, std::uint64_t{1} << 20, "rank-one idempotents");
    const ExactMatrix I = ExactMatrix::identity(f, n);
    for (std::uint64_t i = 0; i < count; ++i) {
        const ExactMatrix P = rank_one_idempotent_at(n, f, i);
        const ExactMatrix Q = I - P;
        if (span_dim(Q * R1, Q * R2, Q * R3) == 1) {
            r.conclusion = LldCase::rank_one_projection;
            r.projection = P;
            return r;
        }
    }
    return r;
}

// ---- spectrum --------------------------------------------------------------

ExactMatrix operator_matrix_by_action(const std::vector<Scalar>& coeffs, const ExactMatrix& L, const ExactMatrix& M) {
    const Field& f = L.field();
    const std::size_t m = L.rows(), n = M.rows();
    if (coeffs.empty()) throw InvalidInput("operator needs at least one coefficient");
    const std::size_t t = coeffs.size() - 1;
    std::vector<ExactMatrix> Lp{ExactMatrix::identity(f, m)}, Mp{ExactMatrix::identity(f, n)};
    for (std::size_t j = 0; j < t; ++j) {
        Lp.push_back(Lp.back() * L);
        Mp.push_back(Mp.back() * M);
    }
    ExactMatrix op(f, m * n, m * n);
    for (std::size_t col = 0; col < m * n; ++col) {
        ExactMatrix E(f, m, n);
        E.set(col % m, col / m, f.one());
        ExactMatrix img(f, m, n);
        for (std::size_t j = 0; j <= t; ++j)
            if (!f.is_zero(coeffs[j])) img = img + (Lp[t - j] * E * Mp[j]).scale(coeffs[j]);
        const ExactMatrix v = vec(img);
        for (std::size_t row = 0; row < m * n; ++row) op.set(row, col, v.at(row, 0));
    }
    return op;
}

namespace {

ExactMatrix jordan_block(const Field& f, std::size_t m, const Scalar& lambda) {
    ExactMatrix J = ExactMatrix::scalar(f, m, lambda);
    for (std::size_t i = 0; i + 1 < m; ++i) J.set(i, i + 1, f.one());
    return J;
}

}  // namespace

LemmaReport check_spectrum_formula(const Field& f, const SpectrumSweep& sw) {
    require_finite(f, "spectrum formula check");
    if (sw.max_block == 0) throw InvalidInput("max_block must be positive");
    const std::uint64_t q = f.order(), mb = sw.max_block;
    const std::uint64_t pairs = mb * mb * q * q;
    const std::uint64_t total = sw.lists_per_pair ? pairs * sw.lists_per_pair : sw.cases;

    struct Case {
        std::size_t m = 0, n = 0;
        Scalar lambda, mu;
        std::vector<Scalar> c;
        bool ok = true;
        UniPoly got, want;
        ExactMatrix op;
    };
    const auto results = parallel_map<Case>(total, sw.jobs, [&](std::uint64_t i) {
        Rng rng = instance_rng(sw.seed, i);
        Case cs;
        if (sw.lists_per_pair) {
            std::uint64_t pi = i / sw.lists_per_pair;
            cs.mu = f.element(pi % q);
            pi /= q;
            cs.lambda = f.element(pi % q);
            pi /= q;
            cs.n = pi % mb + 1;
            cs.m = pi / mb + 1;
        } else {
            cs.m = rng.below(mb) + 1;
            cs.n = rng.below(mb) + 1;
            cs.lambda = random_scalar(f, rng);
            cs.mu = random_scalar(f, rng);
        }
        const std::size_t t = rng.below(sw.max_degree + 1);
        for (std::size_t j = 0; j <= t; ++j) cs.c.push_back(random_scalar(f, rng));

        cs.op = operator_matrix_by_action(cs.c, jordan_block(f, cs.m, cs.lambda), jordan_block(f, cs.n, cs.mu));
        Scalar value = f.zero();
        for (std::size_t j = 0; j <= t; ++j)
            value = f.add(value, f.mul(cs.c[j], f.mul(f.pow(cs.lambda, t - j), f.pow(cs.mu, j))));
        const UniPoly lin(f, {f.neg(value), f.one()});
        cs.want = UniPoly::constant(f, f.one());
        for (std::size_t e = 0; e < cs.m * cs.n; ++e) cs.want = cs.want * lin;
        cs.got = char_poly(cs.op);
        cs.ok = cs.got == cs.want;
        return cs;
    });

    LemmaReport r;
    r.lemma = "spectrum_formula";
    r.field = f;
    r.seed = sw.seed;
    r.exhaustive = sw.lists_per_pair > 0;
    for (const auto& cs : results) {
        ++r.instances;
        ++r.premise_held;
        if (cs.ok) continue;
        Counterexample c;
        c.what = "char poly is not (x - value)^(mn)";
        c.matrices = {{"L", jordan_block(f, cs.m, cs.lambda)}, {"M", jordan_block(f, cs.n, cs.mu)}, {"operator", cs.op}};
        for (std::size_t j = 0; j < cs.c.size(); ++j) c.scalars.push_back({"c" + std::to_string(j), cs.c[j]});
        c.text = {{"char_poly", cs.got.str()}, {"expected", cs.want.str()}};
        record(r, std::move(c));
    }
    if (sw.lists_per_pair)
        r.notes.push_back("all " + std::to_string(pairs) + " block pairs with " + std::to_string(sw.lists_per_pair) +
                          " coefficient lists each");
    return r;
}

}  // namespace preserverlab
