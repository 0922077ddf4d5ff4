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

#include "preserverlab/omegaclass.hpp"

#include <array>
#include <stdexcept>

#include "preserverlab/codemat.hpp"
#include "preserverlab/errors.hpp"
#include "preserverlab/rng.hpp"

namespace preserverlab {

std::string to_string(OmegaCase c) {
    switch (c) {
        case OmegaCase::trivial_zero:
            return "TrivialZero";
        case OmegaCase::rank_one_square_zero:
            return "ContainsRankOneSquareZero";
        case OmegaCase::scalar_idempotent_line:
            return "ScalarIdempotentLine";
        case OmegaCase::other:
            return "Other";
    }
    return "Other";
}

std::string to_string(ClassPath p) { return p == ClassPath::structural ? "structural" : "direct"; }

namespace {

constexpr std::uint64_t kProjectiveCap = std::uint64_t(1) << 20;
constexpr std::uint64_t kSamples = 100000;

void check_inputs(const ExactMatrix& A, const NormalizedPoly& np) {
    if (!A.is_square()) throw InvalidInput("classification needs a square matrix");
    if (!(A.field() == np.field())) throw InvalidInput("matrix and polynomial fields differ");
}

bool splits(const UniPoly& f) {
    for (auto& fac : factor_poly(f))
        if (fac.poly.degree() > 1) return false;
    return true;
}

ExactMatrix transport(const SplitJordanData& jd, const ExactMatrix& X) { return jd.S * X * inverse_or_throw(jd.S); }

bool is_rank_one_square_zero(const ExactMatrix& X) { return is_rank_one(X) && is_square_zero(X); }

}  // namespace

OmegaClassification classify_structural(const ExactMatrix& A, const NormalizedPoly& np, bool lift) {
    check_inputs(A, np);
    const Field& F = A.field();
    if (F.is_finite() && !lift && !splits(char_poly(A)))
        throw InvalidInput("characteristic polynomial does not split over " + F.name() + "; a splitting-field lift is required");
    SplitJordanData jd = jordan_over_splitting_field(A);
    const Field& E = jd.field;
    NormalizedPoly npE = jd.embedding.is_identity() ? np : np.map(jd.embedding);
    const std::size_t n = A.rows();
    const std::size_t r = jd.groups.size();

    OmegaClassification out;
    out.path = ClassPath::structural;
    out.field = E;
    out.embedding = jd.embedding;

    auto common_zero = [&](std::size_t i, std::size_t j) {
        const Scalar& l = jd.groups[i].eigenvalue;
        const Scalar& m = jd.groups[j].eigenvalue;
        return E.is_zero(p_bullet(npE, l, m)) && E.is_zero(p_Abullet(npE, l, m));
    };

    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j || !common_zero(i, j)) continue;
            // single entry in the upper-right corner of block (i, j)
            ExactMatrix X = ExactMatrix::unit(E, n, jd.offset(i), jd.offset(j) + jd.groups[j].size() - 1);
            out.kind = OmegaCase::rank_one_square_zero;
            out.witness = transport(jd, X);
            return out;
        }
    for (std::size_t i = 0; i < r; ++i) {
        if (!common_zero(i, i)) continue;
        if (!E.is_zero(jd.groups[i].eigenvalue)) throw std::logic_error("diagonal common zero at a nonzero eigenvalue");
        const std::size_t off = jd.offset(i), ni = jd.groups[i].size();
        if (ni >= 2) {
            out.kind = OmegaCase::rank_one_square_zero;
            out.witness = transport(jd, ExactMatrix::unit(E, n, off, off + ni - 1));
        } else {
            out.kind = OmegaCase::scalar_idempotent_line;
            out.witness = transport(jd, ExactMatrix::unit(E, n, off, off));
        }
        return out;
    }
    out.kind = OmegaCase::trivial_zero;
    return out;
}

namespace {

std::optional<ExactMatrix> search_finite(const SubspaceBasis& V, std::uint64_t seed, bool& exhaustive) {
    const Field& E = V.field();
    const std::size_t d = V.dim();
    const std::uint64_t q = E.order();
    CodeOps ops(E);
    std::vector<CodeMatrix> B;
    for (auto& b : V.basis()) B.push_back(ops.from(b));
    const std::size_t n = V.rows();
    CodeMatrix X, X2;
    auto test = [&](const std::vector<std::uint64_t>& c) -> std::optional<ExactMatrix> {
        X = ops.zero(n);
        for (std::size_t i = 0; i < d; ++i) ops.add_scaled(X, B[i], c[i]);
        ops.mul(X, X, X2);
        if (!X2.is_zero() || X.is_zero()) return std::nullopt;
        ExactMatrix M = ops.to(X);
        if (is_rank_one(M)) return M;
        return std::nullopt;
    };
    std::uint64_t qd = saturating_pow(q, d);
    std::uint64_t points = qd == UINT64_MAX ? UINT64_MAX : (qd - 1) / (q - 1);
    exhaustive = points <= kProjectiveCap;
    std::vector<std::uint64_t> c(d);
    if (exhaustive) {
        // leading coordinate 1, later coordinates run through all of F
        for (std::size_t lead = 0; lead < d; ++lead) {
            const std::uint64_t tail = saturating_pow(q, d - 1 - lead);
            for (std::uint64_t t = 0; t < tail; ++t) {
                std::fill(c.begin(), c.end(), 0);
                c[lead] = 1;
                std::uint64_t x = t;
                for (std::size_t i = d; i-- > lead + 1;) {
                    c[i] = x % q;
                    x /= q;
                }
                if (auto w = test(c)) return w;
            }
        }
        return std::nullopt;
    }
    Rng rng(seed);
    for (std::uint64_t s = 0; s < kSamples; ++s) {
        for (auto& v : c) v = rng.below(q);
        if (auto w = test(c)) return w;
    }
    return std::nullopt;
}

// Candidates (a:b) for a X1 + b X2 from the first nonvanishing binary quadratic
// form among the entries of X^2 and the 2x2 minors of X.
std::optional<ExactMatrix> search_plane(const SubspaceBasis& V) {
    const Field& E = V.field();
    const ExactMatrix& X1 = V.basis()[0];
    const ExactMatrix& X2 = V.basis()[1];
    const std::size_t n = V.rows();
    std::vector<std::array<Scalar, 3>> forms;
    ExactMatrix s11 = X1 * X1, s12 = X1 * X2 + X2 * X1, s22 = X2 * X2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) forms.push_back({s11.at(i, j), s12.at(i, j), s22.at(i, j)});
    for (std::size_t r1 = 0; r1 < n; ++r1)
        for (std::size_t r2 = r1 + 1; r2 < n; ++r2)
            for (std::size_t c1 = 0; c1 < n; ++c1)
                for (std::size_t c2 = c1 + 1; c2 < n; ++c2) {
                    // (a p + b p')(a s + b s') - (a u + b u')(a v + b v')
                    const Scalar &p = X1.at(r1, c1), &pp = X2.at(r1, c1), &s = X1.at(r2, c2), &sp = X2.at(r2, c2);
                    const Scalar &u = X1.at(r1, c2), &up = X2.at(r1, c2), &v = X1.at(r2, c1), &vp = X2.at(r2, c1);
                    Scalar aa = E.sub(E.mul(p, s), E.mul(u, v));
                    Scalar ab = E.sub(E.add(E.mul(p, sp), E.mul(pp, s)), E.add(E.mul(u, vp), E.mul(up, v)));
                    Scalar bb = E.sub(E.mul(pp, sp), E.mul(up, vp));
                    forms.push_back({aa, ab, bb});
                }
    std::vector<std::pair<Scalar, Scalar>> candidates;
    const std::array<Scalar, 3>* pick = nullptr;
    for (auto& f : forms)
        if (!E.is_zero(f[0]) || !E.is_zero(f[1]) || !E.is_zero(f[2])) {
            pick = &f;
            break;
        }
    if (!pick) {
        candidates.push_back({E.one(), E.zero()});
    } else {
        const auto& f = *pick;
        if (E.is_zero(f[0])) candidates.push_back({E.one(), E.zero()});
        UniPoly g(E, {f[2], f[1], f[0]});
        if (g.degree() >= 1)
            for (auto& t : roots(g.monic())) candidates.push_back({t, E.one()});
    }
    for (auto& [a, b] : candidates) {
        ExactMatrix X = X1.scale(a) + X2.scale(b);
        if (is_rank_one_square_zero(X)) return X;
    }
    return std::nullopt;
}

std::optional<ExactMatrix> structural_witness(const ExactMatrix& B, const NormalizedPoly& np, const SubspaceBasis& V) {
    try {
        auto s = classify_structural(B, np, false);
        if (s.kind == OmegaCase::rank_one_square_zero && s.field == V.field() && V.contains(*s.witness)) return s.witness;
    } catch (const InvalidInput&) {
    } catch (const Unsupported&) {
    }
    return std::nullopt;
}

}  // namespace

OmegaClassification classify_direct(const ExactMatrix& A, const NormalizedPoly& np, bool lift, std::uint64_t seed) {
    check_inputs(A, np);
    const Field& F = A.field();
    FieldEmbedding emb(F);
    if (lift && F.is_finite()) emb = splitting_field(char_poly(A)).embedding;
    const Field& E = emb.target();
    ExactMatrix B = emb.is_identity() ? A : map_entries(emb, A);
    NormalizedPoly npE = emb.is_identity() ? np : np.map(emb);
    SubspaceBasis V = omega_intersection(B, npE);

    OmegaClassification out;
    out.path = ClassPath::direct;
    out.field = E;
    out.embedding = emb;
    out.basis = V;
    const std::size_t d = V.dim();
    if (d == 0) {
        out.kind = OmegaCase::trivial_zero;
        return out;
    }
    std::optional<ExactMatrix> w;
    if (E.is_finite()) {
        bool exhaustive = false;
        w = search_finite(V, seed, exhaustive);
        if (!w && !exhaustive) w = structural_witness(B, npE, V);
    } else if (d == 1) {
        if (is_rank_one_square_zero(V.basis()[0])) w = V.basis()[0];
    } else if (d == 2) {
        w = search_plane(V);
    } else {
        w = structural_witness(B, npE, V);
    }
    if (w) {
        out.kind = OmegaCase::rank_one_square_zero;
        out.witness = w;
        return out;
    }
    if (d == 1) {
        const ExactMatrix& X = V.basis()[0];
        // a rank-one X satisfies X^2 = tr(X) X
        Scalar t = X.trace();
        if (is_rank_one(X) && !E.is_zero(t)) {
            out.kind = OmegaCase::scalar_idempotent_line;
            out.witness = X.scale(E.inv(t));
            return out;
        }
    }
    out.kind = OmegaCase::other;
    return out;
}

CrossValidation cross_validate(const ExactMatrix& A, const NormalizedPoly& np, bool lift, std::uint64_t seed) {
    CrossValidation cv;
    cv.structural = classify_structural(A, np, lift);
    cv.direct = classify_direct(A, np, lift, seed);
    cv.agree = cv.structural.kind == cv.direct.kind;
    if (!cv.agree)
        cv.diagnostic = "structural: " + to_string(cv.structural.kind) + ", direct: " + to_string(cv.direct.kind) + " (dimension " +
                        std::to_string(cv.direct.basis->dim()) + ") for A = " + A.str() + " over " + cv.direct.field.name();
    return cv;
}

}  // namespace preserverlab
