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

#include "preserverlab/canonform.hpp"

#include <algorithm>
#include <stdexcept>

#include "preserverlab/errors.hpp"

namespace preserverlab {

CompanionBlock companion(const UniPoly& f) {
    if (f.degree() < 1) throw InvalidInput("companion needs degree >= 1");
    if (!f.is_monic()) throw InvalidInput("companion needs a monic polynomial");
    const Field& F = f.field();
    const std::size_t d = static_cast<std::size_t>(f.degree());
    ExactMatrix m(F, d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) m.set(i + 1, i, F.one());
    for (std::size_t i = 0; i < d; ++i) m.set(i, d - 1, F.neg(f.coeff(i)));
    return {f, m};
}

namespace {

struct Generator {
    ExactMatrix g;
    unsigned exponent;
};

ExactMatrix columns(const Field& F, std::size_t n, const std::vector<ExactMatrix>& cols) {
    ExactMatrix m(F, n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m.set(i, j, cols[j].at(i, 0));
    return m;
}

std::size_t span_rank(const Field& F, std::size_t n, const std::vector<ExactMatrix>& cols) {
    return cols.empty() ? 0 : rank(columns(F, n, cols));
}

// Cyclic generators of the q-primary component, exponents descending. At level j
// the new generators extend a basis of ker q^j modulo ker q^{j-1} + q ker q^{j+1}.
std::vector<Generator> primary_generators(const ExactMatrix& A, const UniPoly& q, unsigned mult) {
    const Field& F = A.field();
    const std::size_t n = A.rows();
    const std::size_t d = static_cast<std::size_t>(q.degree());
    ExactMatrix Q = eval_poly(q, A);
    std::vector<std::vector<ExactMatrix>> K(mult + 2);
    ExactMatrix Qj = ExactMatrix::identity(F, n);
    unsigned top = 0;
    for (unsigned j = 1; j <= mult; ++j) {
        Qj = Qj * Q;
        K[j] = null_space(Qj);
        if (K[j].size() == d * mult && top == 0) top = j;
    }
    if (top == 0) throw std::logic_error("primary component has the wrong dimension");
    std::vector<Generator> gens;
    for (unsigned j = top; j >= 1; --j) {
        std::vector<ExactMatrix> cur = K[j - 1];
        if (j < top)
            for (auto& v : K[j + 1]) cur.push_back(Q * v);
        std::size_t r = span_rank(F, n, cur);
        for (auto& v : K[j]) {
            cur.push_back(v);
            std::size_t r2 = span_rank(F, n, cur);
            cur.pop_back();
            if (r2 == r) continue;
            ExactMatrix w = v;
            for (std::size_t i = 0; i < d; ++i) {
                cur.push_back(w);
                w = A * w;
            }
            r = span_rank(F, n, cur);
            gens.push_back({v, j});
        }
    }
    return gens;
}

UniPoly poly_pow(const UniPoly& q, unsigned e) {
    UniPoly r = UniPoly::constant(q.field(), q.field().one());
    for (unsigned i = 0; i < e; ++i) r = r * q;
    return r;
}

ExactMatrix block_diag(const Field& F, const std::vector<ExactMatrix>& blocks) {
    std::size_t n = 0;
    for (auto& b : blocks) n += b.rows();
    ExactMatrix m(F, n, n);
    std::size_t off = 0;
    for (auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m.set(off + i, off + j, b.at(i, j));
        off += b.rows();
    }
    return m;
}

void check_similarity(const ExactMatrix& A, const ExactMatrix& P, const ExactMatrix& B) {
    auto Pi = inverse(P);
    if (!Pi || !(*Pi * A * P == B)) throw std::logic_error("canonical form similarity check failed");
}

}  // namespace

ExactMatrix PrimaryRationalForm::block_matrix() const {
    std::vector<ExactMatrix> bs;
    for (auto& b : blocks) bs.push_back(b.block.matrix);
    return block_diag(transform.field(), bs);
}

PrimaryRationalForm primary_rational_form(const ExactMatrix& A) {
    if (!A.is_square()) throw InvalidInput("primary_rational_form needs a square matrix");
    const Field& F = A.field();
    const std::size_t n = A.rows();
    PrimaryRationalForm rf;
    std::vector<ExactMatrix> cols;
    if (n == 0) {
        rf.transform = ExactMatrix(F, 0, 0);
        return rf;
    }
    for (auto& fac : factor_poly(char_poly(A))) {
        for (auto& g : primary_generators(A, fac.poly, fac.multiplicity)) {
            UniPoly f = poly_pow(fac.poly, g.exponent);
            ExactMatrix w = g.g;
            for (int i = 0; i < f.degree(); ++i) {
                cols.push_back(w);
                w = A * w;
            }
            rf.blocks.push_back({fac.poly, g.exponent, companion(f)});
        }
    }
    rf.transform = columns(F, n, cols);
    check_similarity(A, rf.transform, rf.block_matrix());
    return rf;
}

bool has_nonzero_nilpotent_block(const PrimaryRationalForm& rf) {
    for (auto& b : rf.blocks)
        if (b.factor.degree() == 1 && b.factor.field().is_zero(b.factor.coeff(0)) && b.exponent >= 2) return true;
    return false;
}

ExactMatrix jordan_cell(const Field& f, std::size_t n, const Scalar& lambda) {
    ExactMatrix j = ExactMatrix::scalar(f, n, lambda);
    for (std::size_t i = 0; i + 1 < n; ++i) j.set(i, i + 1, f.one());
    return j;
}

std::size_t EigenGroup::size() const {
    std::size_t s = 0;
    for (auto c : cells) s += c;
    return s;
}

ExactMatrix EigenGroup::block(const Field& f) const {
    std::vector<ExactMatrix> bs;
    for (auto c : cells) bs.push_back(jordan_cell(f, c, eigenvalue));
    return block_diag(f, bs);
}

ExactMatrix SplitJordanData::jordan_matrix() const {
    std::vector<ExactMatrix> bs;
    for (auto& g : groups) bs.push_back(g.block(field));
    return block_diag(field, bs);
}

std::size_t SplitJordanData::offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t g = 0; g < i; ++g) off += groups[g].size();
    return off;
}

SplitJordanData jordan_over_splitting_field(const ExactMatrix& A) {
    if (!A.is_square()) throw InvalidInput("jordan_over_splitting_field needs a square matrix");
    const Field& F = A.field();
    const std::size_t n = A.rows();
    UniPoly cp = char_poly(A);
    FieldEmbedding emb(F);
    if (F.is_finite()) {
        emb = splitting_field(cp).embedding;
    } else {
        for (auto& fac : factor_poly(cp))
            if (fac.poly.degree() > 1) throw Unsupported("characteristic polynomial does not split over " + F.name());
    }
    const Field& E = emb.target();
    ExactMatrix B = map_entries(emb, A);
    auto factors = factor_poly(cp.map(emb));
    std::sort(factors.begin(), factors.end(), [&](const Factor& a, const Factor& b) {
        return E.compare(E.neg(a.poly.coeff(0)), E.neg(b.poly.coeff(0))) < 0;
    });
    SplitJordanData out{E, emb, {}, ExactMatrix(E, n, n)};
    std::vector<ExactMatrix> cols;
    for (auto& fac : factors) {
        if (fac.poly.degree() != 1) throw std::logic_error("splitting field lift left a nonlinear factor");
        Scalar lambda = E.neg(fac.poly.coeff(0));
        ExactMatrix N = B - ExactMatrix::scalar(E, n, lambda);
        EigenGroup grp{lambda, {}};
        for (auto& g : primary_generators(B, fac.poly, fac.multiplicity)) {
            std::vector<ExactMatrix> chain{g.g};
            for (unsigned i = 1; i < g.exponent; ++i) chain.push_back(N * chain.back());
            cols.insert(cols.end(), chain.rbegin(), chain.rend());
            grp.cells.push_back(g.exponent);
        }
        out.groups.push_back(std::move(grp));
    }
    out.S = n == 0 ? ExactMatrix(E, 0, 0) : columns(E, n, cols);
    if (n > 0) check_similarity(B, out.S, out.jordan_matrix());
    return out;
}

}  // namespace preserverlab
