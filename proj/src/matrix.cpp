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

#include "preserverlab/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include "preserverlab/errors.hpp"

namespace preserverlab {

namespace {
void same_shape(const ExactMatrix& a, const ExactMatrix& b, const char* op) {
    if (!(a.field() == b.field())) throw InvalidInput(std::string(op) + ": field mismatch " + a.field().name() + " vs " + b.field().name());
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput(std::string(op) + ": dimension mismatch");
}
void need_square(const ExactMatrix& a, const char* op) {
    if (!a.is_square()) throw InvalidInput(std::string(op) + ": matrix is not square");
}
}  // namespace

ExactMatrix::ExactMatrix(Field f, std::size_t rows, std::size_t cols)
    : field_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, field_.zero()) {}

ExactMatrix::ExactMatrix(Field f, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(std::move(f)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows * cols) throw InvalidInput("matrix entry count does not match its shape");
    for (auto& v : e_)
        if (!field_.contains(v)) throw InvalidInput("matrix entry does not belong to " + field_.name());
}

ExactMatrix ExactMatrix::identity(const Field& f, std::size_t n) { return scalar(f, n, f.one()); }

ExactMatrix ExactMatrix::scalar(const Field& f, std::size_t n, const Scalar& s) {
    ExactMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = s;
    return m;
}

ExactMatrix ExactMatrix::unit(const Field& f, std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n) throw InvalidInput("unit matrix index out of range");
    ExactMatrix m(f, n, n);
    m.e_[i * n + j] = f.one();
    return m;
}

ExactMatrix ExactMatrix::diag(const Field& f, const std::vector<Scalar>& d) {
    ExactMatrix m(f, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
}

ExactMatrix ExactMatrix::column(const Field& f, const std::vector<Scalar>& v) { return ExactMatrix(f, v.size(), 1, v); }

ExactMatrix ExactMatrix::from_ints(const Field& f, const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    std::vector<Scalar> e;
    for (auto& row : rows) {
        if (row.size() != c) throw InvalidInput("ragged matrix rows");
        for (auto v : row) e.push_back(f.from_int(v));
    }
    return ExactMatrix(f, r, c, std::move(e));
}

void ExactMatrix::set(std::size_t i, std::size_t j, Scalar v) {
    if (!field_.contains(v)) throw InvalidInput("matrix entry does not belong to " + field_.name());
    e_[i * cols_ + j] = std::move(v);
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.e_[j * rows_ + i] = e_[i * cols_ + j];
    return t;
}

ExactMatrix ExactMatrix::scale(const Scalar& s) const {
    ExactMatrix r = *this;
    for (auto& v : r.e_) v = field_.mul(v, s);
    return r;
}

ExactMatrix ExactMatrix::pow(std::uint64_t e) const {
    need_square(*this, "pow");
    ExactMatrix r = identity(field_, rows_), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Scalar ExactMatrix::trace() const {
    need_square(*this, "trace");
    Scalar t = field_.zero();
    for (std::size_t i = 0; i < rows_; ++i) t = field_.add(t, at(i, i));
    return t;
}

bool ExactMatrix::is_zero() const {
    for (auto& v : e_)
        if (!field_.is_zero(v)) return false;
    return true;
}

std::string ExactMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << field_.format(at(i, j));
        os << ']';
    }
    os << ']';
    return os.str();
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    same_shape(a, b, "add");
    ExactMatrix r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = a.field_.add(a.e_[i], b.e_[i]);
    return r;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    same_shape(a, b, "sub");
    ExactMatrix r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = a.field_.sub(a.e_[i], b.e_[i]);
    return r;
}

ExactMatrix operator-(const ExactMatrix& a) {
    ExactMatrix r = a;
    for (auto& v : r.e_) v = a.field_.neg(v);
    return r;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (!(a.field_ == b.field_)) throw InvalidInput("mul: field mismatch " + a.field_.name() + " vs " + b.field_.name());
    if (a.cols_ != b.rows_) throw InvalidInput("mul: dimension mismatch");
    const Field& f = a.field_;
    ExactMatrix r(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a.e_[i * a.cols_ + k];
            if (f.is_zero(x)) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const Scalar& y = b.e_[k * b.cols_ + j];
                if (f.is_zero(y)) continue;
                Scalar& t = r.e_[i * b.cols_ + j];
                t = f.add(t, f.mul(x, y));
            }
        }
    return r;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
    if (!(a.field() == b.field())) throw InvalidInput("direct_sum: field mismatch");
    ExactMatrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r.set(a.rows() + i, a.cols() + j, b.at(i, j));
    return r;
}

RrefResult rref(const ExactMatrix& m) {
    const Field& f = m.field();
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<Scalar> e = m.entries();
    auto at = [&](std::size_t i, std::size_t j) -> Scalar& { return e[i * C + j]; };
    RrefResult res;
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t piv = row;
        while (piv < R && f.is_zero(at(piv, col))) ++piv;
        if (piv == R) continue;
        if (piv != row)
            for (std::size_t j = 0; j < C; ++j) std::swap(at(piv, j), at(row, j));
        Scalar inv = f.inv(at(row, col));
        for (std::size_t j = col; j < C; ++j) at(row, j) = f.mul(at(row, j), inv);
        for (std::size_t i = 0; i < R; ++i) {
            if (i == row || f.is_zero(at(i, col))) continue;
            Scalar factor = at(i, col);
            for (std::size_t j = col; j < C; ++j)
                if (!f.is_zero(at(row, j))) at(i, j) = f.sub(at(i, j), f.mul(factor, at(row, j)));
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = row;
    res.rref = ExactMatrix(f, R, C, std::move(e));
    return res;
}

std::size_t rank(const ExactMatrix& m) { return rref(m).rank; }

std::vector<ExactMatrix> null_space(const ExactMatrix& m) {
    const Field& f = m.field();
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<ExactMatrix> out;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(m.cols(), f.zero());
        v[free] = f.one();
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = f.neg(r.rref.at(i, free));
        out.push_back(ExactMatrix::column(f, v));
    }
    return out;
}

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
    if (!(a.field() == b.field())) throw InvalidInput("kron: field mismatch");
    const Field& f = a.field();
    const std::size_t R = a.rows() * b.rows(), C = a.cols() * b.cols();
    std::vector<Scalar> e(R * C, f.zero());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a.at(i, j);
            if (f.is_zero(x)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    e[(i * b.rows() + k) * C + j * b.cols() + l] = f.mul(x, b.at(k, l));
        }
    return ExactMatrix(f, R, C, std::move(e));
}

ExactMatrix vec(const ExactMatrix& x) {
    std::vector<Scalar> v;
    v.reserve(x.rows() * x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j)
        for (std::size_t i = 0; i < x.rows(); ++i) v.push_back(x.at(i, j));
    return ExactMatrix::column(x.field(), v);
}

ExactMatrix unvec(const ExactMatrix& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) throw InvalidInput("unvec: shape mismatch");
    ExactMatrix x(v.field(), rows, cols);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) x.set(i, j, v.at(j * rows + i, 0));
    return x;
}

ExactMatrix apply_hom_entrywise(const FieldHom& phi, const ExactMatrix& x) {
    if (!(phi.field() == x.field())) throw InvalidInput("apply_hom_entrywise: field mismatch");
    if (phi.is_identity()) return x;
    std::vector<Scalar> e;
    e.reserve(x.entries().size());
    for (auto& v : x.entries()) e.push_back(phi.apply(v));
    return ExactMatrix(x.field(), x.rows(), x.cols(), std::move(e));
}

ExactMatrix map_entries(const FieldEmbedding& emb, const ExactMatrix& x) {
    if (!(emb.source() == x.field())) throw InvalidInput("map_entries: field mismatch");
    if (emb.is_identity()) return x;
    std::vector<Scalar> e;
    e.reserve(x.entries().size());
    for (auto& v : x.entries()) e.push_back(emb.apply(v));
    return ExactMatrix(emb.target(), x.rows(), x.cols(), std::move(e));
}

bool is_idempotent(const ExactMatrix& p) { return p.is_square() && p * p == p; }
bool is_rank_one(const ExactMatrix& a) { return rank(a) == 1; }
bool is_square_zero(const ExactMatrix& n) { return n.is_square() && !n.is_zero() && (n * n).is_zero(); }
bool is_orthogonal_pair(const ExactMatrix& p, const ExactMatrix& q) { return (p * q).is_zero() && (q * p).is_zero(); }

RankOneFactor rank_one_factorize(const ExactMatrix& a) {
    if (rank(a) != 1) throw InvalidInput("rank_one_factorize: matrix does not have rank one");
    const Field& f = a.field();
    std::size_t r = 0, c = 0;
    bool found = false;
    for (r = 0; r < a.rows() && !found; ++r)
        for (c = 0; c < a.cols(); ++c)
            if (!f.is_zero(a.at(r, c))) {
                found = true;
                break;
            }
    --r;
    Scalar inv = f.inv(a.at(r, c));
    std::vector<Scalar> x, fv;
    for (std::size_t i = 0; i < a.rows(); ++i) x.push_back(f.mul(a.at(i, c), inv));
    for (std::size_t j = 0; j < a.cols(); ++j) fv.push_back(a.at(r, j));
    return {ExactMatrix::column(f, x), ExactMatrix::column(f, fv)};
}

Scalar det(const ExactMatrix& a) {
    need_square(a, "det");
    const Field& f = a.field();
    const std::size_t n = a.rows();
    std::vector<Scalar> e = a.entries();
    Scalar d = f.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && f.is_zero(e[piv * n + col])) ++piv;
        if (piv == n) return f.zero();
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(e[piv * n + j], e[col * n + j]);
            d = f.neg(d);
        }
        d = f.mul(d, e[col * n + col]);
        Scalar inv = f.inv(e[col * n + col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (f.is_zero(e[i * n + col])) continue;
            Scalar factor = f.mul(e[i * n + col], inv);
            for (std::size_t j = col; j < n; ++j) e[i * n + j] = f.sub(e[i * n + j], f.mul(factor, e[col * n + j]));
        }
    }
    return d;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& a) {
    need_square(a, "inverse");
    const Field& f = a.field();
    const std::size_t n = a.rows();
    ExactMatrix aug(f, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.set(i, j, a.at(i, j));
        aug.set(i, n + i, f.one());
    }
    auto r = rref(aug);
    if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
    ExactMatrix inv(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.set(i, j, r.rref.at(i, n + j));
    return inv;
}

ExactMatrix inverse_or_throw(const ExactMatrix& a) {
    auto inv = inverse(a);
    if (!inv) throw InvalidInput("matrix is singular");
    return *inv;
}

UniPoly char_poly(const ExactMatrix& a) {
    need_square(a, "char_poly");
    const Field& f = a.field();
    const std::size_t n = a.rows();
    if (n == 0) return UniPoly::constant(f, f.one());
    std::vector<UniPoly> m(n * n, UniPoly(f));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            UniPoly entry = UniPoly::constant(f, f.neg(a.at(i, j)));
            if (i == j) entry = entry + UniPoly::x(f);
            m[i * n + j] = entry;
        }
    // Bareiss: every intermediate division is exact
    bool negate = false;
    UniPoly prev = UniPoly::constant(f, f.one());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k * n + k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv * n + k].is_zero()) ++piv;
            if (piv == n) throw std::logic_error("char_poly: singular pencil");
            for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[k * n + j]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                UniPoly num = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
                auto [q, r] = divmod(num, prev);
                if (!r.is_zero()) throw std::logic_error("char_poly: inexact Bareiss step");
                m[i * n + j] = q;
            }
            m[i * n + k] = UniPoly(f);
        }
        prev = m[k * n + k];
    }
    UniPoly d = m[(n - 1) * n + (n - 1)];
    return negate ? -d : d;
}

ExactMatrix eval_poly(const UniPoly& p, const ExactMatrix& a) {
    need_square(a, "eval_poly");
    if (!(p.field() == a.field())) throw InvalidInput("eval_poly: field mismatch");
    const Field& f = a.field();
    ExactMatrix acc(f, a.rows(), a.cols());
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * a + ExactMatrix::scalar(f, a.rows(), c[i]);
    return acc;
}

// ---- subspaces

namespace {
ExactMatrix stack_vectorized(const Field& f, std::size_t rows, std::size_t cols, const std::vector<ExactMatrix>& mats) {
    ExactMatrix s(f, mats.size(), rows * cols);
    for (std::size_t r = 0; r < mats.size(); ++r) {
        const auto& m = mats[r];
        if (!(m.field() == f) || m.rows() != rows || m.cols() != cols) throw InvalidInput("subspace member has the wrong shape or field");
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) s.set(r, j * rows + i, m.at(i, j));
    }
    return s;
}
}  // namespace

SubspaceBasis::SubspaceBasis(Field f, std::size_t rows, std::size_t cols, std::vector<ExactMatrix> basis)
    : field_(std::move(f)), rows_(rows), cols_(cols), basis_(std::move(basis)) {
    if (rank(stack_vectorized(field_, rows_, cols_, basis_)) != basis_.size()) throw InvalidInput("subspace basis is linearly dependent");
}

SubspaceBasis SubspaceBasis::span(const Field& f, std::size_t rows, std::size_t cols, const std::vector<ExactMatrix>& gens) {
    SubspaceBasis s;
    s.field_ = f;
    s.rows_ = rows;
    s.cols_ = cols;
    auto r = rref(stack_vectorized(f, rows, cols, gens));
    for (std::size_t i = 0; i < r.rank; ++i) {
        ExactMatrix row(f, rows * cols, 1);
        for (std::size_t j = 0; j < rows * cols; ++j) row.set(j, 0, r.rref.at(i, j));
        s.basis_.push_back(unvec(row, rows, cols));
    }
    return s;
}

bool SubspaceBasis::contains(const ExactMatrix& x) const {
    std::vector<ExactMatrix> all = basis_;
    all.push_back(x);
    return rank(stack_vectorized(field_, rows_, cols_, all)) == basis_.size();
}

SubspaceBasis SubspaceBasis::canonical() const { return span(field_, rows_, cols_, basis_); }

ExactMatrix SubspaceBasis::combination(const std::vector<Scalar>& coeffs) const {
    if (coeffs.size() != basis_.size()) throw InvalidInput("combination: coefficient count mismatch");
    ExactMatrix acc(field_, rows_, cols_);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!field_.is_zero(coeffs[i])) acc = acc + basis_[i].scale(coeffs[i]);
    return acc;
}

bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.dim() != b.dim()) return false;
    return a.canonical().basis_ == b.canonical().basis_;
}

SubspaceBasis intersect_subspaces(const SubspaceBasis& u, const SubspaceBasis& v) {
    if (!(u.field() == v.field()) || u.rows() != v.rows() || u.cols() != v.cols()) throw InvalidInput("intersect_subspaces: ambient mismatch");
    const Field& f = u.field();
    const std::size_t N = u.rows() * u.cols();
    ExactMatrix sys(f, N, u.dim() + v.dim());
    for (std::size_t c = 0; c < u.dim(); ++c) {
        auto col = vec(u.basis()[c]);
        for (std::size_t r = 0; r < N; ++r) sys.set(r, c, col.at(r, 0));
    }
    for (std::size_t c = 0; c < v.dim(); ++c) {
        auto col = vec(v.basis()[c]);
        for (std::size_t r = 0; r < N; ++r) sys.set(r, u.dim() + c, f.neg(col.at(r, 0)));
    }
    std::vector<ExactMatrix> gens;
    for (auto& sol : null_space(sys)) {
        std::vector<Scalar> a(u.dim());
        for (std::size_t i = 0; i < u.dim(); ++i) a[i] = sol.at(i, 0);
        gens.push_back(u.combination(a));
    }
    return SubspaceBasis::span(f, u.rows(), u.cols(), gens);
}

// ---- enumeration

std::uint64_t rank_one_idempotent_count(std::size_t n, const Field& f) {
    if (!f.is_finite()) throw InvalidInput("enumeration needs a finite field");
    const std::uint64_t q = f.order();
    return saturating_pow(q, n - 1) * ((saturating_pow(q, n) - 1) / (q - 1));
}

ExactMatrix rank_one_idempotent_at(std::size_t n, const Field& f, std::uint64_t index) {
    if (!f.is_finite()) throw InvalidInput("enumeration needs a finite field");
    if (n == 0 || index >= rank_one_idempotent_count(n, f)) throw InvalidInput("idempotent index out of range");
    const std::uint64_t q = f.order();
    const std::uint64_t xs = saturating_pow(q, n - 1);
    std::uint64_t fi = index / xs, xi = index % xs;
    // normalized f with leading 1 at position l: lex order puts larger l first
    std::size_t lead = n;
    for (std::size_t l = n; l-- > 0;) {
        std::uint64_t group = saturating_pow(q, n - 1 - l);
        if (fi < group) {
            lead = l;
            break;
        }
        fi -= group;
    }
    std::vector<Scalar> fv(n, f.zero()), xv(n, f.zero());
    fv[lead] = f.one();
    for (std::size_t j = n; j-- > lead + 1;) {
        fv[j] = f.element(fi % q);
        fi /= q;
    }
    for (std::size_t j = n; j-- > 0;) {
        if (j == lead) continue;
        xv[j] = f.element(xi % q);
        xi /= q;
    }
    Scalar s = f.one();
    for (std::size_t j = 0; j < n; ++j)
        if (j != lead) s = f.sub(s, f.mul(fv[j], xv[j]));
    xv[lead] = s;
    return ExactMatrix::column(f, xv) * ExactMatrix::column(f, fv).transpose();
}

std::vector<ExactMatrix> enumerate_rank_one_idempotents(std::size_t n, const Field& f) {
    std::vector<ExactMatrix> out;
    const std::uint64_t count = rank_one_idempotent_count(n, f);
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(rank_one_idempotent_at(n, f, i));
    return out;
}

std::uint64_t matrix_count(const Field& f, std::size_t rows, std::size_t cols) {
    if (!f.is_finite()) throw InvalidInput("enumeration needs a finite field");
    return saturating_pow(f.order(), rows * cols);
}

ExactMatrix matrix_at(const Field& f, std::size_t rows, std::size_t cols, std::uint64_t index) {
    if (!f.is_finite()) throw InvalidInput("enumeration needs a finite field");
    const std::uint64_t q = f.order();
    std::vector<Scalar> e(rows * cols);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        e[k] = f.element(index % q);
        index /= q;
    }
    return ExactMatrix(f, rows, cols, std::move(e));
}

}  // namespace preserverlab
