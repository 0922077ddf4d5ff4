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

#include "preserverlab/elemop.hpp"

#include "preserverlab/errors.hpp"

namespace preserverlab {

ElementaryOperator::ElementaryOperator(std::vector<Scalar> coeffs, ExactMatrix L, ExactMatrix M)
    : c_(std::move(coeffs)), L_(std::move(L)), M_(std::move(M)) {
    if (c_.empty()) throw InvalidInput("elementary operator needs at least one coefficient");
    if (!L_.is_square() || !M_.is_square()) throw InvalidInput("L and M must be square");
    if (!(L_.field() == M_.field())) throw InvalidInput("L and M must share a field");
    for (auto& c : c_)
        if (!L_.field().contains(c)) throw InvalidInput("operator coefficient does not belong to " + L_.field().name());
}

ElementaryOperator ElementaryOperator::right(const ExactMatrix& A, const NormalizedPoly& np) {
    if (!(A.field() == np.field())) throw InvalidInput("matrix and polynomial fields differ");
    const std::size_t k = np.arity();
    std::vector<Scalar> c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = np.beta[k - 1 - j];
    return ElementaryOperator(std::move(c), A, A);
}

ElementaryOperator ElementaryOperator::left(const ExactMatrix& A, const NormalizedPoly& np) {
    if (!(A.field() == np.field())) throw InvalidInput("matrix and polynomial fields differ");
    const std::size_t k = np.arity();
    std::vector<Scalar> c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = np.hat_beta[k - 1 - j];
    return ElementaryOperator(std::move(c), A, A);
}

ExactMatrix ElementaryOperator::apply(const ExactMatrix& X) const {
    const Field& f = field();
    const std::size_t t = degree();
    if (!(X.field() == f) || X.rows() != L_.rows() || X.cols() != M_.rows()) throw InvalidInput("operator argument has the wrong shape or field");
    ExactMatrix acc(f, X.rows(), X.cols());
    std::vector<ExactMatrix> lp{ExactMatrix::identity(f, X.rows())};
    for (std::size_t i = 1; i <= t; ++i) lp.push_back(lp.back() * L_);
    ExactMatrix right = X;
    for (std::size_t j = 0; j <= t; ++j) {
        if (!f.is_zero(c_[j])) acc = acc + (lp[t - j] * right).scale(c_[j]);
        right = right * M_;
    }
    return acc;
}

ExactMatrix ElementaryOperator::kron_matrix() const {
    const Field& f = field();
    const std::size_t m = L_.rows(), n = M_.rows(), t = degree();
    std::vector<ExactMatrix> lp{ExactMatrix::identity(f, m)};
    for (std::size_t i = 1; i <= t; ++i) lp.push_back(lp.back() * L_);
    ExactMatrix acc(f, m * n, m * n);
    ExactMatrix mp = ExactMatrix::identity(f, n);
    for (std::size_t j = 0; j <= t; ++j) {
        if (!f.is_zero(c_[j])) acc = acc + kron(mp.transpose(), lp[t - j]).scale(c_[j]);
        mp = mp * M_;
    }
    return acc;
}

SubspaceBasis ElementaryOperator::kernel() const {
    const std::size_t m = L_.rows(), n = M_.rows();
    std::vector<ExactMatrix> gens;
    for (auto& v : null_space(kron_matrix())) gens.push_back(unvec(v, m, n));
    return SubspaceBasis::span(field(), m, n, gens);
}

OmegaSpace omega_right(const ExactMatrix& A, const NormalizedPoly& np) {
    return {OmegaSpace::Side::right, A, ElementaryOperator::right(A, np).kernel()};
}

OmegaSpace omega_left(const ExactMatrix& A, const NormalizedPoly& np) {
    return {OmegaSpace::Side::left, A, ElementaryOperator::left(A, np).kernel()};
}

SubspaceBasis omega_intersection(const ExactMatrix& A, const NormalizedPoly& np) {
    return intersect_subspaces(omega_right(A, np).basis, omega_left(A, np).basis);
}

Scalar spectrum_value(const Field& f, const std::vector<Scalar>& coeffs, const Scalar& lambda, const Scalar& mu) {
    const std::size_t t = coeffs.size() - 1;
    Scalar acc = f.zero();
    for (std::size_t j = 0; j <= t; ++j) acc = f.add(acc, f.mul(coeffs[j], f.mul(f.pow(lambda, std::uint64_t(t - j)), f.pow(mu, std::uint64_t(j)))));
    return acc;
}

std::optional<Scalar> single_eigenvalue(const ExactMatrix& A) {
    const Field& f = A.field();
    UniPoly cp = char_poly(A);
    const std::size_t n = A.rows();
    // (x - lambda)^n has x^{n-1} coefficient -n lambda; avoid dividing by n in small characteristic
    std::vector<Scalar> rs = roots(cp);
    if (rs.size() != 1) return std::nullopt;
    UniPoly lin(f, {f.neg(rs[0]), f.one()});
    UniPoly pw = UniPoly::constant(f, f.one());
    for (std::size_t i = 0; i < n; ++i) pw = pw * lin;
    if (!(pw == cp)) return std::nullopt;
    return rs[0];
}

Scalar spectrum_single_eigenvalue(const ElementaryOperator& op) {
    auto lambda = single_eigenvalue(op.L());
    auto mu = single_eigenvalue(op.M());
    if (!lambda || !mu) throw InvalidInput("L and M must each have a single eigenvalue in " + op.field().name());
    return spectrum_value(op.field(), op.coeffs(), *lambda, *mu);
}

namespace {
Scalar bivariate(const Field& f, const std::vector<Scalar>& c, const Scalar& lambda, const Scalar& mu) {
    const std::size_t k = c.size();
    Scalar acc = f.zero();
    for (std::size_t i = 1; i <= k; ++i)
        acc = f.add(acc, f.mul(c[i - 1], f.mul(f.pow(lambda, std::uint64_t(i - 1)), f.pow(mu, std::uint64_t(k - i)))));
    return acc;
}
}  // namespace

Scalar p_bullet(const NormalizedPoly& np, const Scalar& lambda, const Scalar& mu) { return bivariate(np.field(), np.beta, lambda, mu); }

Scalar p_Abullet(const NormalizedPoly& np, const Scalar& lambda, const Scalar& mu) {
    return bivariate(np.field(), np.tilde_beta, lambda, mu);
}

SubspaceBasis anticommutant(const ExactMatrix& A) {
    const Field& f = A.field();
    if (f.characteristic() == 2) throw InvalidInput("anticommutant needs characteristic != 2");
    if (!A.is_square()) throw InvalidInput("anticommutant needs a square matrix");
    return ElementaryOperator({f.one(), f.one()}, A, A).kernel();
}

}  // namespace preserverlab
