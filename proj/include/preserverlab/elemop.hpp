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

#include <vector>

#include "preserverlab/matrix.hpp"
#include "preserverlab/multipoly.hpp"

namespace preserverlab {

/// X -> sum_{j=0}^{t} c_j L^{t-j} X M^j on m x n matrices (L is m x m, M is n x n).
class ElementaryOperator {
   public:
    ElementaryOperator(std::vector<Scalar> coeffs, ExactMatrix L, ExactMatrix M);

    /// X -> X A^{k-1} + beta_2 A X A^{k-2} + ... + beta_k A^{k-1} X; kernel is the right annihilator space.
    static ElementaryOperator right(const ExactMatrix& A, const NormalizedPoly& np);
    /// X -> A^{k-1} X + hat_beta_{k-1} A^{k-2} X A + ... + hat_beta_1 X A^{k-1}.
    static ElementaryOperator left(const ExactMatrix& A, const NormalizedPoly& np);

    const std::vector<Scalar>& coeffs() const { return c_; }
    std::size_t degree() const { return c_.size() - 1; }
    const ExactMatrix& L() const { return L_; }
    const ExactMatrix& M() const { return M_; }
    const Field& field() const { return L_.field(); }

    ExactMatrix apply(const ExactMatrix& X) const;
    /// sum_j c_j (M^j)^T kron L^{t-j} (mn x mn), acting on column-stacked vec(X).
    ExactMatrix kron_matrix() const;
    /// Canonical basis of the kernel.
    SubspaceBasis kernel() const;

   private:
    std::vector<Scalar> c_;
    ExactMatrix L_, M_;
};

struct OmegaSpace {
    enum class Side { right, left };
    Side side = Side::right;
    ExactMatrix A;
    SubspaceBasis basis;
};

/// {X : p(X, A, ..., A) = 0}.
OmegaSpace omega_right(const ExactMatrix& A, const NormalizedPoly& np);
/// {X : p(A, ..., X in slot j0, ..., A) = 0}.
OmegaSpace omega_left(const ExactMatrix& A, const NormalizedPoly& np);
SubspaceBasis omega_intersection(const ExactMatrix& A, const NormalizedPoly& np);

/// sum_j c_j lambda^{t-j} mu^j.
Scalar spectrum_value(const Field& f, const std::vector<Scalar>& coeffs, const Scalar& lambda, const Scalar& mu);
/// The single eigenvalue of the operator when L and M each have a single
/// eigenvalue in the working field; throws InvalidInput otherwise.
Scalar spectrum_single_eigenvalue(const ElementaryOperator& op);
/// The eigenvalue lambda when char_poly(A) = (x - lambda)^n over A's field.
std::optional<Scalar> single_eigenvalue(const ExactMatrix& A);

/// sum_i beta_i lambda^{i-1} mu^{k-i}
Scalar p_bullet(const NormalizedPoly& np, const Scalar& lambda, const Scalar& mu);
/// sum_i tilde_beta_i lambda^{i-1} mu^{k-i}
Scalar p_Abullet(const NormalizedPoly& np, const Scalar& lambda, const Scalar& mu);

/// {X : XA + AX = 0}; characteristic 2 is rejected.
SubspaceBasis anticommutant(const ExactMatrix& A);

}  // namespace preserverlab
