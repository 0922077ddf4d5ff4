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

#include "preserverlab/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "preserverlab/errors.hpp"
#include "preserverlab/parallel.hpp"
#include "preserverlab/rng.hpp"

namespace preserverlab {

bool is_permutation(const Permutation& s) {
    std::vector<bool> seen(s.size() + 1, false);
    for (auto v : s) {
        if (v < 1 || v > s.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation identity_permutation(unsigned k) {
    Permutation p(k);
    std::iota(p.begin(), p.end(), 1u);
    return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw InvalidInput("compose: size mismatch");
    Permutation r(a.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i] - 1];
    return r;
}

Permutation inverse(const Permutation& s) {
    Permutation r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[s[i] - 1] = static_cast<unsigned>(i + 1);
    return r;
}

int sign(const Permutation& s) {
    int inversions = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) inversions += s[i] > s[j];
    return inversions % 2 ? -1 : 1;
}

std::vector<Permutation> all_permutations(unsigned k) {
    std::vector<Permutation> out;
    Permutation p = identity_permutation(k);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::string to_string(const Permutation& s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ']';
    return os.str();
}

// ---- MultilinearPoly

MultilinearPoly::MultilinearPoly(Field f, unsigned k) : field_(std::move(f)), k_(k) {
    if (k < 1 || k > kMaxArity) throw InvalidInput("arity must be between 1 and " + std::to_string(kMaxArity));
}

MultilinearPoly::MultilinearPoly(Field f, unsigned k, const std::vector<std::pair<Permutation, Scalar>>& terms)
    : MultilinearPoly(std::move(f), k) {
    for (auto& [s, c] : terms) add_term(s, c);
}

Scalar MultilinearPoly::coeff(const Permutation& sigma) const {
    auto it = terms_.find(sigma);
    return it == terms_.end() ? field_.zero() : it->second;
}

void MultilinearPoly::add_term(const Permutation& sigma, const Scalar& c) {
    if (sigma.size() != k_ || !is_permutation(sigma)) throw InvalidInput("term " + to_string(sigma) + " is not a permutation of 1.." + std::to_string(k_));
    if (!field_.contains(c)) throw InvalidInput("coefficient does not belong to " + field_.name());
    auto it = terms_.find(sigma);
    Scalar sum = it == terms_.end() ? c : field_.add(it->second, c);
    if (field_.is_zero(sum)) {
        if (it != terms_.end()) terms_.erase(it);
    } else {
        terms_[sigma] = sum;
    }
}

MultilinearPoly MultilinearPoly::scale(const Scalar& s) const {
    MultilinearPoly r(field_, k_);
    for (auto& [sigma, c] : terms_) r.add_term(sigma, field_.mul(c, s));
    return r;
}

MultilinearPoly MultilinearPoly::rename(const Permutation& tau) const {
    if (tau.size() != k_ || !is_permutation(tau)) throw InvalidInput("rename: not a permutation");
    MultilinearPoly r(field_, k_);
    for (auto& [sigma, c] : terms_) r.add_term(compose(tau, sigma), c);
    return r;
}

MultilinearPoly MultilinearPoly::map(const FieldEmbedding& e) const {
    if (!(e.source() == field_)) throw InvalidInput("polynomial map: field mismatch");
    MultilinearPoly r(e.target(), k_);
    for (auto& [sigma, c] : terms_) r.add_term(sigma, e.apply(c));
    return r;
}

MultilinearPoly MultilinearPoly::apply_hom(const FieldHom& phi) const {
    if (!(phi.field() == field_)) throw InvalidInput("polynomial hom: field mismatch");
    MultilinearPoly r(field_, k_);
    for (auto& [sigma, c] : terms_) r.add_term(sigma, phi.apply(c));
    return r;
}

std::string MultilinearPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [sigma, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (!field_.is_one(c)) os << '(' << field_.format(c) << ")*";
        for (auto v : sigma) os << 'x' << v;
    }
    return os.str();
}

bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) {
    return a.field_ == b.field_ && a.k_ == b.k_ && a.terms_ == b.terms_;
}

namespace {
void check_tuple(const MultilinearPoly& p, const std::vector<ExactMatrix>& tuple) {
    if (tuple.size() != p.arity()) throw InvalidInput("expected " + std::to_string(p.arity()) + " matrices, got " + std::to_string(tuple.size()));
    for (auto& m : tuple) {
        if (!(m.field() == p.field())) throw InvalidInput("tuple matrix over " + m.field().name() + ", polynomial over " + p.field().name());
        if (!m.is_square() || m.rows() != tuple[0].rows()) throw InvalidInput("tuple matrices must be square of equal size");
    }
}
}  // namespace

ExactMatrix evaluate(const MultilinearPoly& p, const std::vector<ExactMatrix>& tuple) {
    check_tuple(p, tuple);
    const std::size_t n = tuple.empty() ? 0 : tuple[0].rows();
    ExactMatrix acc(p.field(), n, n);
    for (auto& [sigma, c] : p.terms()) {
        ExactMatrix prod = tuple[sigma[0] - 1];
        for (std::size_t i = 1; i < sigma.size(); ++i) prod = prod * tuple[sigma[i] - 1];
        acc = acc + prod.scale(c);
    }
    return acc;
}

bool is_zero_tuple(const MultilinearPoly& p, const std::vector<ExactMatrix>& tuple) { return evaluate(p, tuple).is_zero(); }

// ---- CompiledPoly

CompiledPoly::CompiledPoly(const MultilinearPoly& p) : ops_(p.field()), k_(p.arity()) {
    for (auto& [sigma, c] : p.terms()) terms_.push_back({sigma, p.field().index_of(c)});
}

void CompiledPoly::walk(const std::vector<CodeMatrix>& tuple, std::size_t lo, std::size_t hi, unsigned depth, const CodeMatrix& prefix,
                        CodeMatrix& acc) const {
    if (depth == k_) {
        ops_.add_scaled(acc, prefix, terms_[lo].coeff);
        return;
    }
    std::size_t i = lo;
    CodeMatrix next;
    while (i < hi) {
        const unsigned var = terms_[i].sigma[depth];
        std::size_t j = i;
        while (j < hi && terms_[j].sigma[depth] == var) ++j;
        const CodeMatrix& m = tuple[var - 1];
        if (depth == 0)
            walk(tuple, i, j, 1, m, acc);
        else {
            ops_.mul(prefix, m, next);
            if (!next.is_zero()) walk(tuple, i, j, depth + 1, next, acc);
        }
        i = j;
    }
}

CodeMatrix CompiledPoly::evaluate(const std::vector<CodeMatrix>& tuple) const {
    if (tuple.size() != k_) throw InvalidInput("tuple arity mismatch");
    CodeMatrix acc = ops_.zero(tuple[0].n);
    if (!terms_.empty()) walk(tuple, 0, terms_.size(), 0, CodeMatrix{}, acc);
    return acc;
}

bool CompiledPoly::is_zero_tuple(const std::vector<CodeMatrix>& tuple) const { return evaluate(tuple).is_zero(); }

// ---- coefficient data

Scalar coeff_sum(const MultilinearPoly& p) {
    Scalar s = p.field().zero();
    for (auto& [sigma, c] : p.terms()) s = p.field().add(s, c);
    return s;
}

PolyClass classify(const MultilinearPoly& p) { return p.field().is_zero(coeff_sum(p)) ? PolyClass::derogatory : PolyClass::generic; }

std::string to_string(PolyClass c) { return c == PolyClass::generic ? "generic" : "derogatory"; }

CofMatrix cof_matrix(const MultilinearPoly& p) {
    const Field& f = p.field();
    const unsigned k = p.arity();
    ExactMatrix m(f, k, k);
    for (auto& [sigma, c] : p.terms())
        for (unsigned i = 0; i < k; ++i) m.set(i, sigma[i] - 1, f.add(m.at(i, sigma[i] - 1), c));
    bool inv = !f.is_zero(det(m));
    return {m, inv};
}

NormalizedPoly NormalizedPoly::map(const FieldEmbedding& e) const {
    NormalizedPoly r = *this;
    r.original = original.map(e);
    r.base = base.map(e);
    r.scale = e.apply(scale);
    r.xi = e.apply(xi);
    r.xi_j0k = e.apply(xi_j0k);
    for (auto& v : r.beta) v = e.apply(v);
    for (auto& v : r.tilde_beta) v = e.apply(v);
    for (auto& v : r.hat_beta) v = e.apply(v);
    return r;
}

NormalizedPoly normalize(const MultilinearPoly& p) {
    if (classify(p) != PolyClass::generic) throw InvalidInput("normalize needs a nonzero coefficient sum");
    const Field& f = p.field();
    const unsigned k = p.arity();
    NormalizedPoly np;
    np.original = p;
    auto cof = cof_matrix(p).entries;
    np.i0 = 0;
    for (unsigned j = 0; j < k; ++j)
        if (!f.is_zero(cof.at(0, j))) {
            np.i0 = j + 1;
            break;
        }
    np.scale = cof.at(0, np.i0 - 1);
    Permutation tau = identity_permutation(k);
    std::swap(tau[0], tau[np.i0 - 1]);
    np.base = p.rename(tau).scale(f.inv(np.scale));

    auto bc = cof_matrix(np.base).entries;
    Scalar total = f.zero();
    for (unsigned i = 0; i < k; ++i) {
        np.beta.push_back(bc.at(i, 0));
        total = f.add(total, bc.at(i, 0));
    }
    np.xi = f.sub(total, f.one());
    np.j0 = 0;
    for (unsigned j = 0; j < k; ++j)
        if (!f.is_zero(bc.at(k - 1, j))) {
            np.j0 = j + 1;
            break;
        }
    for (unsigned i = 0; i < k; ++i) np.tilde_beta.push_back(bc.at(i, np.j0 - 1));
    np.xi_j0k = np.tilde_beta[k - 1];
    Scalar inv = f.inv(np.xi_j0k);
    for (auto& t : np.tilde_beta) np.hat_beta.push_back(f.mul(t, inv));
    return np;
}

TauIndex find_tau_index(const NormalizedPoly& np) {
    const Field& f = np.field();
    const unsigned k = np.arity();
    for (unsigned j = 2; j <= k; ++j) {
        Scalar tau = f.zero();
        for (auto& [sigma, c] : np.base.terms())
            if (sigma[0] == 1 && sigma[j - 1] == 2) tau = f.add(tau, c);
        if (!f.is_zero(tau)) return {j, tau};
    }
    throw InvalidInput("no tau index: the polynomial is not normalized");
}

// ---- admissible sets

std::vector<AdmissibleWitness> all_admissible_witnesses(unsigned k, const std::vector<Permutation>& xi) {
    if (xi.empty()) throw InvalidInput("admissible set must be nonempty");
    for (auto& s : xi) {
        if (s.size() != k || !is_permutation(s)) throw InvalidInput(to_string(s) + " is not a permutation of 1.." + std::to_string(k));
        if (s == identity_permutation(k)) throw InvalidInput("admissible sets exclude the identity");
    }
    std::vector<AdmissibleWitness> out;
    auto first_moved = [](const Permutation& s) {
        unsigned i = 0;
        while (s[i] == i + 1) ++i;
        return i + 1;
    };
    const unsigned t = first_moved(xi[0]);
    for (auto& s : xi)
        if (first_moved(s) != t) return out;
    for (unsigned w = 1; w < k; ++w) {
        const unsigned v = xi[0][w - 1], u = xi[0][w];
        if (u >= v) continue;
        bool shared = std::all_of(xi.begin(), xi.end(), [&](const Permutation& s) { return s[w - 1] == v && s[w] == u; });
        if (shared) out.push_back({t, w, u, v});
    }
    return out;
}

AdmissibleSet validate_admissible(unsigned k, const std::vector<Permutation>& xi) {
    auto all = all_admissible_witnesses(k, xi);
    if (all.empty()) throw InvalidInput("no (t, w, u, v) witnesses: the set is not admissible");
    const auto& w = all.front();
    return {k, xi, w.t, w.w, w.u, w.v};
}

MultilinearPoly standard_polynomial(const Field& f, unsigned m) {
    if (m < 2) throw InvalidInput("standard polynomial needs m >= 2");
    MultilinearPoly p(f, m);
    for (auto& s : all_permutations(m)) p.add_term(s, f.from_int(sign(s)));
    return p;
}

// ---- identity testing

std::string to_string(IdentityOutcome o) {
    switch (o) {
        case IdentityOutcome::identity:
            return "identity";
        case IdentityOutcome::not_identity:
            return "not_identity";
        case IdentityOutcome::no_witness_found:
            return "no_witness_found";
    }
    return "?";
}

IdentityVerdict is_identity_on(const MultilinearPoly& p, std::size_t n, const SearchPlan& plan) {
    const Field& f = p.field();
    if (!f.is_finite()) throw InvalidInput("identity testing needs a finite field");
    if (n == 0) throw InvalidInput("matrix size must be positive");
    const unsigned k = p.arity();
    CompiledPoly cp(p);
    const CodeOps& ops = cp.ops();
    IdentityVerdict v;
    if (plan.mode == SearchMode::exhaustive) {
        const std::uint64_t per = matrix_count(f, n, n);
        const std::uint64_t total = saturating_pow(per, k);
        require_budget(total, std::uint64_t{1} << 24, "identity test tuples");
        auto decode = [&](std::uint64_t idx, std::vector<CodeMatrix>& tuple) {
            tuple.resize(k);
            for (unsigned s = k; s-- > 0;) {
                ops.at_index(n, idx % per, tuple[s]);
                idx /= per;
            }
        };
        std::uint64_t hit = parallel_first_index(total, plan.jobs, [&](std::uint64_t idx) {
            std::vector<CodeMatrix> tuple;
            decode(idx, tuple);
            return !cp.is_zero_tuple(tuple);
        });
        if (hit == kNoIndex) {
            v.outcome = IdentityOutcome::identity;
            v.checked = total;
        } else {
            std::vector<CodeMatrix> tuple;
            decode(hit, tuple);
            v.outcome = IdentityOutcome::not_identity;
            v.witness.emplace();
            for (auto& m : tuple) v.witness->push_back(ops.to(m));
            v.checked = hit + 1;
        }
        return v;
    }
    Rng rng(plan.seed);
    std::vector<CodeMatrix> tuple(k);
    for (std::uint64_t s = 0; s < plan.samples; ++s) {
        for (auto& m : tuple) {
            m.n = n;
            m.e.resize(n * n);
            for (auto& x : m.e) x = rng.below(f.order());
        }
        ++v.checked;
        if (!cp.is_zero_tuple(tuple)) {
            v.outcome = IdentityOutcome::not_identity;
            v.witness.emplace();
            for (auto& m : tuple) v.witness->push_back(ops.to(m));
            return v;
        }
    }
    v.outcome = IdentityOutcome::no_witness_found;
    return v;
}

}  // namespace preserverlab
