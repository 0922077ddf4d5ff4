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

#include "preserverlab/preserver.hpp"

#include <algorithm>

#include "preserverlab/codemat.hpp"
#include "preserverlab/elemop.hpp"
#include "preserverlab/errors.hpp"
#include "preserverlab/omegaclass.hpp"
#include "preserverlab/parallel.hpp"
#include "preserverlab/rng.hpp"

namespace preserverlab {

std::string matrix_key(const ExactMatrix& a) { return a.str(); }

std::string to_string(EntryTweak t) {
    switch (t) {
        case EntryTweak::none:
            return "none";
        case EntryTweak::add_a12_identity:
            return "add_a12_identity";
        case EntryTweak::subtract_trace_over_n:
            return "subtract_trace_over_n";
    }
    return "none";
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::exhaustive:
            return "exhaustive";
        case Strategy::witnesses:
            return "witnesses";
        case Strategy::sample:
            return "sample";
    }
    return "witnesses";
}

PreserverSpec PreserverSpec::identity(const Field& f, std::size_t n) {
    if (n == 0) throw InvalidInput("matrix size must be positive");
    PreserverSpec s;
    s.n = n;
    s.field = f;
    s.T = ExactMatrix::identity(f, n);
    s.T_inv = s.T;
    s.phi = FieldHom::identity(f);
    s.gamma = f.one();
    return s;
}

PreserverSpec PreserverSpec::from_table(const Field& f, std::size_t n, const std::vector<std::pair<ExactMatrix, ExactMatrix>>& entries) {
    if (!f.is_finite()) throw InvalidInput("table specs need a finite field");
    PreserverSpec s = identity(f, n);
    s.mode = Mode::table;
    for (auto& [from, to] : entries) {
        if (!(from.field() == f) || !(to.field() == f) || from.rows() != n || from.cols() != n || to.rows() != n || to.cols() != n)
            throw InvalidInput("table entries must be n x n matrices over " + f.name());
        if (!s.table.emplace(matrix_key(from), to).second) throw InvalidInput("table lists a matrix twice: " + from.str());
    }
    return s;
}

void PreserverSpec::set_similarity(const ExactMatrix& t) {
    if (!t.is_square() || t.rows() != n || !(t.field() == field)) throw InvalidInput("similarity must be n x n over " + field.name());
    auto inv = inverse(t);
    if (!inv) throw InvalidInput("similarity matrix is singular");
    T = t;
    T_inv = *inv;
}

void PreserverSpec::validate() const {
    if (n == 0) throw InvalidInput("matrix size must be positive");
    if (mode == Mode::table) {
        if (!field.is_finite()) throw InvalidInput("table specs need a finite field");
        return;
    }
    if (!(T.field() == field) || T.rows() != n || !(T * T_inv == ExactMatrix::identity(field, n)))
        throw InvalidInput("similarity and its inverse do not match");
    if (!(phi.field() == field)) throw InvalidInput("field hom acts on " + phi.field().name() + ", not " + field.name());
    if (!field.contains(gamma) || field.is_zero(gamma)) throw InvalidInput("gamma must be a nonzero scalar");
    for (auto& [k, g] : gamma_table)
        if (!field.contains(g) || field.is_zero(g)) throw InvalidInput("gamma table value at " + k + " must be nonzero");
    for (auto& [k, m] : shift_table)
        if (!field.contains(m)) throw InvalidInput("shift table value at " + k + " is not in " + field.name());
    if (tweak == EntryTweak::add_a12_identity && n < 2) throw InvalidInput("add_a12_identity needs n >= 2");
    if (tweak == EntryTweak::subtract_trace_over_n && field.is_zero(field.from_int(static_cast<long long>(n))))
        throw InvalidInput("subtract_trace_over_n needs n invertible in " + field.name());
}

ExactMatrix apply(const PreserverSpec& spec, const ExactMatrix& a) {
    const Field& f = spec.field;
    if (!(a.field() == f) || a.rows() != spec.n || a.cols() != spec.n)
        throw InvalidInput("argument must be " + std::to_string(spec.n) + "x" + std::to_string(spec.n) + " over " + f.name());
    if (spec.mode == PreserverSpec::Mode::table) {
        auto it = spec.table.find(matrix_key(a));
        return it == spec.table.end() ? a : it->second;
    }
    const std::size_t n = spec.n;
    ExactMatrix x = a;
    switch (spec.tweak) {
        case EntryTweak::none:
            break;
        case EntryTweak::add_a12_identity:
            x = x + ExactMatrix::scalar(f, n, a.at(0, 1));
            break;
        case EntryTweak::subtract_trace_over_n:
            x = x - ExactMatrix::scalar(f, n, f.div(a.trace(), f.from_int(static_cast<long long>(n))));
            break;
    }
    if (!spec.phi.is_identity()) x = apply_hom_entrywise(spec.phi, x);
    if (spec.transpose) x = x.transpose();
    x = spec.T * x * spec.T_inv;
    std::string key;
    if (!spec.gamma_table.empty() || !spec.shift_table.empty()) key = matrix_key(a);
    Scalar g = spec.gamma;
    if (!spec.gamma_table.empty()) {
        auto it = spec.gamma_table.find(key);
        if (it != spec.gamma_table.end()) g = it->second;
    }
    if (!f.is_one(g)) x = x.scale(g);
    if (!spec.shift_table.empty()) {
        auto it = spec.shift_table.find(key);
        if (it != spec.shift_table.end()) x = x + ExactMatrix::scalar(f, n, it->second);
    }
    return x;
}

Tuple apply_tuple(const PreserverSpec& spec, const Tuple& t) {
    Tuple out;
    out.reserve(t.size());
    for (auto& a : t) out.push_back(apply(spec, a));
    return out;
}

std::vector<ExactMatrix> probe_matrices(const Field& f, std::size_t n) {
    std::vector<ExactMatrix> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.push_back(ExactMatrix::unit(f, n, i, j));
    out.push_back(ExactMatrix::identity(f, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) out.push_back(ExactMatrix::identity(f, n) + ExactMatrix::unit(f, n, i, j));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) out.push_back(ExactMatrix::unit(f, n, i, i) + ExactMatrix::unit(f, n, i, j));
    return out;
}

namespace {

constexpr std::uint64_t kTupleBudget = std::uint64_t(1) << 24;
constexpr std::uint64_t kIdempotentCap = 64;
constexpr std::uint64_t kProbeTupleCap = std::uint64_t(1) << 16;

std::vector<ExactMatrix> idempotent_set(const Field& f, std::size_t n) {
    if (f.is_finite() && rank_one_idempotent_count(n, f) <= kIdempotentCap) return enumerate_rank_one_idempotents(n, f);
    std::vector<ExactMatrix> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(ExactMatrix::unit(f, n, i, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) out.push_back(ExactMatrix::unit(f, n, i, i) + ExactMatrix::unit(f, n, i, j));
    return out;
}

Scalar random_scalar(const Field& f, Rng& rng) {
    if (f.is_finite()) return f.element(rng.below(f.order()));
    long long re = static_cast<long long>(rng.below(5)) - 2;
    if (f.kind() == FieldKind::rationals) return f.from_int(re);
    long long im = static_cast<long long>(rng.below(5)) - 2;
    return f.gaussian(mpq_class(static_cast<long>(re)), mpq_class(static_cast<long>(im)));
}

ExactMatrix random_matrix(const Field& f, std::size_t n, Rng& rng) {
    std::vector<Scalar> e;
    e.reserve(n * n);
    for (std::size_t i = 0; i < n * n; ++i) e.push_back(random_scalar(f, rng));
    return ExactMatrix(f, n, n, std::move(e));
}

// Zero tests for p1 on a tuple and p2 on its image, through code arithmetic on finite fields.
class PairTester {
   public:
    PairTester(const MultilinearPoly& p1, const MultilinearPoly& p2, const PreserverSpec& spec, bool strong)
        : p1_(p1), p2_(p2), spec_(spec), strong_(strong) {
        if (p1.field().is_finite()) {
            c1_.emplace(p1);
            c2_.emplace(p2);
        }
    }
    bool violates(const Tuple& t, const Tuple& img) const {
        bool z1, z2;
        if (c1_) {
            const CodeOps& ops = c1_->ops();
            std::vector<CodeMatrix> a, b;
            for (auto& m : t) a.push_back(ops.from(m));
            for (auto& m : img) b.push_back(ops.from(m));
            z1 = c1_->is_zero_tuple(a);
            z2 = c2_->is_zero_tuple(b);
        } else {
            z1 = is_zero_tuple(p1_, t);
            z2 = is_zero_tuple(p2_, img);
        }
        return strong_ ? z1 != z2 : (z1 && !z2);
    }
    bool violates(const Tuple& t) const { return violates(t, apply_tuple(spec_, t)); }
    void record(Verdict& v, const Tuple& t) const {
        v.holds = false;
        v.witness = t;
        v.image = apply_tuple(spec_, t);
        v.value = evaluate(p1_, t);
        v.image_value = evaluate(p2_, *v.image);
    }

   private:
    const MultilinearPoly& p1_;
    const MultilinearPoly& p2_;
    const PreserverSpec& spec_;
    bool strong_;
    std::optional<CompiledPoly> c1_, c2_;
};

void check_spec_inputs(const MultilinearPoly& p1, const MultilinearPoly& p2, const PreserverSpec& spec) {
    spec.validate();
    if (!(p1.field() == spec.field) || !(p2.field() == spec.field)) throw InvalidInput("polynomials and spec use different fields");
    if (p1.arity() != p2.arity()) throw InvalidInput("p1 and p2 must have the same arity");
}

}  // namespace

std::vector<LabelledTuple> structured_witness_tuples(const MultilinearPoly& p, std::size_t n) {
    const Field& f = p.field();
    const unsigned k = p.arity();
    std::vector<LabelledTuple> out;
    if (k < 2 || n == 0) return out;
    const ExactMatrix id = ExactMatrix::identity(f, n);
    const auto probes = probe_matrices(f, n);
    const auto idems = idempotent_set(f, n);

    unsigned w = 1;
    if (classify(p) == PolyClass::derogatory) {
        Permutation e = identity_permutation(k);
        std::vector<Permutation> xi;
        for (auto& s : all_permutations(k))
            if (s != e && !f.is_zero(p.coeff(s))) xi.push_back(s);
        if (!f.is_zero(p.coeff(e)) && !xi.empty()) {
            auto ws = all_admissible_witnesses(k, xi);
            if (!ws.empty()) {
                const unsigned t = ws.front().t;
                w = ws.front().w;
                for (auto& F : idems) {
                    Tuple tup(k, F);
                    for (unsigned s = 0; s + 1 < t; ++s) tup[s] = id;
                    tup[t - 1] = id;
                    out.push_back({"admissible_t", tup});
                }
                for (auto& X : probes) {
                    Tuple tup(k, id);
                    tup[t - 1] = X;
                    out.push_back({"admissible_t", tup});
                }
            }
        }
    }
    for (auto& X : probes)
        for (auto& Y : probes) {
            if (!(X * Y == Y * X)) continue;
            Tuple tup(k, id);
            tup[w - 1] = X;
            tup[w] = Y;
            out.push_back({"commuting", tup});
        }
    for (auto& P : idems)
        for (auto& Q : idems) {
            if (!is_orthogonal_pair(P, Q)) continue;
            for (unsigned s = 0; s < k; ++s) {
                Tuple tup(k, Q);
                tup[s] = P;
                out.push_back({"orthogonal", tup});
            }
        }
    if (classify(p) == PolyClass::generic) {
        auto np = normalize(p);
        const unsigned j0p = find_tau_index(np).j0_prime;
        // slots of the normalized polynomial sit at (1 i0) in p
        auto slot = [&](unsigned s) { return s == 1 ? np.i0 : (s == np.i0 ? 1u : s); };
        for (auto& P : idems)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    ExactMatrix N = ExactMatrix::unit(f, n, i, j);
                    if (!(P * N).is_zero() || !(N * P).is_zero()) continue;
                    for (auto& A : probes) {
                        Tuple tup(k, P);
                        tup[slot(1) - 1] = N;
                        tup[slot(j0p) - 1] = A;
                        out.push_back({"nilpotent_pair", tup});
                    }
                }
    }
    return out;
}

Verdict check_maps_zeros(const MultilinearPoly& p1, const MultilinearPoly& p2, const PreserverSpec& spec, bool strong,
                         const StrategyPlan& plan) {
    check_spec_inputs(p1, p2, spec);
    const Field& f = spec.field;
    const std::size_t n = spec.n;
    const unsigned k = p1.arity();
    PairTester tester(p1, p2, spec, strong);
    Verdict v;
    v.strategy = plan.kind;
    v.strong = strong;
    v.seed = plan.seed;

    if (plan.kind == Strategy::exhaustive) {
        if (!f.is_finite()) throw InvalidInput("exhaustive checks need a finite field");
        const std::uint64_t per = matrix_count(f, n, n);
        const std::uint64_t total = saturating_pow(per, k);
        require_budget(total, kTupleBudget, "preserver check tuples");
        CompiledPoly c1(p1), c2(p2);
        const CodeOps& ops = c1.ops();
        std::vector<CodeMatrix> src(per), img(per);
        for (std::uint64_t i = 0; i < per; ++i) {
            ExactMatrix m = matrix_at(f, n, n, i);
            src[i] = ops.from(m);
            img[i] = ops.from(apply(spec, m));
        }
        std::uint64_t hit = parallel_first_index(total, plan.jobs, [&](std::uint64_t idx) {
            std::vector<CodeMatrix> a(k), b(k);
            for (unsigned s = k; s-- > 0;) {
                a[s] = src[idx % per];
                b[s] = img[idx % per];
                idx /= per;
            }
            bool z1 = c1.is_zero_tuple(a), z2 = c2.is_zero_tuple(b);
            return strong ? z1 != z2 : (z1 && !z2);
        });
        if (hit == kNoIndex) {
            v.checked = total;
            return v;
        }
        v.checked = hit + 1;
        Tuple t(k);
        for (unsigned s = k; s-- > 0;) {
            t[s] = matrix_at(f, n, n, hit % per);
            hit /= per;
        }
        tester.record(v, t);
        return v;
    }

    if (plan.kind == Strategy::sample) {
        Rng rng(plan.seed);
        for (std::uint64_t s = 0; s < plan.samples; ++s) {
            // half of the slots come from span{Id, R} so that commuting tuples turn up
            ExactMatrix R = random_matrix(f, n, rng);
            Tuple t;
            for (unsigned i = 0; i < k; ++i) {
                if (rng.below(2))
                    t.push_back(random_matrix(f, n, rng));
                else
                    t.push_back(R.scale(random_scalar(f, rng)) + ExactMatrix::scalar(f, n, random_scalar(f, rng)));
            }
            ++v.checked;
            if (tester.violates(t)) {
                tester.record(v, t);
                return v;
            }
        }
        return v;
    }

    auto try_tuple = [&](const Tuple& t) {
        ++v.checked;
        if (!tester.violates(t)) return false;
        tester.record(v, t);
        return true;
    };
    for (auto& t : plan.candidates) {
        if (t.size() != k) throw InvalidInput("candidate tuple has the wrong arity");
        if (try_tuple(t)) return v;
    }
    auto probes = probe_matrices(f, n);
    if (saturating_pow(probes.size(), k) > kProbeTupleCap) probes.resize(n * n + 1);
    const std::uint64_t combos = saturating_pow(probes.size(), k);
    if (combos <= kProbeTupleCap) {
        std::vector<ExactMatrix> imgs;
        for (auto& m : probes) imgs.push_back(apply(spec, m));
        for (std::uint64_t idx = 0; idx < combos; ++idx) {
            Tuple t(k), ti(k);
            std::uint64_t x = idx;
            for (unsigned s = k; s-- > 0;) {
                t[s] = probes[x % probes.size()];
                ti[s] = imgs[x % probes.size()];
                x /= probes.size();
            }
            ++v.checked;
            if (tester.violates(t, ti)) {
                tester.record(v, t);
                return v;
            }
        }
    }
    for (auto& lt : structured_witness_tuples(p1, n))
        if (try_tuple(lt.tuple)) return v;
    return v;
}

Verdict check_commutativity_preservation(const PreserverSpec& spec, const StrategyPlan& plan, bool strong) {
    MultilinearPoly c(spec.field, 2);
    c.add_term({1, 2}, spec.field.one());
    c.add_term({2, 1}, spec.field.neg(spec.field.one()));
    return check_maps_zeros(c, c, spec, strong, plan);
}

Verdict check_zero_kernel(const PreserverSpec& spec, const StrategyPlan& plan) {
    spec.validate();
    const Field& f = spec.field;
    const std::size_t n = spec.n;
    Verdict v;
    v.strategy = plan.kind;
    v.seed = plan.seed;
    auto record = [&](const ExactMatrix& a) {
        v.holds = false;
        v.witness = Tuple{a};
        v.image = Tuple{apply(spec, a)};
    };
    if (plan.kind == Strategy::exhaustive) {
        if (!f.is_finite()) throw InvalidInput("exhaustive checks need a finite field");
        const std::uint64_t per = matrix_count(f, n, n);
        require_budget(per, std::uint64_t(1) << 20, "zero kernel matrices");
        std::uint64_t hit = parallel_first_index(per - 1, plan.jobs, [&](std::uint64_t idx) {
            return apply(spec, matrix_at(f, n, n, idx + 1)).is_zero();
        });
        if (hit == kNoIndex) {
            v.checked = per - 1;
            return v;
        }
        v.checked = hit + 1;
        record(matrix_at(f, n, n, hit + 1));
        return v;
    }
    std::vector<ExactMatrix> cands;
    if (plan.kind == Strategy::witnesses) {
        cands = probe_matrices(f, n);
        if (f.is_finite())
            for (std::uint64_t c = 2; c < f.order(); ++c) cands.push_back(ExactMatrix::scalar(f, n, f.element(c)));
        for (auto& P : idempotent_set(f, n)) cands.push_back(P);
    } else {
        Rng rng(plan.seed);
        for (std::uint64_t s = 0; s < plan.samples; ++s) cands.push_back(random_matrix(f, n, rng));
    }
    for (auto& a : cands) {
        if (a.is_zero()) continue;
        ++v.checked;
        if (apply(spec, a).is_zero()) {
            record(a);
            return v;
        }
    }
    return v;
}

namespace {

bool is_scaled_rank_one_idempotent(const ExactMatrix& y) {
    return is_rank_one(y) && !y.field().is_zero(y.trace());
}

}  // namespace

IdempotentStructureReport check_rank_one_idempotent_structure(const PreserverSpec& spec, const MultilinearPoly& p, unsigned jobs) {
    const Field& f = spec.field;
    if (!f.is_finite()) throw InvalidInput("rank-one idempotent enumeration needs a finite field");
    if (classify(p) != PolyClass::generic) throw InvalidInput("the idempotent structure check needs a generic polynomial");
    IdempotentStructureReport r;
    StrategyPlan plan;
    plan.jobs = jobs;
    const std::uint64_t total = saturating_pow(matrix_count(f, spec.n, spec.n), p.arity());
    plan.kind = total <= enumeration_budget(kTupleBudget) ? Strategy::exhaustive : Strategy::witnesses;
    r.precondition = check_maps_zeros(p, p, spec, true, plan);
    if (!r.precondition.holds) return r;
    for (auto& P : enumerate_rank_one_idempotents(spec.n, f)) {
        ++r.checked;
        ExactMatrix y = apply(spec, P);
        if (!is_scaled_rank_one_idempotent(y)) r.exceptions.push_back({P, y});
    }
    return r;
}

PreserverSpec rescale_to_idempotent_preserving(const PreserverSpec& spec, const MultilinearPoly& p, unsigned jobs) {
    auto report = check_rank_one_idempotent_structure(spec, p, jobs);
    if (!report.holds()) throw InvalidInput("spec does not map rank-one idempotents to multiples of rank-one idempotents");
    const Field& f = spec.field;
    PreserverSpec out = spec;
    for (auto& P : enumerate_rank_one_idempotents(spec.n, f)) {
        ExactMatrix y = apply(spec, P);
        Scalar c = y.trace();
        if (f.is_one(c)) continue;
        const std::string key = matrix_key(P);
        if (out.mode == PreserverSpec::Mode::table) {
            out.table[key] = y.scale(f.inv(c));
            continue;
        }
        auto g = spec.gamma_table.find(key);
        out.gamma_table[key] = f.div(g == spec.gamma_table.end() ? spec.gamma : g->second, c);
        auto s = spec.shift_table.find(key);
        if (s != spec.shift_table.end()) out.shift_table[key] = f.div(s->second, c);
    }
    return out;
}

std::vector<std::string> example_ids() {
    return {"add_a12", "trace_kernel", "jordan_theta", "real_omega", "gaussian_conjugation", "transpose_xy"};
}

namespace {

MultilinearPoly make_poly(const Field& f, unsigned k, const std::vector<std::pair<Permutation, Scalar>>& terms) {
    MultilinearPoly p(f, k);
    for (auto& [s, c] : terms) p.add_term(s, c);
    return p;
}

std::string tuple_str(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i].str();
    return s + ")";
}

std::string verdict_str(const Verdict& v) { return v.holds ? "holds" : "violated " + tuple_str(*v.witness); }

ExampleReport example_add_a12() {
    Field f = Field::prime(3);
    const std::size_t n = 3;
    auto p = make_poly(f, 3, {{{1, 2, 3}, f.one()}, {{2, 1, 3}, f.from_int(-1)}});
    auto spec = PreserverSpec::identity(f, n);
    spec.tweak = EntryTweak::add_a12_identity;
    Tuple expect{ExactMatrix::unit(f, n, 0, 0), ExactMatrix::unit(f, n, 0, 1), ExactMatrix::unit(f, n, 0, 1)};
    ExampleReport r;
    r.id = "add_a12";
    r.expected = "violated " + tuple_str(expect);
    r.verdict = check_maps_zeros(p, p, spec, false, StrategyPlan{});
    r.computed = verdict_str(*r.verdict);
    r.matches = !r.verdict->holds && *r.verdict->witness == expect;
    r.facts.push_back({"field", f.name()});
    r.facts.push_back({"polynomial", p.str()});
    if (r.verdict->image) r.facts.push_back({"image", tuple_str(*r.verdict->image)});
    return r;
}

ExampleReport example_trace_kernel(std::uint64_t seed) {
    Field f = Field::prime(5);
    const std::size_t n = 3;
    auto spec = PreserverSpec::identity(f, n);
    spec.tweak = EntryTweak::subtract_trace_over_n;
    StrategyPlan plan;
    plan.kind = Strategy::sample;
    plan.samples = 2000;
    plan.seed = seed;
    ExampleReport r;
    r.id = "trace_kernel";
    r.expected = "strongly preserves commutativity; Phi(Id) = 0";
    r.verdict = check_commutativity_preservation(spec, plan, true);
    bool kills_id = apply(spec, ExactMatrix::identity(f, n)).is_zero();
    auto kernel = check_zero_kernel(spec, StrategyPlan{});
    r.computed = std::string(r.verdict->holds ? "strongly preserves commutativity" : "violated " + tuple_str(*r.verdict->witness)) +
                 "; Phi(Id) " + (kills_id ? "= 0" : "!= 0");
    r.matches = r.verdict->holds && kills_id && !kernel.holds;
    r.facts.push_back({"field", f.name()});
    r.facts.push_back({"samples", std::to_string(r.verdict->checked)});
    r.facts.push_back({"seed", std::to_string(seed)});
    r.facts.push_back({"zero_kernel", kernel.holds ? "holds" : "violated by " + kernel.witness->front().str()});
    return r;
}

ExampleReport example_jordan_theta(unsigned jobs, std::uint64_t seed) {
    Field f = Field::prime(7);
    const std::size_t n = 2;
    auto p = make_poly(f, 2, {{{1, 2}, f.one()}, {{2, 1}, f.one()}});
    auto np = normalize(p);
    ExampleReport r;
    r.id = "jordan_theta";
    r.expected = "diag(1,2) in Theta with Omega = {0}; a permutation of Theta strongly preserves zeros";
    ExactMatrix A = ExactMatrix::diag(f, {f.from_int(1), f.from_int(2)});
    const std::size_t omega_dim = omega_right(A, np).basis.dim();
    // Theta: 0 is not in Sp(B) + Sp(B), i.e. X -> XB + BX is invertible
    std::vector<ExactMatrix> theta;
    const std::uint64_t count = matrix_count(f, n, n);
    for (std::uint64_t i = 0; i < count; ++i) {
        ExactMatrix B = matrix_at(f, n, n, i);
        ElementaryOperator op({f.one(), f.one()}, B, B);
        if (!f.is_zero(det(op.kron_matrix()))) theta.push_back(B);
    }
    bool a_in_theta = std::find(theta.begin(), theta.end(), A) != theta.end();
    std::vector<std::size_t> perm(theta.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    Rng rng(seed);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    std::vector<std::pair<ExactMatrix, ExactMatrix>> entries;
    std::size_t moved = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        entries.push_back({theta[i], theta[perm[i]]});
        moved += perm[i] != i;
    }
    auto spec = PreserverSpec::from_table(f, n, entries);
    StrategyPlan plan;
    plan.kind = Strategy::exhaustive;
    plan.jobs = jobs;
    r.verdict = check_maps_zeros(p, p, spec, true, plan);
    r.computed = std::string(a_in_theta ? "diag(1,2) in Theta" : "diag(1,2) not in Theta") + " with Omega dimension " +
                 std::to_string(omega_dim) + "; permutation of Theta " + (r.verdict->holds ? "strongly preserves zeros" : verdict_str(*r.verdict));
    r.matches = a_in_theta && omega_dim == 0 && r.verdict->holds && moved > 0;
    r.facts.push_back({"field", f.name()});
    r.facts.push_back({"theta_size", std::to_string(theta.size())});
    r.facts.push_back({"moved", std::to_string(moved)});
    r.facts.push_back({"pairs_checked", std::to_string(r.verdict->checked)});
    r.facts.push_back({"seed", std::to_string(seed)});
    return r;
}

ExampleReport example_real_omega() {
    Field Q;
    auto p = make_poly(Q, 2, {{{1, 2}, Q.one()}, {{2, 1}, Q.one()}});
    auto np = normalize(p);
    ExactMatrix A = direct_sum(ExactMatrix::from_ints(Q, {{0, -3}, {1, 0}}), ExactMatrix::identity(Q, 1));
    auto right = omega_right(A, np).basis;
    auto left = omega_left(A, np).basis;
    // [[-d, 3c], [c, d]] (+) 0
    auto expect = SubspaceBasis::span(Q, 3, 3,
                                      {direct_sum(ExactMatrix::from_ints(Q, {{0, 3}, {1, 0}}), ExactMatrix(Q, 1, 1)),
                                       direct_sum(ExactMatrix::from_ints(Q, {{-1, 0}, {0, 1}}), ExactMatrix(Q, 1, 1))});
    auto cls = classify_direct(A, np, false);
    ExampleReport r;
    r.id = "real_omega";
    r.expected = "Other; both Omega spaces equal {[[-d,3c],[c,d]] (+) 0}, dimension 2";
    r.computed = to_string(cls.kind) + "; Omega spaces " + (right == expect && left == expect ? "equal" : "differ from") +
                 " {[[-d,3c],[c,d]] (+) 0}, dimension " + std::to_string(cls.basis->dim());
    r.matches = cls.kind == OmegaCase::other && cls.basis->dim() == 2 && right == expect && left == expect;
    r.facts.push_back({"field", Q.name()});
    r.facts.push_back({"A", A.str()});
    for (std::size_t i = 0; i < right.dim(); ++i) r.facts.push_back({"basis_" + std::to_string(i), right.basis()[i].str()});
    return r;
}

ExampleReport example_gaussian_conjugation() {
    Field f = Field::gaussian_rationals();
    auto p = make_poly(f, 2, {{{1, 2}, f.one()}, {{2, 1}, f.neg(f.gaussian(0, 1))}});
    const Scalar one = f.one(), i = f.gaussian(0, 1);
    ExactMatrix A(f, 2, 2, {one, one, f.neg(one), one});
    ExactMatrix B(f, 2, 2, {one, i, i, f.neg(one)});
    auto spec = PreserverSpec::identity(f, 2);
    spec.phi = FieldHom::conjugation(f);
    StrategyPlan plan;
    plan.candidates.push_back({A, B});
    ExampleReport r;
    r.id = "gaussian_conjugation";
    r.expected = "violated " + tuple_str({A, B});
    r.verdict = check_maps_zeros(p, p, spec, false, plan);
    r.computed = verdict_str(*r.verdict);
    r.matches = !r.verdict->holds && *r.verdict->witness == Tuple{A, B};
    r.facts.push_back({"field", f.name()});
    r.facts.push_back({"polynomial", p.str()});
    if (r.verdict->image_value) r.facts.push_back({"image_value", r.verdict->image_value->str()});
    return r;
}

ExampleReport example_transpose_xy() {
    Field Q;
    auto p = make_poly(Q, 2, {{{1, 2}, Q.one()}});
    auto spec = PreserverSpec::identity(Q, 2);
    spec.transpose = true;
    Tuple expect{ExactMatrix::unit(Q, 2, 0, 0), ExactMatrix::unit(Q, 2, 1, 0)};
    ExampleReport r;
    r.id = "transpose_xy";
    r.expected = "violated " + tuple_str(expect);
    r.verdict = check_maps_zeros(p, p, spec, false, StrategyPlan{});
    r.computed = verdict_str(*r.verdict);
    r.matches = !r.verdict->holds && *r.verdict->witness == expect && *r.verdict->image_value == ExactMatrix::unit(Q, 2, 0, 1);
    r.facts.push_back({"field", Q.name()});
    if (r.verdict->image_value) r.facts.push_back({"image_value", r.verdict->image_value->str()});
    return r;
}

}  // namespace

ExampleReport reproduce_example(const std::string& id, unsigned jobs, std::uint64_t seed) {
    if (id == "add_a12") return example_add_a12();
    if (id == "trace_kernel") return example_trace_kernel(seed);
    if (id == "jordan_theta") return example_jordan_theta(jobs, seed);
    if (id == "real_omega") return example_real_omega();
    if (id == "gaussian_conjugation") return example_gaussian_conjugation();
    if (id == "transpose_xy") return example_transpose_xy();
    throw InvalidInput("unknown example id: " + id);
}

}  // namespace preserverlab
