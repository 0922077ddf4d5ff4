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

#include "preserverlab/unipoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "preserverlab/errors.hpp"
#include "preserverlab/rng.hpp"

namespace preserverlab {

UniPoly::UniPoly(Field f, std::vector<Scalar> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
    for (auto& c : c_)
        if (!field_.contains(c)) throw InvalidInput("polynomial coefficient does not belong to " + field_.name());
    trim();
}

void UniPoly::trim() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
}

UniPoly UniPoly::constant(const Field& f, const Scalar& c) { return UniPoly(f, {c}); }

UniPoly UniPoly::monomial(const Field& f, const Scalar& c, std::size_t deg) {
    std::vector<Scalar> v(deg + 1, f.zero());
    v[deg] = c;
    return UniPoly(f, std::move(v));
}

UniPoly UniPoly::x(const Field& f) { return monomial(f, f.one(), 1); }

UniPoly UniPoly::from_ints(const Field& f, const std::vector<long long>& coeffs) {
    std::vector<Scalar> v;
    for (auto c : coeffs) v.push_back(f.from_int(c));
    return UniPoly(f, std::move(v));
}

bool UniPoly::is_one() const { return c_.size() == 1 && field_.is_one(c_[0]); }
bool UniPoly::is_monic() const { return !c_.empty() && field_.is_one(c_.back()); }
Scalar UniPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }

Scalar UniPoly::leading() const {
    if (c_.empty()) return field_.zero();
    return c_.back();
}

Scalar UniPoly::eval(const Scalar& x) const {
    Scalar acc = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
    return acc;
}

UniPoly UniPoly::monic() const {
    if (c_.empty()) return *this;
    return scale(field_.inv(c_.back()));
}

UniPoly UniPoly::derivative() const {
    std::vector<Scalar> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(field_.mul(field_.from_int(static_cast<long long>(i)), c_[i]));
    return UniPoly(field_, std::move(d));
}

UniPoly UniPoly::scale(const Scalar& s) const {
    std::vector<Scalar> d;
    d.reserve(c_.size());
    for (auto& c : c_) d.push_back(field_.mul(c, s));
    return UniPoly(field_, std::move(d));
}

UniPoly UniPoly::map(const FieldEmbedding& e) const {
    if (!(e.source() == field_)) throw InvalidInput("field mismatch in polynomial map");
    std::vector<Scalar> d;
    for (auto& c : c_) d.push_back(e.apply(c));
    return UniPoly(e.target(), std::move(d));
}

std::string UniPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (field_.is_zero(c_[i])) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = field_.is_one(c_[i]);
        if (!unit || i == 0) {
            std::string s = field_.format(c_[i]);
            bool wrap = i > 0 && field_.kind() == FieldKind::gaussian_rationals && s.find_first_of("+-", 1) != std::string::npos;
            os << (wrap ? "(" + s + ")" : s);
        }
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
    }
    return os.str();
}

namespace {
void check_same(const UniPoly& a, const UniPoly& b) {
    if (!(a.field() == b.field())) throw InvalidInput("field mismatch: " + a.field().name() + " vs " + b.field().name());
}
}  // namespace

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    check_same(a, b);
    const Field& f = a.field_;
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(a.coeff(i), b.coeff(i));
    return UniPoly(f, std::move(r));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    check_same(a, b);
    const Field& f = a.field_;
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub(a.coeff(i), b.coeff(i));
    return UniPoly(f, std::move(r));
}

UniPoly operator-(const UniPoly& a) { return a.scale(a.field_.from_int(-1)); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    check_same(a, b);
    const Field& f = a.field_;
    if (a.is_zero() || b.is_zero()) return UniPoly(f);
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (f.is_zero(a.c_[i])) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return UniPoly(f, std::move(r));
}

bool operator==(const UniPoly& a, const UniPoly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    check_same(a, b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const Field& f = a.field();
    if (a.degree() < b.degree()) return {UniPoly(f), a};
    std::vector<Scalar> r = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    Scalar lead_inv = f.inv(bc.back());
    std::vector<Scalar> q(r.size() - db, f.zero());
    for (std::size_t i = r.size(); i-- > db;) {
        if (f.is_zero(r[i])) continue;
        Scalar c = f.mul(r[i], lead_inv);
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(c, bc[j]));
    }
    r.resize(db);
    return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
}

UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UniPoly powmod(const UniPoly& base, const mpz_class& e, const UniPoly& mod) {
    const Field& f = base.field();
    UniPoly result = UniPoly::constant(f, f.one()) % mod;
    UniPoly b = base % mod;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % mod;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % mod;
    }
    return result;
}

int compare(const UniPoly& a, const UniPoly& b) {
    const Field& f = a.field();
    const std::size_t n = std::min(a.coeffs().size(), b.coeffs().size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = f.compare(a.coeffs()[i], b.coeffs()[i]);
        if (c) return c;
    }
    if (a.coeffs().size() == b.coeffs().size()) return 0;
    return a.coeffs().size() < b.coeffs().size() ? -1 : 1;
}

// ---- finite-field factorization

namespace {

mpz_class field_order(const Field& f) { return mpz_class(static_cast<unsigned long>(f.order())); }

// x^(q^i) mod f by repeated q-th powering
UniPoly frobenius_power_of_x(const UniPoly& f, unsigned i) {
    const Field& F = f.field();
    UniPoly h = UniPoly::x(F) % f;
    for (unsigned j = 0; j < i; ++j) h = powmod(h, field_order(F), f);
    return h;
}

std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

bool rabin_irreducible(const UniPoly& f) {
    const Field& F = f.field();
    const unsigned n = static_cast<unsigned>(f.degree());
    if (n == 1) return true;
    UniPoly g = f.monic();
    UniPoly x = UniPoly::x(F);
    for (unsigned r : prime_divisors(n)) {
        UniPoly h = frobenius_power_of_x(g, n / r);
        if (!gcd(g, h - x).is_one()) return false;
    }
    return (frobenius_power_of_x(g, n) - x) % g == UniPoly(F);
}

// monic polynomials of degree d, indexed by their coefficient codes in base q
UniPoly monic_by_index(const Field& F, unsigned d, std::uint64_t idx) {
    std::vector<Scalar> c(d + 1);
    const std::uint64_t q = F.order();
    for (unsigned i = 0; i < d; ++i) {
        c[i] = F.element(idx % q);
        idx /= q;
    }
    c[d] = F.one();
    return UniPoly(F, std::move(c));
}

std::vector<Factor> factor_exhaustive(const UniPoly& f) {
    const Field& F = f.field();
    std::vector<Factor> out;
    UniPoly g = f;
    const std::uint64_t q = F.order();
    for (unsigned d = 1; 2 * d <= static_cast<unsigned>(g.degree()); ++d) {
        std::uint64_t count = saturating_pow(q, d);
        for (std::uint64_t idx = 0; idx < count && 2 * d <= static_cast<unsigned>(g.degree()); ++idx) {
            UniPoly h = monic_by_index(F, d, idx);
            unsigned m = 0;
            while (true) {
                auto [quo, rem] = divmod(g, h);
                if (!rem.is_zero()) break;
                g = quo;
                ++m;
            }
            if (m) out.push_back({h, m});
        }
    }
    if (g.degree() >= 1) {
        bool merged = false;
        for (auto& fac : out)
            if (fac.poly == g) {
                ++fac.multiplicity;
                merged = true;
            }
        if (!merged) out.push_back({g, 1});
    }
    return out;
}

// p-th root of a polynomial whose derivative vanishes
UniPoly pth_root(const UniPoly& f) {
    const Field& F = f.field();
    const std::uint64_t p = F.characteristic();
    // inverse Frobenius on coefficients: c -> c^(q/p)
    mpz_class e = field_order(F) / mpz_class(static_cast<unsigned long>(p));
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(F.pow(f.coeffs()[i], e));
    return UniPoly(F, std::move(c));
}

void squarefree_decompose(const UniPoly& f, unsigned mult, std::vector<std::pair<UniPoly, unsigned>>& out) {
    const Field& F = f.field();
    const unsigned p = static_cast<unsigned>(F.characteristic());
    UniPoly df = f.derivative();
    if (df.is_zero()) {
        squarefree_decompose(pth_root(f), mult * p, out);
        return;
    }
    UniPoly c = gcd(f, df);
    UniPoly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        UniPoly y = gcd(w, c);
        UniPoly fac = w / y;
        if (fac.degree() > 0) out.emplace_back(fac.monic(), i * mult);
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one() && c.degree() > 0) squarefree_decompose(pth_root(c.monic()), mult * p, out);
}

std::vector<std::pair<UniPoly, unsigned>> distinct_degree(const UniPoly& f) {
    const Field& F = f.field();
    std::vector<std::pair<UniPoly, unsigned>> out;
    UniPoly g = f;
    UniPoly x = UniPoly::x(F);
    UniPoly h = x % g;
    unsigned i = 1;
    while (g.degree() >= 2 * static_cast<int>(i)) {
        h = powmod(h, field_order(F), g);
        UniPoly d = gcd(g, h - x);
        if (!d.is_one()) {
            out.emplace_back(d, i);
            g = g / d;
            h = h % g;
        }
        ++i;
    }
    if (g.degree() > 0) out.emplace_back(g.monic(), static_cast<unsigned>(g.degree()));
    return out;
}

UniPoly random_poly(const Field& F, int max_deg, Rng& rng) {
    std::vector<Scalar> c;
    for (int i = 0; i <= max_deg; ++i) c.push_back(F.element(rng.below(F.order())));
    return UniPoly(F, std::move(c));
}

void equal_degree(const UniPoly& f, unsigned d, Rng& rng, std::vector<UniPoly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    const Field& F = f.field();
    const std::uint64_t p = F.characteristic();
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), field_order(F).get_mpz_t(), d);
    while (true) {
        UniPoly a = random_poly(F, f.degree() - 1, rng);
        if (a.degree() < 1) continue;
        UniPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(kd-1))
            const unsigned steps = F.degree() * d;
            UniPoly t = a % f, acc = a % f;
            for (unsigned i = 1; i < steps; ++i) {
                t = (t * t) % f;
                acc = acc + t;
            }
            b = acc;
        } else {
            b = powmod(a, (qd - 1) / 2, f) - UniPoly::constant(F, F.one());
        }
        UniPoly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

std::vector<Factor> factor_cantor_zassenhaus(const UniPoly& f, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<UniPoly, unsigned>> sqf;
    squarefree_decompose(f, 1, sqf);
    std::vector<Factor> out;
    for (auto& [part, mult] : sqf)
        for (auto& [block, d] : distinct_degree(part)) {
            std::vector<UniPoly> pieces;
            equal_degree(block, d, rng, pieces);
            for (auto& piece : pieces) out.push_back({piece.monic(), mult});
        }
    return out;
}

// ---- Q and Q(i)

// Elements of Z or Z[i]; im stays zero for Z.
struct GInt {
    mpz_class re, im;
};
bool operator==(const GInt& a, const GInt& b) { return a.re == b.re && a.im == b.im; }
GInt operator+(const GInt& a, const GInt& b) { return {a.re + b.re, a.im + b.im}; }
GInt operator-(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }
GInt operator*(const GInt& a, const GInt& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
mpz_class norm(const GInt& a) { return a.re * a.re + a.im * a.im; }
bool is_zero(const GInt& a) { return a.re == 0 && a.im == 0; }

// exact quotient a/b when it lies in the ring
bool exact_div(const GInt& a, const GInt& b, GInt& q) {
    mpz_class n = norm(b);
    if (n == 0) return false;
    // a * conj(b) / N(b)
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    if (re % n != 0 || im % n != 0) return false;
    q = {re / n, im / n};
    return true;
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<std::pair<mpz_class, unsigned>> pf;
    mpz_class m = n;
    for (mpz_class d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            unsigned e = 0;
            while (m % d == 0) {
                m /= d;
                ++e;
            }
            pf.emplace_back(d, e);
        }
    }
    if (m > 1) pf.emplace_back(m, 1);
    std::vector<mpz_class> divs{1};
    for (auto& [pr, e] : pf) {
        std::size_t cur = divs.size();
        mpz_class pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= pr;
            for (std::size_t j = 0; j < cur; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// All ring divisors of a (a != 0), each up to nothing: every associate is listed.
std::vector<GInt> ring_divisors(const GInt& a, bool gaussian) {
    std::vector<GInt> out;
    if (!gaussian) {
        for (auto& d : positive_divisors(a.re)) {
            out.push_back({d, 0});
            out.push_back({-d, 0});
        }
        return out;
    }
    for (auto& m : positive_divisors(norm(a))) {
        mpz_class r = sqrt(m);
        for (mpz_class x = -r; x <= r; ++x) {
            mpz_class y2 = m - x * x;
            if (y2 < 0) continue;
            mpz_class y = sqrt(y2);
            if (y * y != y2) continue;
            for (int s : {1, -1}) {
                GInt c{x, s * y};
                GInt q;
                if (exact_div(a, c, q)) out.push_back(c);
                if (y == 0) break;
            }
        }
    }
    return out;
}

bool ring_sqrt(const GInt& d, bool gaussian, GInt& root) {
    if (!gaussian) {
        if (d.re < 0) return false;
        mpz_class r = sqrt(d.re);
        if (r * r != d.re) return false;
        root = {r, 0};
        return true;
    }
    mpz_class n2 = norm(d);
    mpz_class n = sqrt(n2);
    if (n * n != n2) return false;
    mpz_class s2 = n + d.re, t2 = n - d.re;
    if (s2 % 2 != 0 || t2 % 2 != 0) return false;
    s2 /= 2;
    t2 /= 2;
    mpz_class s = sqrt(s2), t = sqrt(t2);
    if (s * s != s2 || t * t != t2) return false;
    if (d.im < 0) t = -t;
    root = {s, t};
    return root * root == d;
}

using RPoly = std::vector<GInt>;  // lowest first, monic

GInt reval(const RPoly& f, const GInt& x) {
    GInt acc{0, 0};
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

RPoly synthetic_div(const RPoly& f, const GInt& r) {
    const std::size_t n = f.size() - 1;
    RPoly q(n);
    GInt carry{0, 0};
    for (std::size_t i = n; i-- > 0;) {
        carry = carry * r + f[i + 1];
        q[i] = carry;
    }
    return q;
}

RPoly rmul(const RPoly& a, const RPoly& b) {
    RPoly r(a.size() + b.size() - 1, GInt{0, 0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

// Splits a monic quartic without ring roots into two monic quadratics.
bool split_quartic(const RPoly& f, bool gaussian, RPoly& u, RPoly& v) {
    const GInt &a0 = f[0], &a1 = f[1], &a3 = f[3];
    for (const GInt& c : ring_divisors(a0, gaussian)) {
        GInt e;
        exact_div(a0, c, e);
        GInt rhs = a1 - c * a3;
        std::vector<GInt> bs;
        if (!(e == c)) {
            GInt b;
            if (exact_div(rhs, e - c, b)) bs.push_back(b);
        } else if (is_zero(rhs)) {
            // b^2 - a3 b + (a2 - 2c) = 0
            GInt disc = a3 * a3 - GInt{4, 0} * (f[2] - GInt{2, 0} * c);
            GInt s;
            if (ring_sqrt(disc, gaussian, s)) {
                for (const GInt& num : {a3 + s, a3 - s}) {
                    GInt b;
                    if (exact_div(num, GInt{2, 0}, b)) bs.push_back(b);
                }
            }
        }
        for (const GInt& b : bs) {
            RPoly p1{c, b, GInt{1, 0}}, p2{e, a3 - b, GInt{1, 0}};
            if (rmul(p1, p2) == f) {
                u = p1;
                v = p2;
                return true;
            }
        }
    }
    return false;
}

std::vector<Factor> factor_rational(const UniPoly& f) {
    const Field& F = f.field();
    const bool gaussian = F.kind() == FieldKind::gaussian_rationals;
    const std::size_t n = static_cast<std::size_t>(f.degree());
    auto parts = [&](const Scalar& s) -> std::pair<mpq_class, mpq_class> {
        if (gaussian) {
            const auto& g = std::get<GaussianRational>(s);
            return {g.re, g.im};
        }
        return {std::get<mpq_class>(s), mpq_class(0)};
    };
    mpz_class D = 1;
    for (auto& c : f.coeffs()) {
        auto [re, im] = parts(c);
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), re.get_den_mpz_t());
        mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), im.get_den_mpz_t());
    }
    // g(y) = D^n f(y / D) has ring coefficients D^(n-i) a_i
    RPoly g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        auto [re, im] = parts(f.coeffs()[i]);
        mpz_class s;
        mpz_pow_ui(s.get_mpz_t(), D.get_mpz_t(), n - i);
        mpq_class r = re * s, m = im * s;
        g[i] = {r.get_num(), m.get_num()};
    }

    std::vector<std::pair<RPoly, unsigned>> found;
    while (g.size() > 1) {
        bool hit = false;
        std::vector<GInt> candidates;
        if (is_zero(g[0]))
            candidates.push_back({0, 0});
        else
            candidates = ring_divisors(g[0], gaussian);
        for (const GInt& r : candidates) {
            if (!is_zero(reval(g, r))) continue;
            unsigned m = 0;
            while (g.size() > 1 && is_zero(reval(g, r))) {
                g = synthetic_div(g, r);
                ++m;
            }
            found.push_back({RPoly{GInt{0, 0} - r, GInt{1, 0}}, m});
            hit = true;
            break;
        }
        if (!hit) break;
    }
    const std::size_t rest = g.size() - 1;
    if (rest > 4) throw Unsupported("factorization over " + F.name() + " of a degree-" + std::to_string(rest) + " cofactor without roots");
    if (rest == 4) {
        RPoly u, v;
        if (split_quartic(g, gaussian, u, v)) {
            if (u == v)
                found.push_back({u, 2});
            else {
                found.push_back({u, 1});
                found.push_back({v, 1});
            }
        } else {
            found.push_back({g, 1});
        }
    } else if (rest >= 2) {
        found.push_back({g, 1});
    }

    // back to f: h(y) -> D^(-deg h) h(D x)
    std::vector<Factor> out;
    for (auto& [h, m] : found) {
        const std::size_t d = h.size() - 1;
        std::vector<Scalar> c;
        for (std::size_t i = 0; i <= d; ++i) {
            mpz_class s;
            mpz_pow_ui(s.get_mpz_t(), D.get_mpz_t(), d - i);
            mpq_class re(h[i].re, s), im(h[i].im, s);
            re.canonicalize();
            im.canonicalize();
            c.push_back(gaussian ? Scalar(GaussianRational{re, im}) : Scalar(re));
        }
        out.push_back({UniPoly(F, std::move(c)), m});
    }
    return out;
}

std::vector<Factor> canonicalize(std::vector<Factor> fs) {
    std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) { return compare(a.poly, b.poly) < 0; });
    std::vector<Factor> out;
    for (auto& f : fs) {
        if (!out.empty() && out.back().poly == f.poly)
            out.back().multiplicity += f.multiplicity;
        else
            out.push_back(f);
    }
    return out;
}

}  // namespace

bool is_irreducible(const UniPoly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    if (f.field().is_finite()) return rabin_irreducible(f);
    auto fs = factor_poly(f.monic());
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

std::vector<std::uint64_t> smallest_irreducible(std::uint64_t p, unsigned degree) {
    Field F = Field::prime(p);
    if (degree == 0) throw InvalidInput("degree must be positive");
    const std::uint64_t count = saturating_pow(p, degree);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        UniPoly f = monic_by_index(F, degree, idx);
        if (degree > 1 && F.is_zero(f.coeff(0))) continue;
        if (is_irreducible(f)) {
            std::vector<std::uint64_t> out;
            for (unsigned i = 0; i <= degree; ++i) out.push_back(F.index_of(f.coeff(i)));
            return out;
        }
    }
    throw std::logic_error("no irreducible polynomial found");
}

std::vector<Factor> factor_poly(const UniPoly& f, std::uint64_t seed) {
    if (f.degree() < 1) throw InvalidInput("factor_poly needs degree >= 1");
    if (!f.is_monic()) throw InvalidInput("factor_poly needs a monic polynomial");
    const Field& F = f.field();
    if (F.is_finite()) {
        if (saturating_pow(F.order(), static_cast<std::uint64_t>(f.degree())) <= (1u << 16))
            return canonicalize(factor_exhaustive(f));
        return canonicalize(factor_cantor_zassenhaus(f, seed));
    }
    return canonicalize(factor_rational(f));
}

std::vector<Scalar> roots(const UniPoly& f) {
    if (f.is_zero()) throw InvalidInput("roots of the zero polynomial");
    const Field& F = f.field();
    std::vector<Scalar> out;
    if (f.degree() < 1) return out;
    if (F.is_finite() && F.order() <= (1u << 16)) {
        for (std::uint64_t i = 0; i < F.order(); ++i)
            if (F.is_zero(f.eval(F.element(i)))) out.push_back(F.element(i));
        return out;
    }
    for (auto& fac : factor_poly(f.monic()))
        if (fac.poly.degree() == 1) out.push_back(F.neg(fac.poly.coeff(0)));
    std::sort(out.begin(), out.end(), [&](const Scalar& a, const Scalar& b) { return F.compare(a, b) < 0; });
    return out;
}

FieldEmbedding extension_embedding(const Field& base, unsigned m) {
    if (!base.is_finite()) throw InvalidInput("extension_embedding needs a finite field");
    if (m == 0) throw InvalidInput("extension degree must be positive");
    if (m == 1) return FieldEmbedding(base);
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, std::vector<std::uint64_t>, unsigned>, FieldEmbedding> memo;
    auto key = std::make_tuple(base.characteristic(), base.modulus(), m);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    Field target = Field::galois(base.characteristic(), base.degree() * m);
    FieldEmbedding emb;
    if (base.kind() == FieldKind::prime) {
        emb = FieldEmbedding(base, target, target.zero());
    } else {
        std::vector<Scalar> mc;
        for (auto c : base.modulus()) mc.push_back(target.from_int(static_cast<long long>(c)));
        auto rs = roots(UniPoly(target, std::move(mc)));
        if (rs.empty()) throw std::logic_error("base modulus has no root in the extension");
        emb = FieldEmbedding(base, target, rs.front());
    }
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(key, emb);
    return emb;
}

SplittingField splitting_field(const UniPoly& f) {
    const Field& F = f.field();
    if (!F.is_finite()) throw InvalidInput("splitting_field needs a finite field");
    if (f.degree() < 1) return {F, FieldEmbedding(F)};
    unsigned m = 1;
    for (auto& fac : factor_poly(f.monic())) m = std::lcm(m, static_cast<unsigned>(fac.poly.degree()));
    FieldEmbedding emb = extension_embedding(F, m);
    return {emb.target(), emb};
}

}  // namespace preserverlab
