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

#include "preserverlab/field.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "preserverlab/errors.hpp"
#include "preserverlab/unipoly.hpp"

namespace preserverlab {

bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
}

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

struct Field::Impl {
    FieldKind kind = FieldKind::rationals;
    std::uint64_t p = 0;
    unsigned k = 1;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> modulus;
    std::vector<std::uint64_t> pw;  // p^i for i <= k
    // exp_t has length 2(q-1) so log sums need no reduction
    std::vector<std::uint32_t> log_t;
    std::vector<std::uint32_t> exp_t;
    std::vector<std::uint8_t> add_t;  // q <= 256 only
    std::vector<std::uint8_t> neg_t;

    std::vector<std::uint64_t> digits(std::uint64_t c) const {
        std::vector<std::uint64_t> d(k);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = c % p;
            c /= p;
        }
        return d;
    }
    std::uint64_t pack(const std::vector<std::uint64_t>& d) const {
        std::uint64_t c = 0;
        for (unsigned i = k; i-- > 0;) c = c * p + d[i];
        return c;
    }

    std::uint64_t add_slow(std::uint64_t a, std::uint64_t b) const {
        if (k == 1) {
            std::uint64_t s = a + b;
            return s >= p ? s - p : s;
        }
        if (p == 2) return a ^ b;
        std::uint64_t r = 0;
        for (unsigned i = 0; i < k; ++i) {
            std::uint64_t s = a % p + b % p;
            if (s >= p) s -= p;
            r += s * pw[i];
            a /= p;
            b /= p;
        }
        return r;
    }
    std::uint64_t neg_slow(std::uint64_t a) const {
        if (k == 1) return a == 0 ? 0 : p - a;
        if (p == 2) return a;
        std::uint64_t r = 0;
        for (unsigned i = 0; i < k; ++i) {
            std::uint64_t d = a % p;
            r += (d == 0 ? 0 : p - d) * pw[i];
            a /= p;
        }
        return r;
    }
    std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const {
        if (k == 1) return (a * b) % p;
        auto da = digits(a), db = digits(b);
        std::vector<std::uint64_t> prod(2 * k - 1, 0);
        for (unsigned i = 0; i < k; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
        for (unsigned d = 2 * k - 1; d-- > k;) {
            std::uint64_t c = prod[d];
            if (c == 0) continue;
            // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
            for (unsigned i = 0; i < k; ++i)
                prod[d - k + i] = (prod[d - k + i] + (p - c) * modulus[i]) % p;
            prod[d] = 0;
        }
        prod.resize(k);
        return pack(prod);
    }
    std::uint64_t pow_slow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul_slow(r, a);
            a = mul_slow(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        if (!add_t.empty()) return add_t[a * q + b];
        return add_slow(a, b);
    }
    std::uint64_t neg(std::uint64_t a) const {
        if (!neg_t.empty()) return neg_t[a];
        return neg_slow(a);
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        if (a == 0 || b == 0) return 0;
        if (!exp_t.empty()) return exp_t[log_t[a] + log_t[b]];
        return mul_slow(a, b);
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw std::domain_error("division by zero in " + std::to_string(q) + "-element field");
        if (!exp_t.empty()) return exp_t[(q - 1) - log_t[a]];
        if (k == 1) {
            // extended Euclid on residues
            std::int64_t t = 0, nt = 1;
            std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
            while (nr != 0) {
                std::int64_t qq = r / nr;
                std::int64_t tmp = t - qq * nt;
                t = nt;
                nt = tmp;
                tmp = r - qq * nr;
                r = nr;
                nr = tmp;
            }
            if (t < 0) t += static_cast<std::int64_t>(p);
            return static_cast<std::uint64_t>(t);
        }
        return pow_slow(a, q - 2);
    }

    void build_tables() {
        if (q <= 256) {
            add_t.resize(q * q);
            neg_t.resize(q);
            for (std::uint64_t a = 0; a < q; ++a) {
                neg_t[a] = static_cast<std::uint8_t>(neg_slow(a));
                for (std::uint64_t b = 0; b < q; ++b) add_t[a * q + b] = static_cast<std::uint8_t>(add_slow(a, b));
            }
        }
        if (k == 1 || q > (1u << 20)) return;
        std::vector<std::uint64_t> primes;
        std::uint64_t m = q - 1;
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                primes.push_back(d);
                while (m % d == 0) m /= d;
            }
        }
        if (m > 1) primes.push_back(m);
        std::uint64_t g = 0;
        for (std::uint64_t c = 2; c < q; ++c) {
            bool primitive = true;
            for (auto r : primes)
                if (pow_slow(c, (q - 1) / r) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                g = c;
                break;
            }
        }
        if (g == 0) throw std::logic_error("no primitive element found");
        exp_t.resize(2 * (q - 1));
        log_t.assign(q, 0);
        std::uint64_t cur = 1;
        for (std::uint64_t i = 0; i < q - 1; ++i) {
            exp_t[i] = static_cast<std::uint32_t>(cur);
            exp_t[i + q - 1] = static_cast<std::uint32_t>(cur);
            log_t[cur] = static_cast<std::uint32_t>(i);
            cur = mul_slow(cur, g);
        }
    }
};

namespace {

std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::shared_ptr<const Field::Impl>>& cache() {
    static std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::shared_ptr<const Field::Impl>> c;
    return c;
}

const std::uint64_t& code(const Scalar& s) {
    const auto* v = std::get_if<std::uint64_t>(&s);
    if (!v) throw InvalidInput("scalar is not a finite-field element");
    return *v;
}
const mpq_class& rat(const Scalar& s) {
    const auto* v = std::get_if<mpq_class>(&s);
    if (!v) throw InvalidInput("scalar is not a rational");
    return *v;
}
const GaussianRational& gauss(const Scalar& s) {
    const auto* v = std::get_if<GaussianRational>(&s);
    if (!v) throw InvalidInput("scalar is not a Gaussian rational");
    return *v;
}

std::string rat_str(const mpq_class& v) { return v.get_str(); }

}  // namespace

Field::Field() : Field(rationals()) {}

Field::Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Field Field::prime(std::uint64_t p) {
    if (p >= (1ull << 31)) throw InvalidInput("prime too large: " + std::to_string(p));
    if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto key = std::make_pair(p, std::vector<std::uint64_t>{});
    auto it = cache().find(key);
    if (it != cache().end()) return Field(it->second);
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::prime;
    impl->p = p;
    impl->k = 1;
    impl->q = p;
    impl->pw = {1, p};
    impl->build_tables();
    cache()[key] = impl;
    return Field(impl);
}

Field Field::extension(std::uint64_t p, const std::vector<std::uint64_t>& modulus) {
    Field base = prime(p);
    if (modulus.size() < 3) throw InvalidInput("extension modulus must have degree >= 2");
    if (modulus.back() != 1) throw InvalidInput("extension modulus must be monic");
    for (auto c : modulus)
        if (c >= p) throw InvalidInput("modulus coefficient out of range");
    const unsigned k = static_cast<unsigned>(modulus.size() - 1);
    std::uint64_t q = 1;
    std::vector<std::uint64_t> pw{1};
    for (unsigned i = 0; i < k; ++i) {
        if (q > (std::uint64_t{1} << 62) / p) throw InvalidInput("extension field too large");
        q *= p;
        pw.push_back(q);
    }
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = cache().find(std::make_pair(p, modulus));
        if (it != cache().end()) return Field(it->second);
    }
    std::vector<Scalar> cs(modulus.begin(), modulus.end());
    if (!is_irreducible(UniPoly(base, cs))) throw InvalidInput("extension modulus is reducible over GF(" + std::to_string(p) + ")");
    auto impl = std::make_shared<Impl>();
    impl->kind = FieldKind::extension;
    impl->p = p;
    impl->k = k;
    impl->q = q;
    impl->modulus = modulus;
    impl->pw = pw;
    impl->build_tables();
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto [it, inserted] = cache().emplace(std::make_pair(p, modulus), impl);
    return Field(it->second);
}

Field Field::galois(std::uint64_t p, unsigned degree) {
    if (degree == 0) throw InvalidInput("field degree must be positive");
    if (degree == 1) return prime(p);
    return extension(p, smallest_irreducible(p, degree));
}

Field Field::rationals() {
    static const Field f = [] {
        auto impl = std::make_shared<Impl>();
        impl->kind = FieldKind::rationals;
        return Field(std::shared_ptr<const Impl>(impl));
    }();
    return f;
}

Field Field::gaussian_rationals() {
    static const Field f = [] {
        auto impl = std::make_shared<Impl>();
        impl->kind = FieldKind::gaussian_rationals;
        return Field(std::shared_ptr<const Impl>(impl));
    }();
    return f;
}

FieldKind Field::kind() const { return impl_->kind; }
bool Field::is_finite() const { return impl_->q != 0; }
std::uint64_t Field::characteristic() const { return impl_->p; }
unsigned Field::degree() const { return impl_->k; }
std::uint64_t Field::order() const { return impl_->q; }
const std::vector<std::uint64_t>& Field::modulus() const { return impl_->modulus; }

std::string Field::name() const {
    switch (impl_->kind) {
        case FieldKind::prime:
            return "GF(" + std::to_string(impl_->p) + ")";
        case FieldKind::extension:
            return "GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->k) + ")";
        case FieldKind::rationals:
            return "Q";
        case FieldKind::gaussian_rationals:
            return "Q(i)";
    }
    return "?";
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long v) const {
    switch (impl_->kind) {
        case FieldKind::prime:
        case FieldKind::extension: {
            long long p = static_cast<long long>(impl_->p);
            long long r = v % p;
            if (r < 0) r += p;
            return static_cast<std::uint64_t>(r);
        }
        case FieldKind::rationals:
            return mpq_class(static_cast<long>(v));
        case FieldKind::gaussian_rationals:
            return GaussianRational{mpq_class(static_cast<long>(v)), mpq_class(0)};
    }
    return std::uint64_t{0};
}

Scalar Field::from_mpz(const mpz_class& v) const {
    if (is_finite()) {
        mpz_class r = v % mpz_class(static_cast<unsigned long>(impl_->p));
        if (r < 0) r += static_cast<unsigned long>(impl_->p);
        return static_cast<std::uint64_t>(r.get_ui());
    }
    if (impl_->kind == FieldKind::rationals) return mpq_class(v);
    return GaussianRational{mpq_class(v), mpq_class(0)};
}

Scalar Field::from_rational(const mpq_class& v) const {
    mpq_class c = v;
    c.canonicalize();
    if (impl_->kind == FieldKind::rationals) return c;
    if (impl_->kind == FieldKind::gaussian_rationals) return GaussianRational{c, mpq_class(0)};
    // finite: numerator * denominator^-1
    if (c.get_den() % static_cast<unsigned long>(impl_->p) == 0) throw InvalidInput("denominator divisible by the characteristic");
    return div(from_mpz(c.get_num()), from_mpz(c.get_den()));
}

Scalar Field::gaussian(const mpq_class& re, const mpq_class& im) const {
    if (impl_->kind != FieldKind::gaussian_rationals) throw InvalidInput("not a Gaussian-rational field");
    GaussianRational g{re, im};
    g.re.canonicalize();
    g.im.canonicalize();
    return g;
}

Scalar Field::generator() const {
    if (impl_->kind != FieldKind::extension) throw InvalidInput("generator() needs an extension field");
    return impl_->p;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    switch (impl_->kind) {
        case FieldKind::prime:
        case FieldKind::extension:
            return impl_->add(code(a), code(b));
        case FieldKind::rationals:
            return mpq_class(rat(a) + rat(b));
        case FieldKind::gaussian_rationals: {
            const auto &x = gauss(a), &y = gauss(b);
            return GaussianRational{x.re + y.re, x.im + y.im};
        }
    }
    return a;
}

Scalar Field::neg(const Scalar& a) const {
    switch (impl_->kind) {
        case FieldKind::prime:
        case FieldKind::extension:
            return impl_->neg(code(a));
        case FieldKind::rationals:
            return mpq_class(-rat(a));
        case FieldKind::gaussian_rationals: {
            const auto& x = gauss(a);
            return GaussianRational{-x.re, -x.im};
        }
    }
    return a;
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (is_finite()) return impl_->add(code(a), impl_->neg(code(b)));
    if (impl_->kind == FieldKind::rationals) return mpq_class(rat(a) - rat(b));
    const auto &x = gauss(a), &y = gauss(b);
    return GaussianRational{x.re - y.re, x.im - y.im};
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    switch (impl_->kind) {
        case FieldKind::prime:
        case FieldKind::extension:
            return impl_->mul(code(a), code(b));
        case FieldKind::rationals:
            return mpq_class(rat(a) * rat(b));
        case FieldKind::gaussian_rationals: {
            const auto &x = gauss(a), &y = gauss(b);
            return GaussianRational{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
        }
    }
    return a;
}

Scalar Field::inv(const Scalar& a) const {
    switch (impl_->kind) {
        case FieldKind::prime:
        case FieldKind::extension:
            return impl_->inv(code(a));
        case FieldKind::rationals: {
            if (rat(a) == 0) throw std::domain_error("division by zero in Q");
            return mpq_class(1 / rat(a));
        }
        case FieldKind::gaussian_rationals: {
            const auto& x = gauss(a);
            mpq_class n = x.re * x.re + x.im * x.im;
            if (n == 0) throw std::domain_error("division by zero in Q(i)");
            return GaussianRational{x.re / n, -x.im / n};
        }
    }
    return a;
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar Field::pow(const Scalar& a, std::uint64_t e) const {
    if (is_finite() && !impl_->exp_t.empty()) {
        std::uint64_t c = code(a);
        if (e == 0) return std::uint64_t{1};
        if (c == 0) return std::uint64_t{0};
        return static_cast<std::uint64_t>(impl_->exp_t[(impl_->log_t[c] * (e % (impl_->q - 1))) % (impl_->q - 1)]);
    }
    if (is_finite() && e >= impl_->q && !is_zero(a)) e = (e - 1) % (impl_->q - 1) + 1;
    Scalar r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

Scalar Field::pow(const Scalar& a, const mpz_class& e) const {
    if (e < 0) return pow(inv(a), mpz_class(-e));
    if (is_finite()) {
        if (e == 0) return one();
        if (is_zero(a)) return zero();
        mpz_class r = e % mpz_class(static_cast<unsigned long>(impl_->q - 1));
        return pow(a, static_cast<std::uint64_t>(r.get_ui()));
    }
    if (e.fits_ulong_p()) return pow(a, static_cast<std::uint64_t>(e.get_ui()));
    throw Unsupported("exponent too large for an infinite field");
}

bool Field::is_zero(const Scalar& a) const {
    if (is_finite()) return code(a) == 0;
    if (impl_->kind == FieldKind::rationals) return rat(a) == 0;
    const auto& x = gauss(a);
    return x.re == 0 && x.im == 0;
}

bool Field::is_one(const Scalar& a) const {
    if (is_finite()) return code(a) == 1;
    if (impl_->kind == FieldKind::rationals) return rat(a) == 1;
    const auto& x = gauss(a);
    return x.re == 1 && x.im == 0;
}

bool Field::equal(const Scalar& a, const Scalar& b) const { return a == b; }

int Field::compare(const Scalar& a, const Scalar& b) const {
    if (is_finite()) {
        auto x = code(a), y = code(b);
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    if (impl_->kind == FieldKind::rationals) return cmp(rat(a), rat(b)) < 0 ? -1 : (cmp(rat(a), rat(b)) > 0 ? 1 : 0);
    const auto &x = gauss(a), &y = gauss(b);
    int c = cmp(x.re, y.re);
    if (c == 0) c = cmp(x.im, y.im);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

Scalar Field::element(std::uint64_t index) const {
    if (!is_finite()) throw InvalidInput("element(index) needs a finite field");
    if (index >= impl_->q) throw InvalidInput("element index out of range");
    return index;
}

std::uint64_t Field::index_of(const Scalar& a) const {
    if (!is_finite()) throw InvalidInput("index_of needs a finite field");
    return code(a);
}

std::vector<std::uint64_t> Field::coefficients(const Scalar& a) const {
    if (!is_finite()) throw InvalidInput("coefficients() needs a finite field");
    return impl_->digits(code(a));
}

Scalar Field::from_coefficients(const std::vector<std::uint64_t>& c) const {
    if (!is_finite()) throw InvalidInput("from_coefficients needs a finite field");
    if (c.size() > impl_->k) throw InvalidInput("too many coefficients for " + name());
    std::vector<std::uint64_t> d(impl_->k, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= impl_->p) throw InvalidInput("coefficient out of range for " + name());
        d[i] = c[i];
    }
    return impl_->pack(d);
}

std::uint64_t Field::code_add(std::uint64_t a, std::uint64_t b) const { return impl_->add(a, b); }
std::uint64_t Field::code_sub(std::uint64_t a, std::uint64_t b) const { return impl_->add(a, impl_->neg(b)); }
std::uint64_t Field::code_neg(std::uint64_t a) const { return impl_->neg(a); }
std::uint64_t Field::code_mul(std::uint64_t a, std::uint64_t b) const { return impl_->mul(a, b); }
std::uint64_t Field::code_inv(std::uint64_t a) const { return impl_->inv(a); }

bool Field::contains(const Scalar& a) const {
    switch (impl_->kind) {
        case FieldKind::prime:
        case FieldKind::extension: {
            const auto* v = std::get_if<std::uint64_t>(&a);
            return v && *v < impl_->q;
        }
        case FieldKind::rationals:
            return std::holds_alternative<mpq_class>(a);
        case FieldKind::gaussian_rationals:
            return std::holds_alternative<GaussianRational>(a);
    }
    return false;
}

std::string Field::format(const Scalar& a) const {
    switch (impl_->kind) {
        case FieldKind::prime:
            return std::to_string(code(a));
        case FieldKind::extension: {
            auto d = impl_->digits(code(a));
            std::ostringstream os;
            os << '[';
            for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
            os << ']';
            return os.str();
        }
        case FieldKind::rationals:
            return rat_str(rat(a));
        case FieldKind::gaussian_rationals: {
            const auto& x = gauss(a);
            if (x.im == 0) return rat_str(x.re);
            std::string im = x.im == 1 ? "" : (x.im == -1 ? "-" : rat_str(x.im));
            if (x.re == 0) return im + "i";
            return rat_str(x.re) + (x.im > 0 ? "+" : "") + im + "i";
        }
    }
    return "?";
}

bool operator==(const Field& a, const Field& b) {
    if (a.impl_ == b.impl_) return true;
    return a.impl_->kind == b.impl_->kind && a.impl_->p == b.impl_->p && a.impl_->modulus == b.impl_->modulus;
}

// ---- FieldElem

namespace {
void same_field(const FieldElem& a, const FieldElem& b) {
    if (!(a.field() == b.field())) throw InvalidInput("field mismatch: " + a.field().name() + " vs " + b.field().name());
}
}  // namespace

FieldElem::FieldElem(Field f, Scalar v) : field_(std::move(f)), value_(std::move(v)) {
    if (!field_.contains(value_)) throw InvalidInput("value does not belong to " + field_.name());
    if (auto* q = std::get_if<mpq_class>(&value_)) q->canonicalize();
}

FieldElem FieldElem::from_int(const Field& f, long long v) { return FieldElem(f, f.from_int(v)); }
FieldElem FieldElem::inverse() const { return FieldElem(field_, field_.inv(value_)); }
FieldElem FieldElem::pow(std::uint64_t e) const { return FieldElem(field_, field_.pow(value_, e)); }

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    return FieldElem(a.field_, a.field_.add(a.value_, b.value_));
}
FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    return FieldElem(a.field_, a.field_.sub(a.value_, b.value_));
}
FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    return FieldElem(a.field_, a.field_.mul(a.value_, b.value_));
}
FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    same_field(a, b);
    return FieldElem(a.field_, a.field_.div(a.value_, b.value_));
}
FieldElem operator-(const FieldElem& a) { return FieldElem(a.field_, a.field_.neg(a.value_)); }
bool operator==(const FieldElem& a, const FieldElem& b) { return a.field_ == b.field_ && a.value_ == b.value_; }

// ---- FieldHom

FieldHom FieldHom::identity(const Field& f) { return FieldHom(f, Kind::identity, 0); }

FieldHom FieldHom::frobenius(const Field& f, unsigned e) {
    if (!f.is_finite()) throw InvalidInput("Frobenius needs a finite field");
    if (e >= f.degree()) throw InvalidInput("Frobenius power out of range");
    if (e == 0) return identity(f);
    return FieldHom(f, Kind::frobenius, e);
}

FieldHom FieldHom::conjugation(const Field& f) {
    if (f.kind() != FieldKind::gaussian_rationals) throw InvalidInput("conjugation needs Q(i)");
    return FieldHom(f, Kind::conjugation, 1);
}

bool FieldHom::is_identity() const { return kind_ == Kind::identity; }

Scalar FieldHom::apply(const Scalar& x) const {
    if (!field_.contains(x)) throw InvalidInput("value does not belong to " + field_.name());
    switch (kind_) {
        case Kind::identity:
            return x;
        case Kind::frobenius: {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(field_.characteristic()), power_);
            return field_.pow(x, e);
        }
        case Kind::conjugation: {
            const auto& g = std::get<GaussianRational>(x);
            return GaussianRational{g.re, -g.im};
        }
    }
    return x;
}

FieldElem FieldHom::apply(const FieldElem& x) const {
    if (!(x.field() == field_)) throw InvalidInput("field mismatch: hom on " + field_.name() + " applied to " + x.field().name());
    return FieldElem(field_, apply(x.value()));
}

FieldHom FieldHom::inverse() const {
    if (kind_ == Kind::frobenius) return frobenius(field_, field_.degree() - power_);
    return *this;
}

std::string FieldHom::describe() const {
    switch (kind_) {
        case Kind::identity:
            return "id";
        case Kind::frobenius:
            return "frobenius^" + std::to_string(power_);
        case Kind::conjugation:
            return "conjugation";
    }
    return "?";
}

bool operator==(const FieldHom& a, const FieldHom& b) {
    return a.field_ == b.field_ && a.kind_ == b.kind_ && a.power_ == b.power_;
}

std::vector<FieldHom> enumerate_homs(const Field& f) {
    std::vector<FieldHom> out{FieldHom::identity(f)};
    if (f.is_finite())
        for (unsigned e = 1; e < f.degree(); ++e) out.push_back(FieldHom::frobenius(f, e));
    if (f.kind() == FieldKind::gaussian_rationals) out.push_back(FieldHom::conjugation(f));
    return out;
}

// ---- FieldEmbedding

FieldEmbedding::FieldEmbedding(const Field& f) : source_(f), target_(f), generator_image_(f.zero()) {
    if (f.kind() == FieldKind::extension) generator_image_ = f.generator();
}

FieldEmbedding::FieldEmbedding(Field source, Field target, Scalar generator_image)
    : source_(std::move(source)), target_(std::move(target)), generator_image_(std::move(generator_image)) {
    if (!source_.is_finite() || !target_.is_finite()) {
        if (!(source_ == target_)) throw InvalidInput("embeddings between infinite fields must be the identity");
        return;
    }
    if (source_.characteristic() != target_.characteristic() || target_.degree() % source_.degree() != 0)
        throw InvalidInput(source_.name() + " does not embed in " + target_.name());
    if (source_.kind() == FieldKind::extension) {
        // the image must be a root of the source modulus
        Scalar acc = target_.zero();
        const auto& m = source_.modulus();
        for (std::size_t i = m.size(); i-- > 0;)
            acc = target_.add(target_.mul(acc, generator_image_), target_.from_int(static_cast<long long>(m[i])));
        if (!target_.is_zero(acc)) throw InvalidInput("generator image is not a root of the source modulus");
    }
}

Scalar FieldEmbedding::apply(const Scalar& x) const {
    if (source_ == target_) return x;
    if (source_.kind() == FieldKind::prime) return target_.from_int(static_cast<long long>(std::get<std::uint64_t>(x)));
    auto c = source_.coefficients(x);
    Scalar acc = target_.zero();
    for (std::size_t i = c.size(); i-- > 0;)
        acc = target_.add(target_.mul(acc, generator_image_), target_.from_int(static_cast<long long>(c[i])));
    return acc;
}

FieldElem FieldEmbedding::apply(const FieldElem& x) const {
    if (!(x.field() == source_)) throw InvalidInput("field mismatch in embedding");
    return FieldElem(target_, apply(x.value()));
}

}  // namespace preserverlab
