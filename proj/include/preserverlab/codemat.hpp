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

#include <cstdint>
#include <vector>

#include "preserverlab/errors.hpp"
#include "preserverlab/field.hpp"
#include "preserverlab/matrix.hpp"

namespace preserverlab {

/// Square matrix over a finite field held as raw element codes, row-major.
/// Used by the enumeration loops; ExactMatrix is the public value type.
struct CodeMatrix {
    std::size_t n = 0;
    std::vector<std::uint64_t> e;

    bool is_zero() const {
        for (auto v : e)
            if (v) return false;
        return true;
    }
    friend bool operator==(const CodeMatrix& a, const CodeMatrix& b) { return a.n == b.n && a.e == b.e; }
};

class CodeOps {
   public:
    explicit CodeOps(Field f) : f_(std::move(f)) {
        if (!f_.is_finite()) throw InvalidInput("code arithmetic needs a finite field");
    }

    const Field& field() const { return f_; }

    CodeMatrix zero(std::size_t n) const { return {n, std::vector<std::uint64_t>(n * n, 0)}; }
    CodeMatrix identity(std::size_t n) const {
        CodeMatrix m = zero(n);
        for (std::size_t i = 0; i < n; ++i) m.e[i * n + i] = 1;
        return m;
    }
    CodeMatrix from(const ExactMatrix& x) const {
        if (!x.is_square()) throw InvalidInput("code matrices are square");
        if (!(x.field() == f_)) throw InvalidInput("field mismatch in code conversion");
        CodeMatrix m{x.rows(), {}};
        m.e.reserve(x.entries().size());
        for (auto& v : x.entries()) m.e.push_back(f_.index_of(v));
        return m;
    }
    ExactMatrix to(const CodeMatrix& m) const {
        std::vector<Scalar> e;
        e.reserve(m.e.size());
        for (auto v : m.e) e.push_back(v);
        return ExactMatrix(f_, m.n, m.n, std::move(e));
    }
    /// Same digit layout as matrix_at.
    void at_index(std::size_t n, std::uint64_t index, CodeMatrix& out) const {
        const std::uint64_t q = f_.order();
        out.n = n;
        out.e.resize(n * n);
        for (std::size_t k = 0; k < n * n; ++k) {
            out.e[k] = index % q;
            index /= q;
        }
    }

    void mul(const CodeMatrix& a, const CodeMatrix& b, CodeMatrix& out) const {
        const std::size_t n = a.n;
        out.n = n;
        out.e.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const std::uint64_t x = a.e[i * n + k];
                if (!x) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    const std::uint64_t y = b.e[k * n + j];
                    if (!y) continue;
                    out.e[i * n + j] = f_.code_add(out.e[i * n + j], f_.code_mul(x, y));
                }
            }
    }
    CodeMatrix mul(const CodeMatrix& a, const CodeMatrix& b) const {
        CodeMatrix out;
        mul(a, b, out);
        return out;
    }
    /// acc += c * x
    void add_scaled(CodeMatrix& acc, const CodeMatrix& x, std::uint64_t c) const {
        if (!c) return;
        for (std::size_t i = 0; i < acc.e.size(); ++i)
            if (x.e[i]) acc.e[i] = f_.code_add(acc.e[i], c == 1 ? x.e[i] : f_.code_mul(c, x.e[i]));
    }
    CodeMatrix add(const CodeMatrix& a, const CodeMatrix& b) const {
        CodeMatrix r = a;
        add_scaled(r, b, 1);
        return r;
    }
    CodeMatrix sub(const CodeMatrix& a, const CodeMatrix& b) const {
        CodeMatrix r = a;
        add_scaled(r, b, f_.code_neg(1));
        return r;
    }
    CodeMatrix scale(const CodeMatrix& a, std::uint64_t c) const {
        CodeMatrix r = zero(a.n);
        add_scaled(r, a, c);
        return r;
    }

   private:
    Field f_;
};

}  // namespace preserverlab
