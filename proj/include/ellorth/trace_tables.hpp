/*
   Copyright 2026 The ellorth Authors

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

#ifndef ELLORTH_TRACE_TABLES_HPP
#define ELLORTH_TRACE_TABLES_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace ellorth {

// F_{p^k} in Zech-logarithm form. Nonzero elements are stored as discrete
// logs in [0, Q-1) to a primitive generator; zero is the sentinel Q-1.
// Additive codes are the base-p digit vectors of the polynomial basis.
class LogField {
public:
    LogField(uint32_t p, int k);

    uint32_t p() const { return p_; }
    int k() const { return k_; }
    uint64_t order() const { return q_; }
    uint32_t zero() const { return zero_; }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == zero_ || b == zero_) return zero_;
        uint64_t s = static_cast<uint64_t>(a) + b;
        return static_cast<uint32_t>(s >= m_ ? s - m_ : s);
    }
    uint32_t add(uint32_t a, uint32_t b) const {
        if (a == zero_) return b;
        if (b == zero_) return a;
        // a + b = a (1 + b/a)
        uint32_t d = b >= a ? b - a : static_cast<uint32_t>(b + m_ - a);
        uint32_t z = zech_[d];
        return z == zero_ ? zero_ : mul(a, z);
    }
    uint32_t neg(uint32_t a) const { return a == zero_ ? zero_ : mul(a, half_); }
    uint32_t pow_small(uint32_t a, uint32_t e) const {
        if (a == zero_) return e == 0 ? 0 : zero_;
        return static_cast<uint32_t>(static_cast<uint64_t>(a) * e % m_);
    }
    // Embedding of an integer mod p.
    uint32_t from_int(int64_t v) const;
    uint32_t code_of(uint32_t log) const { return log == zero_ ? 0 : exp_[log]; }
    uint32_t log_of(uint32_t code) const { return log_[code]; }
    int chi(uint32_t a) const { return a == zero_ ? 0 : ((a & 1u) ? -1 : 1); }

private:
    uint32_t p_;
    int k_;
    uint64_t q_, m_;
    uint32_t zero_, half_;
    std::vector<uint32_t> exp_, log_, zech_;
};

// Tables T_c(b) = sum_x chi(x^3 + c x + b) for c in {0, 1, g} and all b,
// indexed by additive code of b. Computed by a transform over (Z/p)^k.
class CubicSumTables {
public:
    explicit CubicSumTables(std::shared_ptr<const LogField> field);

    const LogField& field() const { return *field_; }
    // sum_x chi(x^3 + A x + B) for elements in log form.
    int64_t character_sum(uint32_t A, uint32_t B) const;

private:
    std::shared_ptr<const LogField> field_;
    std::vector<int32_t> t0_, t1_, tg_;
};

// Process-wide cache keyed by (p, k).
std::shared_ptr<const LogField> log_field(uint32_t p, int k);
std::shared_ptr<const CubicSumTables> cubic_sum_tables(uint32_t p, int k);
void clear_trace_table_cache();

}  // namespace ellorth

#endif
