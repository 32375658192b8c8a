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

#include "ellorth/trace_tables.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "ellorth/fields.hpp"
#include "ellorth/parallel.hpp"
#include "ellorth/poly.hpp"

namespace ellorth {

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Monic modulus of degree k whose root generates the multiplicative group.
std::vector<uint32_t> primitive_modulus(uint32_t p, int k) {
    PrimeField fp(p);
    uint64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    const auto factors = prime_factors(q - 1);
    Rng rng(kDefaultSeed ^ (static_cast<uint64_t>(p) * 1000003ULL + k));
    for (;;) {
        std::vector<uint32_t> c(k + 1);
        for (int i = 0; i < k; ++i) c[i] = fp.random(rng);
        c[k] = 1;
        if (c[0] == 0) continue;
        if (!is_irreducible(PolyFp(fp, c))) continue;
        ExtField K(fp, c);
        auto z = K.generator();
        bool primitive = true;
        for (auto r : factors) {
            if (K.is_one(K.pow(z, mpz_class(static_cast<unsigned long>((q - 1) / r))))) {
                primitive = false;
                break;
            }
        }
        if (primitive) return c;
    }
}

uint32_t ntt_prime_for(uint32_t p, uint64_t min_value) {
    // largest prime P = 1 + p*m below 2^31 with P > min_value
    uint64_t m = ((1ULL << 31) - 2) / p;
    for (; m > 0; --m) {
        uint64_t P = 1 + p * m;
        if (P <= min_value) break;
        if (is_prime_u64(P)) return static_cast<uint32_t>(P);
    }
    throw std::runtime_error("no transform prime available");
}

// In-place DFT over (Z/p)^k with respect to base-p digit indexing.
void transform(std::vector<uint32_t>& a, uint32_t p, int k, uint32_t P, uint32_t omega, int jobs) {
    std::vector<uint64_t> pw(p);
    pw[0] = 1;
    for (uint32_t i = 1; i < p; ++i) pw[i] = pw[i - 1] * omega % P;
    const size_t Q = a.size();
    size_t stride = 1;
    for (int dim = 0; dim < k; ++dim) {
        const size_t block = stride * p;
        const size_t groups = Q / p;
        parallel_chunks(groups, jobs, [&](size_t gb, size_t ge, size_t) {
            std::vector<uint64_t> x(p);
            for (size_t g = gb; g < ge; ++g) {
                const size_t hi = g / stride, lo = g % stride;
                const size_t base = hi * block + lo;
                for (uint32_t m = 0; m < p; ++m) x[m] = a[base + m * stride];
                for (uint32_t j = 0; j < p; ++j) {
                    unsigned __int128 acc = 0;
                    uint32_t e = 0;
                    for (uint32_t m = 0; m < p; ++m) {
                        acc += static_cast<unsigned __int128>(x[m]) * pw[e];
                        e += j;
                        if (e >= p) e -= p;
                    }
                    a[base + j * stride] = static_cast<uint32_t>(acc % P);
                }
            }
        });
        stride = block;
    }
}

}  // namespace

LogField::LogField(uint32_t p, int k) : p_(p), k_(k) {
    if (k < 1) throw std::invalid_argument("LogField: k >= 1");
    q_ = 1;
    for (int i = 0; i < k; ++i) q_ *= p;
    if (q_ > (1ULL << 31)) throw std::invalid_argument("LogField: field too large for tables");
    m_ = q_ - 1;
    zero_ = static_cast<uint32_t>(m_);
    half_ = static_cast<uint32_t>(m_ / 2);
    const auto mod = primitive_modulus(p, k);
    exp_.assign(m_, 0);
    log_.assign(q_, zero_);
    std::vector<uint32_t> d(k, 0);
    d[0] = 1;
    std::vector<uint64_t> place(k);
    place[0] = 1;
    for (int i = 1; i < k; ++i) place[i] = place[i - 1] * p;
    for (uint64_t i = 0; i < m_; ++i) {
        uint64_t code = 0;
        for (int j = 0; j < k; ++j) code += d[j] * place[j];
        if (log_[code] != zero_) throw std::logic_error("LogField: generator is not primitive");
        exp_[i] = static_cast<uint32_t>(code);
        log_[code] = static_cast<uint32_t>(i);
        // multiply by z modulo the modulus
        const uint32_t top = d[k - 1];
        for (int j = k - 1; j >= 1; --j) d[j] = d[j - 1];
        d[0] = 0;
        if (top) {
            for (int j = 0; j < k; ++j) d[j] = static_cast<uint32_t>((d[j] + static_cast<uint64_t>(p - mod[j]) * top) % p);
        }
    }
    zech_.assign(m_, zero_);
    for (uint64_t i = 0; i < m_; ++i) {
        uint32_t c = exp_[i];
        uint32_t c1 = (c % p == p - 1) ? c - (p - 1) : c + 1;
        zech_[i] = log_[c1];
    }
}

uint32_t LogField::from_int(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return log_[static_cast<uint64_t>(r)];
}

CubicSumTables::CubicSumTables(std::shared_ptr<const LogField> field) : field_(std::move(field)) {
    const LogField& K = *field_;
    const uint32_t p = K.p();
    const int k = K.k();
    const uint64_t Q = K.order();
    const uint32_t zero = K.zero();
    const uint32_t P = ntt_prime_for(p, 4 * Q + 8);
    uint32_t omega = 1;
    for (uint64_t g = 2;; ++g) {
        uint64_t w = powmod_u64(g, (P - 1) / p, P);
        if (w != 1) {
            omega = static_cast<uint32_t>(w);
            break;
        }
    }
    const uint32_t omega_inv = static_cast<uint32_t>(powmod_u64(omega, P - 2, P));
    const uint64_t q_inv = powmod_u64(Q % P, P - 2, P);
    const int jobs = default_jobs();

    std::vector<uint32_t> X(Q);
    for (uint64_t c = 0; c < Q; ++c) {
        int s = K.chi(K.log_of(static_cast<uint32_t>(c)));
        X[c] = s == 0 ? 0 : (s > 0 ? 1 : P - 1);
    }
    transform(X, p, k, P, omega, jobs);

    auto table_for = [&](uint32_t c_log) {
        // counts of w = -(x^3 + c x)
        std::vector<uint32_t> cnt(Q, 0);
        for (uint64_t i = 0; i <= K.order() - 1; ++i) {
            uint32_t x = i == K.order() - 1 ? zero : static_cast<uint32_t>(i);
            uint32_t v = K.add(K.pow_small(x, 3), K.mul(c_log, x));
            cnt[K.code_of(K.neg(v))]++;
        }
        transform(cnt, p, k, P, omega, jobs);
        for (uint64_t c = 0; c < Q; ++c) cnt[c] = static_cast<uint32_t>(static_cast<uint64_t>(cnt[c]) * X[c] % P);
        transform(cnt, p, k, P, omega_inv, jobs);
        std::vector<int32_t> out(Q);
        for (uint64_t c = 0; c < Q; ++c) {
            uint64_t v = static_cast<uint64_t>(cnt[c]) * q_inv % P;
            out[c] = v > P / 2 ? static_cast<int32_t>(static_cast<int64_t>(v) - P) : static_cast<int32_t>(v);
        }
        return out;
    };
    t1_ = table_for(0);  // log 0 is the element 1
    tg_ = table_for(1);  // log 1 is the generator
    // A = 0: reduce B modulo cubes; at most three representatives
    t0_.assign(3, 0);
    for (uint32_t r = 0; r < 3; ++r) {
        int64_t s = 0;
        for (uint64_t i = 0; i < Q; ++i) {
            uint32_t x = i == Q - 1 ? zero : static_cast<uint32_t>(i);
            s += K.chi(K.add(K.pow_small(x, 3), r));
        }
        t0_[r] = static_cast<int32_t>(s);
    }
}

int64_t CubicSumTables::character_sum(uint32_t A, uint32_t B) const {
    const LogField& K = *field_;
    const uint64_t m = K.order() - 1;
    const uint32_t zero = K.zero();
    if (A == zero) {
        if (B == zero) return 0;
        if (m % 3 != 0) {
            // every element is a cube: B = u^3
            // log u = B / 3 mod m, computed via the inverse of 3 mod m
            uint64_t inv3 = 0;
            for (uint64_t t = 1; t < 3; ++t)
                if ((t * m + 1) % 3 == 0) inv3 = (t * m + 1) / 3;
            uint64_t lu = static_cast<uint64_t>(B) * inv3 % m;
            return ((lu & 1) ? -1 : 1) * static_cast<int64_t>(t0_[0]);
        }
        const uint32_t r = B % 3;
        const uint64_t lu = (B - r) / 3;
        return ((lu & 1) ? -1 : 1) * static_cast<int64_t>(t0_[r]);
    }
    const uint64_t lu = A / 2;  // A even: A/u^2 = 1; odd: A/u^2 = g
    const auto& table = (A & 1u) ? tg_ : t1_;
    uint32_t code = 0;
    if (B != zero) {
        uint64_t lb = (static_cast<uint64_t>(B) + 3 * m - 3 * lu % m) % m;
        code = K.code_of(static_cast<uint32_t>(lb));
    }
    return ((lu & 1) ? -1 : 1) * static_cast<int64_t>(table[code]);
}

namespace {
std::mutex cache_mu;
std::map<std::pair<uint32_t, int>, std::shared_ptr<const LogField>> field_cache;
std::map<std::pair<uint32_t, int>, std::shared_ptr<const CubicSumTables>> table_cache;
}  // namespace

std::shared_ptr<const LogField> log_field(uint32_t p, int k) {
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        auto it = field_cache.find({p, k});
        if (it != field_cache.end()) return it->second;
    }
    auto f = std::make_shared<const LogField>(p, k);
    std::lock_guard<std::mutex> lk(cache_mu);
    return field_cache.emplace(std::make_pair(p, k), f).first->second;
}

std::shared_ptr<const CubicSumTables> cubic_sum_tables(uint32_t p, int k) {
    static std::mutex build_mu;  // one build at a time; builds are internally parallel
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        auto it = table_cache.find({p, k});
        if (it != table_cache.end()) return it->second;
    }
    std::lock_guard<std::mutex> build(build_mu);
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        auto it = table_cache.find({p, k});
        if (it != table_cache.end()) return it->second;
    }
    auto t = std::make_shared<const CubicSumTables>(log_field(p, k));
    std::lock_guard<std::mutex> lk(cache_mu);
    return table_cache.emplace(std::make_pair(p, k), t).first->second;
}

void clear_trace_table_cache() {
    std::lock_guard<std::mutex> lk(cache_mu);
    field_cache.clear();
    table_cache.clear();
}

}  // namespace ellorth
