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

#ifndef ELLORTH_FIELDS_HPP
#define ELLORTH_FIELDS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellorth {

// Seed used whenever a routine needs randomness and the caller gives none.
inline constexpr uint64_t kDefaultSeed = 0x5eed'0f'e11'0a7ULL;

using Rng = std::mt19937_64;

bool is_prime_u64(uint64_t n);
uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t mod);

// Prime field F_p with elements stored as residues in [0, p).
class PrimeField {
public:
    using Elem = uint32_t;

    PrimeField() = default;
    explicit PrimeField(uint32_t p);

    uint32_t p() const noexcept { return p_; }
    uint32_t characteristic() const noexcept { return p_; }
    int degree() const noexcept { return 1; }
    mpz_class order() const { return mpz_class(p_); }

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }
    Elem from_int(int64_t v) const noexcept {
        int64_t r = v % static_cast<int64_t>(p_);
        return static_cast<Elem>(r < 0 ? r + p_ : r);
    }
    Elem from_mpz(const mpz_class& v) const;
    Elem from_rational(const mpq_class& v) const;  // throws if the denominator vanishes

    bool is_zero(Elem a) const noexcept { return a == 0; }
    bool is_one(Elem a) const noexcept { return a == 1; }
    bool eq(Elem a, Elem b) const noexcept { return a == b; }
    Elem add(Elem a, Elem b) const noexcept {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept {
        return static_cast<Elem>(static_cast<uint64_t>(a) * b % p_);
    }
    Elem pow(Elem a, uint64_t e) const noexcept { return static_cast<Elem>(powmod_u64(a, e, p_)); }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pth_root(Elem a) const noexcept { return a; }

    // +1, -1 or 0.
    int legendre(Elem a) const noexcept;

    // Enumeration by index in [0, p).
    Elem element(uint64_t index) const noexcept { return static_cast<Elem>(index); }
    uint64_t index_of(Elem a) const noexcept { return a; }
    Elem random(Rng& rng) const { return static_cast<Elem>(rng() % p_); }

    int64_t to_signed(Elem a) const noexcept {
        return a > p_ / 2 ? static_cast<int64_t>(a) - p_ : static_cast<int64_t>(a);
    }
    std::string to_string(Elem a) const { return std::to_string(a); }

    bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

private:
    uint32_t p_ = 0;
};

// F_{p^d} = F_p[z] / (modulus). Elements are coefficient vectors of length d.
class ExtField {
public:
    using Elem = std::vector<uint32_t>;

    ExtField() = default;
    // modulus: monic, ascending coefficients, size d+1; irreducibility is the caller's contract.
    ExtField(PrimeField base, std::vector<uint32_t> modulus);

    // Deterministic irreducible modulus of degree d (seeded search, certified).
    static ExtField build(uint32_t p, int d, uint64_t seed = kDefaultSeed);

    const PrimeField& base() const { return data_->base; }
    uint32_t characteristic() const { return data_->base.p(); }
    int degree() const { return data_->d; }
    mpz_class order() const;
    const std::vector<uint32_t>& modulus() const { return data_->modulus; }

    Elem zero() const { return Elem(data_->d, 0); }
    Elem one() const {
        Elem e(data_->d, 0);
        e[0] = 1;
        return e;
    }
    Elem from_int(int64_t v) const {
        Elem e(data_->d, 0);
        e[0] = data_->base.from_int(v);
        return e;
    }
    Elem from_base(uint32_t v) const {
        Elem e(data_->d, 0);
        e[0] = v;
        return e;
    }
    // Image of the generator z.
    Elem generator() const;

    bool is_zero(const Elem& a) const;
    bool is_one(const Elem& a) const;
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, const mpz_class& e) const;
    Elem pow(const Elem& a, uint64_t e) const { return pow(a, mpz_class(static_cast<unsigned long>(e))); }
    Elem inv(const Elem& a) const;
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem pth_root(const Elem& a) const;
    Elem frobenius(const Elem& a) const { return pow(a, static_cast<uint64_t>(characteristic())); }
    // Norm down to F_p.
    uint32_t norm(const Elem& a) const;
    int legendre(const Elem& a) const;

    // Base-p digit enumeration; valid while order() fits in 64 bits.
    Elem element(uint64_t index) const;
    uint64_t index_of(const Elem& a) const;
    Elem random(Rng& rng) const;
    std::string to_string(const Elem& a) const;

    bool operator==(const ExtField& o) const;

private:
    struct Data {
        PrimeField base;
        int d = 0;
        std::vector<uint32_t> modulus;
    };
    std::shared_ptr<const Data> data_;
};

// The rationals, used for exact family data before reduction mod p.
class RationalField {
public:
    using Elem = mpq_class;

    mpz_class order() const { return 0; }
    int degree() const noexcept { return 1; }
    uint32_t characteristic() const noexcept { return 0; }
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(int64_t v) const { return mpq_class(static_cast<long>(v)); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool is_one(const Elem& a) const { return a == 1; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const;
    Elem div(const Elem& a, const Elem& b) const { return a * inv(b); }
    Elem pth_root(const Elem& a) const { return a; }  // characteristic 0: never reached
    std::string to_string(const Elem& a) const { return a.get_str(); }
    bool operator==(const RationalField&) const noexcept { return true; }
};

// The two-element group F^x / (F^x)^2.
enum class SquareClass { trivial, nontrivial };

inline SquareClass operator*(SquareClass a, SquareClass b) noexcept {
    return a == b ? SquareClass::trivial : SquareClass::nontrivial;
}
inline SquareClass square_class_from_sign(int legendre_value) {
    if (legendre_value == 0) throw std::invalid_argument("square class of zero");
    return legendre_value > 0 ? SquareClass::trivial : SquareClass::nontrivial;
}
inline const char* to_string(SquareClass c) noexcept {
    return c == SquareClass::trivial ? "trivial" : "nontrivial";
}

template <class F>
SquareClass square_class(const F& field, const typename F::Elem& a) {
    return square_class_from_sign(field.legendre(a));
}

// Class of r mod ell; rejects ell dividing the numerator or denominator.
SquareClass square_class_of_rational(const mpq_class& r, uint32_t ell);

// Legendre symbol of an integer or rational modulo a prime (0 if it vanishes).
int legendre_mod(const mpz_class& a, uint32_t p);
int legendre_mod(const mpq_class& a, uint32_t p);

}  // namespace ellorth

#endif
