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

#include "ellorth/fields.hpp"

#include <sstream>

#include "ellorth/poly.hpp"

namespace ellorth {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t mod) {
    unsigned __int128 r = 1 % mod, b = base % mod;
    while (exp) {
        if (exp & 1) r = r * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<uint64_t>(r);
}

// ---------------------------------------------------------------- PrimeField

PrimeField::PrimeField(uint32_t p) : p_(p) {
    if (p < 5 || !is_prime_u64(p)) throw std::invalid_argument("PrimeField: need a prime >= 5, got " + std::to_string(p));
}

PrimeField::Elem PrimeField::from_mpz(const mpz_class& v) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
    return static_cast<Elem>(r.get_ui());
}

PrimeField::Elem PrimeField::from_rational(const mpq_class& v) const {
    Elem d = from_mpz(v.get_den());
    if (d == 0) throw std::domain_error("denominator vanishes mod " + std::to_string(p_));
    return div(from_mpz(v.get_num()), d);
}

PrimeField::Elem PrimeField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p_ - 2);
}

int PrimeField::legendre(Elem a) const noexcept {
    if (a == 0) return 0;
    return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
}

// ---------------------------------------------------------------- ExtField

ExtField::ExtField(PrimeField base, std::vector<uint32_t> modulus) {
    if (modulus.size() < 2 || modulus.back() != 1) throw std::invalid_argument("ExtField: modulus must be monic of degree >= 1");
    auto d = std::make_shared<Data>();
    d->base = base;
    d->d = static_cast<int>(modulus.size()) - 1;
    d->modulus = std::move(modulus);
    data_ = std::move(d);
}

ExtField ExtField::build(uint32_t p, int d, uint64_t seed) {
    if (d < 1) throw std::invalid_argument("build_extension: degree must be >= 1");
    PrimeField fp(p);
    if (d == 1) return ExtField(fp, {0, 1});
    Rng rng(seed ^ (static_cast<uint64_t>(p) << 32) ^ static_cast<uint64_t>(d));
    for (;;) {
        std::vector<uint32_t> c(d + 1);
        for (int i = 0; i < d; ++i) c[i] = fp.random(rng);
        c[d] = 1;
        if (c[0] == 0) continue;
        PolyFp cand(fp, c);
        if (is_irreducible(cand)) return ExtField(fp, std::move(c));
    }
}

mpz_class ExtField::order() const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), data_->base.p(), static_cast<unsigned long>(data_->d));
    return r;
}

ExtField::Elem ExtField::generator() const {
    Elem e(data_->d, 0);
    if (data_->d == 1)
        e[0] = data_->base.neg(data_->modulus[0]);
    else
        e[1] = 1;
    return e;
}

bool ExtField::is_zero(const Elem& a) const {
    for (auto v : a)
        if (v) return false;
    return true;
}

bool ExtField::is_one(const Elem& a) const {
    if (a.empty() || a[0] != 1) return false;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i]) return false;
    return true;
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = data_->base.add(a[i], b[i]);
    return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = data_->base.sub(a[i], b[i]);
    return r;
}

ExtField::Elem ExtField::neg(const Elem& a) const {
    Elem r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = data_->base.neg(a[i]);
    return r;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
    const int d = data_->d;
    const uint64_t p = data_->base.p();
    const auto& m = data_->modulus;
    std::vector<uint64_t> t(2 * d - 1, 0);
    for (int i = 0; i < d; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < d; ++j) t[i + j] = (t[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p;
    }
    for (int i = 2 * d - 2; i >= d; --i) {
        const uint64_t c = t[i];
        if (!c) continue;
        for (int j = 0; j < d; ++j) t[i - d + j] = (t[i - d + j] + (p - m[j]) * c) % p;
        t[i] = 0;
    }
    Elem r(d);
    for (int i = 0; i < d; ++i) r[i] = static_cast<uint32_t>(t[i]);
    return r;
}

ExtField::Elem ExtField::pow(const Elem& a, const mpz_class& e) const {
    Elem r = one();
    if (sgn(e) == 0) return r;
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
    }
    return r;
}

ExtField::Elem ExtField::inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero in extension field");
    const PrimeField& fp = data_->base;
    PolyFp m(fp, data_->modulus);
    PolyFp x(fp, a);
    auto [g, s, t] = xgcd(x, m);
    (void)t;
    Elem r(data_->d, 0);
    for (int i = 0; i <= s.degree(); ++i) r[i] = s.coeff(i);
    return r;
}

ExtField::Elem ExtField::pth_root(const Elem& a) const {
    // a^(p^(d-1))
    Elem r = a;
    for (int i = 0; i + 1 < data_->d; ++i) r = frobenius(r);
    return r;
}

uint32_t ExtField::norm(const Elem& a) const {
    Elem r = a, f = a;
    for (int i = 1; i < data_->d; ++i) {
        f = frobenius(f);
        r = mul(r, f);
    }
    return r[0];
}

int ExtField::legendre(const Elem& a) const {
    if (is_zero(a)) return 0;
    return data_->base.legendre(norm(a));
}

ExtField::Elem ExtField::element(uint64_t index) const {
    Elem e(data_->d, 0);
    const uint64_t p = data_->base.p();
    for (int i = 0; i < data_->d; ++i) {
        e[i] = static_cast<uint32_t>(index % p);
        index /= p;
    }
    return e;
}

uint64_t ExtField::index_of(const Elem& a) const {
    uint64_t r = 0;
    const uint64_t p = data_->base.p();
    for (int i = data_->d - 1; i >= 0; --i) r = r * p + a[i];
    return r;
}

ExtField::Elem ExtField::random(Rng& rng) const {
    Elem e(data_->d);
    for (auto& v : e) v = data_->base.random(rng);
    return e;
}

std::string ExtField::to_string(const Elem& a) const {
    if (data_->d == 1) return std::to_string(a[0]);
    PolyFp p(data_->base, a);
    return p.to_string("z");
}

bool ExtField::operator==(const ExtField& o) const {
    if (data_ == o.data_) return true;
    if (!data_ || !o.data_) return false;
    return data_->base == o.data_->base && data_->modulus == o.data_->modulus;
}

// ---------------------------------------------------------------- RationalField

RationalField::Elem RationalField::inv(const Elem& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero rational");
    return 1 / a;
}

// ---------------------------------------------------------------- square classes

int legendre_mod(const mpz_class& a, uint32_t p) {
    PrimeField f(p);
    return f.legendre(f.from_mpz(a));
}

int legendre_mod(const mpq_class& a, uint32_t p) {
    PrimeField f(p);
    auto d = f.from_mpz(a.get_den());
    if (d == 0) throw std::domain_error("legendre_mod: denominator divisible by p");
    return f.legendre(f.from_mpz(a.get_num())) * f.legendre(d);
}

SquareClass square_class_of_rational(const mpq_class& r, uint32_t ell) {
    PrimeField f(ell);
    auto n = f.from_mpz(r.get_num());
    auto d = f.from_mpz(r.get_den());
    if (n == 0 || d == 0) throw std::domain_error("square_class_of_rational: ell divides numerator or denominator");
    return square_class_from_sign(f.legendre(n) * f.legendre(d));
}

// ---------------------------------------------------------------- helpers

PolyFp reduce_mod_p(const PolyQ& f, const PrimeField& fp) {
    std::vector<uint32_t> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) c.push_back(fp.from_rational(a));
    return PolyFp(fp, std::move(c));
}

PolyQ polyq_from_ints(const std::vector<int64_t>& v) {
    return PolyQ::from_ints(RationalField{}, v);
}

}  // namespace ellorth
