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

#include "ellorth/places.hpp"

namespace ellorth {

Place Place::finite(PolyFp uniformizer) {
    if (uniformizer.degree() < 1 || !uniformizer.is_monic()) throw std::invalid_argument("Place: uniformizer must be monic of degree >= 1");
    if (!is_irreducible(uniformizer)) throw std::invalid_argument("Place: uniformizer is reducible: " + uniformizer.to_string());
    PrimeField f = uniformizer.field();
    return Place(f, std::move(uniformizer), false);
}

Place Place::infinity(const PrimeField& field) { return Place(field, PolyFp::x(field), true); }

std::string Place::to_string() const {
    if (infinite_) return "inf";
    if (pi_.degree() == 1) {
        // t - a is reported as the point a
        return std::to_string(field_.neg(pi_.coeff(0)));
    }
    return "(" + pi_.to_string() + ")";
}

bool Place::operator<(const Place& o) const {
    if (infinite_ != o.infinite_) return infinite_;
    return pi_ < o.pi_;
}

RationalFunction::RationalFunction(PolyFp num, PolyFp den) {
    if (den.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    if (num.is_zero()) {
        num_ = std::move(num);
        den_ = PolyFp::one(den.field());
        return;
    }
    PolyFp g = gcd(num, den);
    num = num / g;
    den = den / g;
    auto li = den.field().inv(den.lead());
    num_ = num.scaled(li);
    den_ = den.scaled(li);
}

RationalFunction::RationalFunction(PolyFp num) : num_(std::move(num)), den_(PolyFp::one(num_.field())) {}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

int valuation(const PolyFp& f, const Place& x) {
    if (f.is_zero()) return kInfiniteValuation;
    if (x.is_infinity()) return -f.degree();
    return multiplicity(f, x.uniformizer());
}

int valuation(const RationalFunction& f, const Place& x) {
    if (f.is_zero()) return kInfiniteValuation;
    return valuation(f.num(), x) - valuation(f.den(), x);
}

std::vector<PolyFp> irreducibles_of_degree(const PrimeField& field, int d) {
    std::vector<PolyFp> out;
    const uint64_t p = field.p();
    uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    std::vector<uint32_t> c(d + 1, 0);
    c[d] = 1;
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t r = idx;
        // most significant coefficient varies slowest -> graded lexicographic order
        for (int i = 0; i < d; ++i) {
            c[i] = static_cast<uint32_t>(r % p);
            r /= p;
        }
        PolyFp cand(field, c);
        if (d == 1 || (c[0] != 0 && is_irreducible(cand))) out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Place> enumerate_places(const PrimeField& field, int d_max) {
    std::vector<Place> out;
    out.push_back(Place::infinity(field));
    for (int d = 1; d <= d_max; ++d)
        for (auto& pi : irreducibles_of_degree(field, d)) out.push_back(Place::finite(std::move(pi)));
    return out;
}

static int mobius(int n) {
    int r = 1;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        n /= d;
        if (n % d == 0) return 0;
        r = -r;
    }
    if (n > 1) r = -r;
    return r;
}

uint64_t necklace_count(uint64_t q, int d) {
    int64_t s = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        int64_t pw = 1;
        for (int i = 0; i < d / e; ++i) pw *= static_cast<int64_t>(q);
        s += mobius(e) * pw;
    }
    return static_cast<uint64_t>(s / d);
}

ExtField residue_field(const Place& x) {
    return ExtField(x.field(), x.uniformizer().coeffs());
}

ExtField::Elem residue_of(const PolyFp& f, const ExtField& residue, const PolyFp& pi) {
    PolyFp r = f % pi;
    ExtField::Elem e = residue.zero();
    for (int i = 0; i <= r.degree(); ++i) e[i] = r.coeff(i);
    return e;
}

PolyFp invert_variable(const PolyFp& f, int k) {
    if (f.is_zero()) return f;
    if (k < f.degree()) throw std::invalid_argument("invert_variable: k below degree");
    return f.reversed(k);
}

ExtField::Elem reduce_at(const RationalFunction& f, const Place& x) {
    if (valuation(f, x) < 0) throw std::domain_error("reduce_at: negative valuation");
    ExtField res = residue_field(x);
    if (f.is_zero()) return res.zero();
    if (x.is_infinity()) {
        // f = num/den with deg num <= deg den; in s = 1/t both become polynomials
        const int k = f.den().degree();
        PolyFp n = invert_variable(f.num(), k), d = invert_variable(f.den(), k);
        const PolyFp& s = x.uniformizer();
        return res.div(residue_of(n, res, s), residue_of(d, res, s));
    }
    const PolyFp& pi = x.uniformizer();
    // strip common powers of pi
    PolyFp n = f.num(), d = f.den();
    int vd = multiplicity(d, pi);
    for (int i = 0; i < vd; ++i) {
        n = n / pi;
        d = d / pi;
    }
    return res.div(residue_of(n, res, pi), residue_of(d, res, pi));
}

}  // namespace ellorth
