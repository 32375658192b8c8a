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

#ifndef ELLORTH_POLY_HPP
#define ELLORTH_POLY_HPP

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ellorth/fields.hpp"

namespace ellorth {

// Dense univariate polynomial over a field descriptor F. The zero polynomial
// has degree -1 and an empty coefficient vector.
template <class F>
class Poly {
public:
    using Field = F;
    using Elem = typename F::Elem;

    Poly() = default;
    explicit Poly(F field) : f_(std::move(field)) {}
    Poly(F field, std::vector<Elem> coeffs) : f_(std::move(field)), c_(std::move(coeffs)) { trim(); }

    static Poly constant(const F& field, Elem c) { return Poly(field, std::vector<Elem>{std::move(c)}); }
    static Poly monomial(const F& field, Elem c, int deg) {
        std::vector<Elem> v(deg + 1, field.zero());
        v[deg] = std::move(c);
        return Poly(field, std::move(v));
    }
    static Poly x(const F& field) { return monomial(field, field.one(), 1); }
    static Poly one(const F& field) { return constant(field, field.one()); }
    static Poly from_ints(const F& field, const std::vector<int64_t>& v) {
        std::vector<Elem> c;
        c.reserve(v.size());
        for (auto a : v) c.push_back(field.from_int(a));
        return Poly(field, std::move(c));
    }
    // Monic linear polynomial t - a.
    static Poly linear(const F& field, const Elem& a) {
        return Poly(field, std::vector<Elem>{field.neg(a), field.one()});
    }

    const F& field() const { return f_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : f_.zero(); }
    Elem lead() const { return c_.empty() ? f_.zero() : c_.back(); }
    bool is_monic() const { return !c_.empty() && f_.is_one(c_.back()); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& a : r.c_) a = f_.neg(a);
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_.add(c_[i], o.c_[i]);
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), f_.zero());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = f_.sub(c_[i], o.c_[i]);
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.f_);
        std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, a.f_.zero());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.f_.is_zero(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = a.f_.add(r[i + j], a.f_.mul(a.c_[i], b.c_[j]));
        }
        return Poly(a.f_, std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const Elem& s) const {
        Poly r(*this);
        for (auto& a : r.c_) a = f_.mul(a, s);
        r.trim();
        return r;
    }
    // Multiply by t^k.
    Poly shifted(int k) const {
        if (is_zero()) return *this;
        std::vector<Elem> v(k, f_.zero());
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(f_, std::move(v));
    }
    Poly pow(unsigned e) const {
        Poly r = one(f_), b = *this;
        while (e) {
            if (e & 1u) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    Elem operator()(const Elem& x) const {
        Elem r = f_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = f_.add(f_.mul(r, x), *it);
        return r;
    }
    Poly derivative() const {
        if (c_.size() <= 1) return Poly(f_);
        std::vector<Elem> v(c_.size() - 1, f_.zero());
        for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = f_.mul(f_.from_int(static_cast<int64_t>(i)), c_[i]);
        return Poly(f_, std::move(v));
    }
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(f_.inv(lead()));
    }
    // Coefficients reversed with respect to degree d (t^d * P(1/t)).
    Poly reversed(int d) const {
        std::vector<Elem> v(d + 1, f_.zero());
        for (int i = 0; i <= degree(); ++i) v[d - i] = c_[i];
        return Poly(f_, std::move(v));
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    // Deterministic total order: degree first, then coefficients from the top.
    bool operator<(const Poly& o) const {
        if (degree() != o.degree()) return degree() < o.degree();
        for (int i = degree(); i >= 0; --i)
            if (!(c_[i] == o.c_[i])) return c_[i] < o.c_[i];
        return false;
    }

    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            if (f_.is_zero(c_[i])) continue;
            if (!first) os << " + ";
            first = false;
            std::string cs = f_.to_string(c_[i]);
            if (cs.find_first_of("+ ") != std::string::npos) cs = "(" + cs + ")";
            const bool unit = f_.is_one(c_[i]);
            if (i == 0 || !unit) os << cs << (i > 0 ? "*" : "");
            if (i >= 1) os << var;
            if (i >= 2) os << "^" << i;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && f_.is_zero(c_.back())) c_.pop_back();
    }

    F f_{};
    std::vector<Elem> c_;
};

template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const F& f = a.field();
    if (a.degree() < b.degree()) return {Poly<F>(f), a};
    std::vector<typename F::Elem> r = a.coeffs();
    std::vector<typename F::Elem> q(a.degree() - b.degree() + 1, f.zero());
    const auto inv_lead = f.inv(b.lead());
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
        if (f.is_zero(r[i])) continue;
        auto c = f.mul(r[i], inv_lead);
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(c, b.coeffs()[j]));
    }
    r.resize(db);
    return {Poly<F>(f, std::move(q)), Poly<F>(f, std::move(r))};
}

template <class F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
    return divmod(a, b).first;
}
template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
    return divmod(a, b).second;
}

// Monic gcd (zero if both inputs vanish).
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g monic.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> xgcd(const Poly<F>& a, const Poly<F>& b) {
    const F& f = a.field();
    Poly<F> r0 = a, r1 = b, s0 = Poly<F>::one(f), s1(f), t0(f), t1 = Poly<F>::one(f);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        auto s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        auto t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto li = f.inv(r0.lead());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

template <class F>
Poly<F> mulmod(const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
    return (a * b) % m;
}

template <class F>
Poly<F> powmod(const Poly<F>& base, const mpz_class& e, const Poly<F>& m) {
    Poly<F> r = Poly<F>::one(base.field()) % m;
    Poly<F> b = base % m;
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (sgn(e) == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m);
    }
    return r;
}

// p-th root of a polynomial whose derivative vanishes (finite fields only).
template <class F>
Poly<F> pth_root_poly(const Poly<F>& f) {
    const auto& fld = f.field();
    const uint32_t p = fld.characteristic();
    std::vector<typename F::Elem> v;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) v.push_back(fld.pth_root(f.coeff(i)));
    return Poly<F>(fld, std::move(v));
}

// Squarefree decomposition of a monic polynomial over a finite field:
// f = prod g_i^i with g_i squarefree, pairwise coprime.
template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree_decomposition(const Poly<F>& f_in) {
    std::vector<std::pair<Poly<F>, int>> out;
    if (f_in.degree() <= 0) return out;
    const auto& fld = f_in.field();
    const int p = static_cast<int>(fld.characteristic());
    Poly<F> f = f_in.monic();
    auto rec = [&](auto&& self, const Poly<F>& g, int mult) -> void {
        if (g.degree() <= 0) return;
        Poly<F> d = g.derivative();
        if (d.is_zero()) {
            self(self, pth_root_poly(g), mult * p);
            return;
        }
        Poly<F> c = gcd(g, d);
        Poly<F> w = g / c;
        int i = 1;
        while (w.degree() > 0) {
            Poly<F> y = gcd(w, c);
            Poly<F> z = w / y;
            if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
            ++i;
            w = y;
            c = c / y;
        }
        if (c.degree() > 0) self(self, pth_root_poly(c), mult * p);
    };
    rec(rec, f, 1);
    // merge equal multiplicities
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<Poly<F>, int>> merged;
    for (auto& pr : out) {
        if (!merged.empty() && merged.back().second == pr.second)
            merged.back().first *= pr.first;
        else
            merged.push_back(pr);
    }
    return merged;
}

// Distinct-degree factorization of a squarefree monic polynomial.
// Returns (product of all irreducible factors of degree d, d).
template <class F>
std::vector<std::pair<Poly<F>, int>> distinct_degree_factor(const Poly<F>& f_in) {
    std::vector<std::pair<Poly<F>, int>> out;
    const auto& fld = f_in.field();
    const mpz_class q = fld.order();
    Poly<F> f = f_in.monic();
    Poly<F> x = Poly<F>::x(fld);
    Poly<F> h = x % f;
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = powmod(h, q, f);
        Poly<F> g = gcd(f, h - x);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

// Cantor-Zassenhaus splitting of a product of distinct monic irreducibles of degree d.
template <class F>
std::vector<Poly<F>> equal_degree_split(const Poly<F>& f, int d, Rng& rng) {
    std::vector<Poly<F>> out;
    if (f.degree() <= 0) return out;
    if (f.degree() == d) {
        out.push_back(f.monic());
        return out;
    }
    const auto& fld = f.field();
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), fld.order().get_mpz_t(), static_cast<unsigned long>(d));
    const mpz_class e = (qd - 1) / 2;
    for (;;) {
        std::vector<typename F::Elem> v;
        for (int i = 0; i < f.degree(); ++i) v.push_back(fld.random(rng));
        Poly<F> a(fld, std::move(v));
        if (a.degree() <= 0) continue;
        Poly<F> g = gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto l = equal_degree_split(g, d, rng);
            auto r = equal_degree_split(f / g, d, rng);
            out.insert(out.end(), l.begin(), l.end());
            out.insert(out.end(), r.begin(), r.end());
            return out;
        }
        Poly<F> b = powmod(a, e, f) - Poly<F>::one(fld);
        g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto l = equal_degree_split(g, d, rng);
            auto r = equal_degree_split(f / g, d, rng);
            out.insert(out.end(), l.begin(), l.end());
            out.insert(out.end(), r.begin(), r.end());
            return out;
        }
    }
}

template <class F>
struct Factorization {
    typename F::Elem lead;
    std::vector<std::pair<Poly<F>, int>> factors;  // monic irreducibles, sorted

    Poly<F> product(const F& field) const {
        Poly<F> r = Poly<F>::constant(field, lead);
        for (const auto& [g, m] : factors) r *= g.pow(static_cast<unsigned>(m));
        return r;
    }
};

template <class F>
Factorization<F> factor(const Poly<F>& f, uint64_t seed = kDefaultSeed) {
    if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    const auto& fld = f.field();
    Factorization<F> res{f.lead(), {}};
    Rng rng(seed);
    for (const auto& [sq, mult] : squarefree_decomposition(f)) {
        for (const auto& [block, d] : distinct_degree_factor(sq)) {
            for (auto& g : equal_degree_split(block, d, rng)) res.factors.emplace_back(std::move(g), mult);
        }
    }
    (void)fld;
    std::sort(res.factors.begin(), res.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); });
    return res;
}

// Rabin test.
template <class F>
bool is_irreducible(const Poly<F>& f_in) {
    if (f_in.degree() <= 0) return false;
    if (f_in.degree() == 1) return true;
    const auto& fld = f_in.field();
    Poly<F> f = f_in.monic();
    const int n = f.degree();
    const mpz_class q = fld.order();
    Poly<F> x = Poly<F>::x(fld);
    std::vector<Poly<F>> frob(n + 1, Poly<F>(fld));  // frob[i] = x^{q^i} mod f
    frob[0] = x % f;
    for (int i = 1; i <= n; ++i) frob[i] = powmod(frob[i - 1], q, f);
    if (frob[n] != x % f) return false;
    int m = n;
    for (int r = 2; r <= m; ++r) {
        if (m % r) continue;
        while (m % r == 0) m /= r;
        if (gcd(f, frob[n / r] - x).degree() != 0) return false;
    }
    return true;
}

// Distinct roots in the coefficient field, sorted.
template <class F>
std::vector<typename F::Elem> roots(const Poly<F>& f, uint64_t seed = kDefaultSeed) {
    std::vector<typename F::Elem> out;
    if (f.degree() <= 0) return out;
    const auto& fld = f.field();
    Poly<F> x = Poly<F>::x(fld);
    Poly<F> g = gcd(f, powmod(x, fld.order(), f.monic()) - x);
    Rng rng(seed);
    for (auto& lin : equal_degree_split(g, 1, rng)) out.push_back(fld.neg(lin.coeff(0)));
    std::sort(out.begin(), out.end());
    return out;
}

template <class F>
int count_distinct_roots(const Poly<F>& f) {
    if (f.degree() <= 0) return 0;
    const auto& fld = f.field();
    Poly<F> m = f.monic();
    Poly<F> x = Poly<F>::x(fld);
    return gcd(m, powmod(x, fld.order(), m) - x).degree();
}

// Exact multiplicity of g in f (g non-constant); f must be nonzero.
template <class F>
int multiplicity(Poly<F> f, const Poly<F>& g) {
    int v = 0;
    for (;;) {
        auto [q, r] = divmod(f, g);
        if (!r.is_zero()) return v;
        f = std::move(q);
        ++v;
    }
}

using PolyFp = Poly<PrimeField>;
using PolyFq = Poly<ExtField>;
using PolyQ = Poly<RationalField>;

// Reduction of a rational polynomial mod p (throws if a denominator vanishes).
PolyFp reduce_mod_p(const PolyQ& f, const PrimeField& fp);

// Integer-list constructors used by parsers and tests.
PolyQ polyq_from_ints(const std::vector<int64_t>& v);

}  // namespace ellorth

#endif
