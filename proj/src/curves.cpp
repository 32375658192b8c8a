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

#include "ellorth/curves.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace ellorth {

StandardQuantities standard_quantities(const PolyFp& a2, const PolyFp& a4, const PolyFp& a6) {
    const PrimeField& F = a4.field();
    auto k = [&](int64_t v) { return PolyFp::constant(F, F.from_int(v)); };
    StandardQuantities q;
    q.b2 = k(4) * a2;
    q.b4 = k(2) * a4;
    q.b6 = k(4) * a6;
    q.b8 = k(4) * a2 * a6 - a4 * a4;
    q.c4 = q.b2 * q.b2 - k(24) * q.b4;
    q.c6 = k(-1) * q.b2 * q.b2 * q.b2 + k(36) * q.b2 * q.b4 - k(216) * q.b6;
    q.disc = k(-1) * q.b2 * q.b2 * q.b8 - k(8) * q.b4 * q.b4 * q.b4 - k(27) * q.b6 * q.b6 + k(9) * q.b2 * q.b4 * q.b6;
    return q;
}

WeierstrassCurve::WeierstrassCurve(PolyFp a2, PolyFp a4, PolyFp a6)
    : a2_(std::move(a2)), a4_(std::move(a4)), a6_(std::move(a6)) {
    const PrimeField& F = a4_.field();
    if (!(a2_.field() == F && a6_.field() == F)) throw std::invalid_argument("WeierstrassCurve: mixed base fields");
    q_ = standard_quantities(a2_, a4_, a6_);
    if (q_.disc.is_zero()) throw std::domain_error("WeierstrassCurve: degenerate model (discriminant is zero)");
    // c4 = -48 A, c6 = -864 B
    A_ = q_.c4.scaled(F.inv(F.from_int(-48)));
    B_ = q_.c6.scaled(F.inv(F.from_int(-864)));
}

WeierstrassCurve WeierstrassCurve::short_form(PolyFp A, PolyFp B) {
    PolyFp zero(A.field());
    return WeierstrassCurve(zero, std::move(A), std::move(B));
}

RationalFunction WeierstrassCurve::j_invariant() const {
    return RationalFunction(q_.c4 * q_.c4 * q_.c4, q_.disc);
}

bool WeierstrassCurve::is_isotrivial() const {
    return j_invariant().is_constant();
}

std::vector<int64_t> to_signed_coeffs(const PolyFp& f) {
    std::vector<int64_t> v;
    for (auto c : f.coeffs()) v.push_back(f.field().to_signed(c));
    return v;
}

std::string format_int_list(const std::vector<int64_t>& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]";
    return os.str();
}

std::vector<int64_t> parse_int_list(const std::string& s_in) {
    std::string s = s_in;
    auto trim = [](std::string& x) {
        size_t a = x.find_first_not_of(" \t\r\n");
        size_t b = x.find_last_not_of(" \t\r\n");
        x = (a == std::string::npos) ? "" : x.substr(a, b - a + 1);
    };
    trim(s);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError("expected an integer list like [1, 0, -3], got '" + s_in + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<int64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        trim(item);
        if (item.empty()) {
            if (out.empty() && ss.eof()) break;
            throw ParseError("empty entry in integer list '" + s_in + "'");
        }
        size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw ParseError("not an integer: '" + item + "'");
        }
        if (pos != item.size()) throw ParseError("not an integer: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::string WeierstrassCurve::serialize() const {
    std::ostringstream os;
    os << "p=" << p() << "\n";
    os << "a2=" << format_int_list(to_signed_coeffs(a2_)) << "\n";
    os << "a4=" << format_int_list(to_signed_coeffs(a4_)) << "\n";
    os << "a6=" << format_int_list(to_signed_coeffs(a6_)) << "\n";
    return os.str();
}

WeierstrassCurve WeierstrassCurve::parse(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        if (kv.count(key)) throw ParseError("duplicate key '" + key + "'");
        kv[key] = line.substr(eq + 1);
    }
    for (const char* k : {"p", "a2", "a4", "a6"})
        if (!kv.count(k)) throw ParseError(std::string("missing key '") + k + "'");
    for (const auto& [k, v] : kv)
        if (k != "p" && k != "a2" && k != "a4" && k != "a6") throw ParseError("unknown key '" + k + "'");
    long long p = 0;
    try {
        size_t pos = 0;
        std::string ps = kv["p"];
        ps.erase(0, ps.find_first_not_of(" \t"));
        ps.erase(ps.find_last_not_of(" \t\r") + 1);
        p = std::stoll(ps, &pos);
        if (pos != ps.size()) throw ParseError("bad prime");
    } catch (const std::exception&) {
        throw ParseError("p must be an integer");
    }
    if (p < 5 || p > 1000000 || !is_prime_u64(static_cast<uint64_t>(p))) throw ParseError("p must be a prime >= 5");
    PrimeField F(static_cast<uint32_t>(p));
    auto a2 = PolyFp::from_ints(F, parse_int_list(kv["a2"]));
    auto a4 = PolyFp::from_ints(F, parse_int_list(kv["a4"]));
    auto a6 = PolyFp::from_ints(F, parse_int_list(kv["a6"]));
    try {
        return WeierstrassCurve(a2, a4, a6);
    } catch (const std::domain_error& e) {
        throw ParseError(e.what());
    }
}

TwistedCurve twist_by(const WeierstrassCurve& base, const PolyFp& d) {
    if (d.is_zero()) throw std::invalid_argument("twist_by: zero twist");
    WeierstrassCurve c(base.a2() * d, base.a4() * d * d, base.a6() * d * d * d);
    return TwistedCurve{base, d, std::move(c)};
}

TwistedCurve twist_by_constant(const WeierstrassCurve& base, uint32_t beta) {
    return twist_by(base, PolyFp::constant(base.field(), base.field().from_int(beta)));
}

// ---------------------------------------------------------------- local models

static int val_at(const PolyFp& f, const PolyFp& pi) {
    if (f.is_zero()) return kInfiniteValuation;
    return multiplicity(f, pi);
}

static PolyFp divide_power(PolyFp f, const PolyFp& pi, int k) {
    for (int i = 0; i < k; ++i) f = f / pi;
    return f;
}

LocalModel minimal_model_at(const WeierstrassCurve& curve, const Place& x) {
    const PrimeField& F = curve.field();
    PolyFp A = curve.short_a(), B = curve.short_b();
    if (x.is_infinity()) {
        const int dA = A.degree(), dB = B.degree();
        int k = 0;
        if (dA >= 0) k = std::max(k, (dA + 3) / 4);
        if (dB >= 0) k = std::max(k, (dB + 5) / 6);
        A = A.is_zero() ? A : invert_variable(A, 4 * k);
        B = B.is_zero() ? B : invert_variable(B, 6 * k);
    }
    LocalModel m{x, residue_field(x), x.uniformizer(), {}, {}, 0, 0, 0, 0};
    int vA = val_at(A, m.pi), vB = val_at(B, m.pi);
    int s = std::min(vA == kInfiniteValuation ? INT_MAX : vA / 4, vB == kInfiniteValuation ? INT_MAX : vB / 6);
    if (s > 0) {
        A = divide_power(A, m.pi, 4 * s);
        B = divide_power(B, m.pi, 6 * s);
    }
    m.A = std::move(A);
    m.B = std::move(B);
    m.shift = s;
    m.vA = val_at(m.A, m.pi);
    m.vB = val_at(m.B, m.pi);
    auto k = [&](int64_t v) { return PolyFp::constant(F, F.from_int(v)); };
    PolyFp disc = k(-16) * (k(4) * m.A * m.A * m.A + k(27) * m.B * m.B);
    m.vDelta = val_at(disc, m.pi);
    return m;
}

// ---------------------------------------------------------------- point counts

int64_t fiber_trace_naive(const ExtField& F, const ExtField::Elem& a, const ExtField::Elem& b) {
    const uint64_t q = F.order().get_ui();
    // number of square roots of each element, by enumerating y
    std::vector<uint32_t> roots(q, 0);
    for (uint64_t i = 0; i < q; ++i) {
        auto y = F.element(i);
        roots[F.index_of(F.mul(y, y))]++;
    }
    int64_t affine = 0;
    for (uint64_t i = 0; i < q; ++i) {
        auto x = F.element(i);
        auto v = F.add(F.mul(F.add(F.mul(x, x), a), x), b);
        affine += roots[F.index_of(v)];
    }
    return static_cast<int64_t>(q) + 1 - (affine + 1);
}

int64_t fiber_trace_charsum(const ExtField& F, const ExtField::Elem& a, const ExtField::Elem& b) {
    const uint64_t q = F.order().get_ui();
    int64_t s = 0;
    for (uint64_t i = 0; i < q; ++i) {
        auto x = F.element(i);
        s += F.legendre(F.add(F.mul(F.add(F.mul(x, x), a), x), b));
    }
    return -s;
}

int64_t count_fiber_points(const WeierstrassCurve& curve, const Place& x, CountMode mode) {
    LocalModel m = minimal_model_at(curve, x);
    if (m.vDelta != 0) throw std::domain_error("count_fiber_points: bad reduction at " + x.to_string());
    if (m.residue.order() > mpz_class(50'000'000)) throw std::domain_error("count_fiber_points: residue field too large");
    auto a = residue_of(m.A, m.residue, m.pi);
    auto b = residue_of(m.B, m.residue, m.pi);
    int64_t t1 = 0, t2 = 0;
    if (mode != CountMode::naive) t1 = fiber_trace_charsum(m.residue, a, b);
    if (mode != CountMode::charsum) t2 = fiber_trace_naive(m.residue, a, b);
    if (mode == CountMode::both && t1 != t2) throw std::logic_error("count_fiber_points: counting paths disagree");
    const int64_t t = mode == CountMode::naive ? t2 : t1;
    const double q = m.residue.order().get_d();
    if (static_cast<double>(t) * t > 4.0 * q + 1e-9) throw std::logic_error("count_fiber_points: Hasse bound violated");
    return t;
}

}  // namespace ellorth
