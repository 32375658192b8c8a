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

#include "ellorth/local_reduction.hpp"

#include <numeric>

namespace ellorth {

// ---------------------------------------------------------------- symbols

std::string KodairaSymbol::to_string() const {
    switch (kind) {
        case KodairaKind::I: return "I" + std::to_string(n);
        case KodairaKind::IStar: return "I" + std::to_string(n) + "*";
        case KodairaKind::II: return "II";
        case KodairaKind::III: return "III";
        case KodairaKind::IV: return "IV";
        case KodairaKind::IVStar: return "IV*";
        case KodairaKind::IIIStar: return "III*";
        case KodairaKind::IIStar: return "II*";
    }
    return "?";
}

KodairaSymbol KodairaSymbol::parse(const std::string& s) {
    if (s == "II") return {KodairaKind::II, 0};
    if (s == "III") return {KodairaKind::III, 0};
    if (s == "IV") return {KodairaKind::IV, 0};
    if (s == "IV*") return {KodairaKind::IVStar, 0};
    if (s == "III*") return {KodairaKind::IIIStar, 0};
    if (s == "II*") return {KodairaKind::IIStar, 0};
    if (s.size() >= 2 && s[0] == 'I') {
        bool star = s.back() == '*';
        std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
        if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
            int n = std::stoi(digits);
            return star ? InStar(n) : In(n);
        }
    }
    throw std::invalid_argument("unknown Kodaira symbol '" + s + "'");
}

TableRow table_row(const KodairaSymbol& k) {
    switch (k.kind) {
        case KodairaKind::I:
            if (k.n == 0) return {0, 0, 1, 1, 1, 0};
            return {1, k.n, k.n / std::gcd(2, k.n), k.n, 1, 0};
        case KodairaKind::IStar:
            if (k.n == 0) return {2, 6, 1, 1, 1, 0};
            return {2, 6 + k.n, 2 / std::gcd(2, k.n), k.n, 1, 1};
        case KodairaKind::II: return {2, 2, 1, 1, 1, 1};
        case KodairaKind::III: return {2, 3, 1, 1, 2, 1};
        case KodairaKind::IV: return {2, 4, 3, 1, 3, 1};
        case KodairaKind::IVStar: return {2, 8, 3, 1, 3, 1};
        case KodairaKind::IIIStar: return {2, 9, 1, 1, 2, 1};
        case KodairaKind::IIStar: return {2, 10, 1, 1, 1, 1};
    }
    throw std::logic_error("table_row: bad symbol");
}

const char* to_string(ReductionType t) {
    switch (t) {
        case ReductionType::good: return "good";
        case ReductionType::split_multiplicative: return "split";
        case ReductionType::nonsplit_multiplicative: return "nonsplit";
        case ReductionType::additive: return "additive";
    }
    return "?";
}

KodairaSymbol kodaira_from_valuations(int vA, int vB, int vDelta) {
    if (vDelta == 0) return KodairaSymbol::In(0);
    if (vA == 0) return KodairaSymbol::In(vDelta);
    if (vA == 2 && vB == 3 && vDelta > 6) return KodairaSymbol::InStar(vDelta - 6);
    switch (vDelta) {
        case 2: return {KodairaKind::II, 0};
        case 3: return {KodairaKind::III, 0};
        case 4: return {KodairaKind::IV, 0};
        case 6: return KodairaSymbol::InStar(0);
        case 8: return {KodairaKind::IVStar, 0};
        case 9: return {KodairaKind::IIIStar, 0};
        case 10: return {KodairaKind::IIStar, 0};
        default: break;
    }
    throw std::logic_error("kodaira_from_valuations: model not minimal or inconsistent (vA=" + std::to_string(vA) +
                           ", vB=" + std::to_string(vB) + ", vDelta=" + std::to_string(vDelta) + ")");
}

// ---------------------------------------------------------------- helpers

namespace {

struct Residues {
    const LocalModel& m;

    ExtField::Elem res(const PolyFp& f) const { return residue_of(f, m.residue, m.pi); }
    // residue of f / pi^k; f must be divisible by pi^k
    ExtField::Elem coef(PolyFp f, int k) const {
        for (int i = 0; i < k; ++i) {
            auto [q, r] = divmod(f, m.pi);
            if (!r.is_zero()) throw std::logic_error("local model: expected divisibility by the uniformizer");
            f = std::move(q);
        }
        return res(f);
    }
    PolyFp lift(const ExtField::Elem& e) const { return PolyFp(m.pi.field(), e); }
    PolyFp pi_pow(int k) const { return m.pi.pow(static_cast<unsigned>(k)); }
};

int val(const PolyFp& f, const PolyFp& pi) { return f.is_zero() ? kInfiniteValuation : multiplicity(f, pi); }

// x -> x + c on y^2 = x^3 + a2 x^2 + a4 x + a6
void translate_x(PolyFp& a2, PolyFp& a4, PolyFp& a6, const PolyFp& c) {
    const PrimeField& F = c.field();
    auto k = [&](int64_t v) { return PolyFp::constant(F, F.from_int(v)); };
    PolyFp n6 = a6 + a4 * c + a2 * c * c + c * c * c;
    PolyFp n4 = a4 + k(2) * a2 * c + k(3) * c * c;
    PolyFp n2 = a2 + k(3) * c;
    a2 = std::move(n2);
    a4 = std::move(n4);
    a6 = std::move(n6);
}

int tamagawa_i0star(const LocalModel& m) {
    Residues R{m};
    const ExtField& K = m.residue;
    auto a = R.coef(m.A, 2), b = R.coef(m.B, 3);
    PolyFq cubic(K, {b, a, K.zero(), K.one()});
    return 1 + count_distinct_roots(cubic);
}

int tamagawa_instar(const LocalModel& m, int n) {
    Residues R{m};
    const ExtField& K = m.residue;
    const PrimeField& F = m.pi.field();
    PolyFp a2(F), a4 = m.A, a6 = m.B;
    // move the double root of the residual cubic to zero
    auto abar = R.coef(a4, 2), bbar = R.coef(a6, 3);
    auto r = K.div(K.mul(K.from_int(-3), bbar), K.mul(K.from_int(2), abar));
    translate_x(a2, a4, a6, m.pi * R.lift(r));
    if (val(a2, m.pi) != 1 || val(a4, m.pi) < 3 || val(a6, m.pi) < 4)
        throw std::logic_error("I_n* subprocedure: unexpected valuations after translation");
    for (int step = 1; step <= n; ++step) {
        if (step % 2 == 1) {
            auto y = R.coef(a6, step + 3);
            if (step == n) {
                if (K.is_zero(y)) throw std::logic_error("I_n* subprocedure: degenerate final quadratic");
                return K.legendre(y) == 1 ? 4 : 2;
            }
            if (!K.is_zero(y)) throw std::logic_error("I_n* subprocedure: expected a double root");
        } else {
            const int j = step / 2;
            auto al = R.coef(a2, 1), be = R.coef(a4, j + 2), ga = R.coef(a6, step + 3);
            auto disc = K.sub(K.mul(be, be), K.mul(K.from_int(4), K.mul(al, ga)));
            if (step == n) {
                if (K.is_zero(disc)) throw std::logic_error("I_n* subprocedure: degenerate final quadratic");
                return K.legendre(disc) == 1 ? 4 : 2;
            }
            if (!K.is_zero(disc)) throw std::logic_error("I_n* subprocedure: expected a double root");
            auto x0 = K.div(K.neg(be), K.mul(K.from_int(2), al));
            translate_x(a2, a4, a6, R.pi_pow(j + 1) * R.lift(x0));
        }
    }
    throw std::logic_error("I_n* subprocedure: fell through");
}

SplitTest split_from_model(const LocalModel& m) {
    Residues R{m};
    const ExtField& K = m.residue;
    auto w = K.mul(K.from_int(6), R.res(m.B));
    return SplitTest{K.legendre(w) == 1, w};
}

int tamagawa_from_model(const LocalModel& m, const KodairaSymbol& k, bool split) {
    Residues R{m};
    const ExtField& K = m.residue;
    switch (k.kind) {
        case KodairaKind::I:
            if (k.n == 0) return 1;
            if (split) return k.n;
            return k.n % 2 ? 1 : 2;
        case KodairaKind::IStar: return k.n == 0 ? tamagawa_i0star(m) : tamagawa_instar(m, k.n);
        case KodairaKind::II:
        case KodairaKind::IIStar: return 1;
        case KodairaKind::III:
        case KodairaKind::IIIStar: return 2;
        case KodairaKind::IV: return K.legendre(R.coef(m.B, 2)) == 1 ? 3 : 1;
        case KodairaKind::IVStar: return K.legendre(R.coef(m.B, 4)) == 1 ? 3 : 1;
    }
    throw std::logic_error("tamagawa: bad symbol");
}

}  // namespace

LocalReductionData local_reduce(const WeierstrassCurve& curve, const Place& x, bool count_good) {
    LocalModel m = minimal_model_at(curve, x);
    LocalReductionData d{x, kodaira_from_valuations(m.vA, m.vB, m.vDelta), {}, 1, ReductionType::good, 0, m.shift, m.vA, m.vB, m.vDelta};
    d.row = table_row(d.symbol);
    if (d.symbol.is_good()) {
        if (count_good) {
            Residues R{m};
            d.a = fiber_trace_charsum(m.residue, R.res(m.A), R.res(m.B));
        }
        return d;
    }
    bool split = false;
    if (d.symbol.is_multiplicative()) {
        split = split_from_model(m).split;
        d.type = split ? ReductionType::split_multiplicative : ReductionType::nonsplit_multiplicative;
        d.a = split ? 1 : -1;
    } else {
        d.type = ReductionType::additive;
        d.a = 0;
    }
    d.tamagawa = tamagawa_from_model(m, d.symbol, split);
    return d;
}

int tamagawa(const WeierstrassCurve& curve, const Place& x) { return local_reduce(curve, x, false).tamagawa; }

SplitTest split_type(const WeierstrassCurve& curve, const Place& x) {
    LocalModel m = minimal_model_at(curve, x);
    if (!(m.vDelta > 0 && m.vA == 0)) throw std::domain_error("split_type: reduction at " + x.to_string() + " is not multiplicative");
    return split_from_model(m);
}

LocalRootFactor local_root_factor(const LocalReductionData& d) {
    switch (d.type) {
        case ReductionType::good: return {1, RootFactorSource::trivial};
        case ReductionType::split_multiplicative: return {-1, RootFactorSource::split_multiplicative};
        case ReductionType::nonsplit_multiplicative: return {1, RootFactorSource::trivial};
        case ReductionType::additive: {
            ExtField K = residue_field(d.place);
            return {K.legendre(K.from_int(-d.row.r)), RootFactorSource::additive_character};
        }
    }
    throw std::logic_error("local_root_factor: bad type");
}

nlohmann::json to_json(const LocalReductionData& d) {
    nlohmann::json j;
    j["place"] = d.place.to_string();
    j["degree"] = d.degree();
    j["symbol"] = d.symbol.to_string();
    j["f"] = d.row.f;
    j["e"] = d.row.e;
    j["gamma"] = d.row.gamma;
    j["lambda"] = d.row.lambda;
    j["r"] = d.row.r;
    j["b"] = d.row.b;
    j["c"] = d.tamagawa;
    j["type"] = to_string(d.type);
    j["a"] = d.a;
    return j;
}

}  // namespace ellorth
