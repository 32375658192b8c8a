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

#include "ellorth/global.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ellorth {

namespace {

bool is_prime_small(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

nlohmann::json mpz_json(const mpz_class& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

}  // namespace

const LocalReductionData* GlobalInvariants::at(const Place& x) const {
    if (x.is_infinity()) return infinity ? &*infinity : nullptr;
    for (const auto& d : bad)
        if (d.place == x) return &d;
    for (const auto& d : nonminimal)
        if (d.place == x) return &d;
    return nullptr;
}

KodairaMultiset kodaira_multiset(const std::vector<LocalReductionData>& bad) {
    std::map<KodairaSymbol, int> m;
    for (const auto& d : bad)
        if (!d.symbol.is_good()) m[d.symbol] += d.degree();
    return KodairaMultiset(m.begin(), m.end());
}

std::string to_string(const KodairaMultiset& k) {
    std::string s = "{";
    bool first = true;
    for (const auto& [sym, deg] : k) {
        for (int i = 0; i < deg; ++i) {
            s += (first ? "" : ", ") + sym.to_string();
            first = false;
        }
    }
    return s + "}";
}

GlobalInvariants global_invariants(const WeierstrassCurve& curve) {
    if (curve.is_isotrivial()) throw std::domain_error("global_invariants: curve is isotrivial (constant j-invariant)");
    GlobalInvariants g;
    g.q = curve.p();
    std::vector<Place> places{Place::infinity(curve.field())};
    for (const auto& [pi, mult] : factor(curve.discriminant()).factors) places.push_back(Place::finite(pi));
    int sumf = 0;
    std::vector<int> lambdas;
    for (const auto& x : places) {
        // traces at good places of large degree are only computed on demand
        const bool count = x.degree() == 1;
        LocalReductionData d = local_reduce(curve, x, count);
        if (x.is_infinity()) g.infinity = d;
        if (d.symbol.is_good()) {
            if (!x.is_infinity()) g.nonminimal.push_back(std::move(d));
            continue;
        }
        const int deg = d.degree();
        sumf += d.row.f * deg;
        g.euler_sum += d.row.e * deg;
        for (int i = 0; i < deg; ++i) g.gamma *= d.row.gamma;
        lambdas.push_back(d.row.lambda);
        if (!x.is_infinity()) g.B += d.row.b * deg;
        g.c_E *= d.tamagawa;
        const LocalRootFactor rf = local_root_factor(d);
        g.epsilon *= rf.value;
        if (d.type == ReductionType::split_multiplicative) g.split_places++;
        g.bad.push_back(std::move(d));
    }
    g.N = -4 + 4 * kBaseGenus + sumf;
    if (g.euler_sum % 12 != 0) throw std::logic_error("global_invariants: sum of e_x deg x is not divisible by 12");
    g.chi = g.euler_sum / 12;
    for (int ell = 5; ell <= 1000; ++ell) {
        if (!is_prime_small(ell)) continue;
        for (int lam : lambdas)
            if (lam % ell == 0) {
                g.script_L *= ell;
                break;
            }
    }
    g.kod = kodaira_multiset(g.bad);
    return g;
}

nlohmann::json to_json(const GlobalInvariants& g) {
    nlohmann::json j;
    j["q"] = g.q;
    j["N"] = g.N;
    j["chi"] = g.chi;
    j["gamma"] = mpz_json(g.gamma);
    j["script_L"] = mpz_json(g.script_L);
    j["B"] = g.B;
    j["c_E"] = mpz_json(g.c_E);
    j["epsilon"] = g.epsilon;
    nlohmann::json kod = nlohmann::json::array();
    for (const auto& [sym, deg] : g.kod) kod.push_back({{"symbol", sym.to_string()}, {"degree", deg}});
    j["kodaira"] = kod;
    nlohmann::json places = nlohmann::json::array();
    for (const auto& d : g.bad) places.push_back(to_json(d));
    j["bad_places"] = places;
    return j;
}

}  // namespace ellorth
