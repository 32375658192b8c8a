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

#include "ellorth/order_witness.hpp"

#include <stdexcept>

#include "ellorth/families.hpp"

namespace ellorth {

OrderWitness make_order_witness(uint32_t p, uint32_t m) {
    auto fam = instantiate_family(builtin_family("intro_N5"), 0);
    auto E = instantiate_at(fam, p, m);
    auto inv = global_invariants(E.curve);
    auto r = lfunction(E.curve, inv);
    if (r.method == LMethod::unavailable) throw std::runtime_error("order witness: " + r.note);
    return {p, m, r.L};
}

std::vector<OrderWitness> default_order_witnesses() { return {make_order_witness(5, 2), make_order_witness(7, 3)}; }

const std::vector<uint64_t>& default_order_exponents() {
    static const std::vector<uint64_t> e{16, 20, 24, 28, 36};
    return e;
}

OrderSweepRow order_sweep_row(const std::vector<OrderWitness>& witnesses, uint32_t ell,
                              const std::vector<uint64_t>& exponents) {
    OrderSweepRow row;
    row.ell = ell;
    for (size_t i = 0; i < witnesses.size(); ++i) {
        WitnessVerdict v;
        v.applicable = ell != witnesses[i].p;
        if (v.applicable) {
            auto A = frobenius_matrix_mod_ell(witnesses[i].L, ell);
            v.exact = order_excludes(A, exponents);
            v.charpoly = order_excludes_charpoly(A, exponents);
            if (v.exact.pass && !row.certified_by) row.certified_by = i;
        }
        row.verdicts.push_back(std::move(v));
    }
    return row;
}

std::vector<OrderSweepRow> order_sweep(const std::vector<OrderWitness>& witnesses, const std::vector<uint32_t>& ells,
                                       const std::vector<uint64_t>& exponents) {
    std::vector<OrderSweepRow> rows;
    for (uint32_t ell : ells) rows.push_back(order_sweep_row(witnesses, ell, exponents));
    return rows;
}

nlohmann::json to_json(const std::vector<OrderWitness>& witnesses, const std::vector<OrderSweepRow>& rows) {
    nlohmann::json j;
    for (const auto& w : witnesses) {
        nlohmann::json jw{{"p", w.p}, {"m", w.m}, {"L", w.L.to_string()}};
        std::vector<std::string> norm;
        for (const auto& c : w.L.normalized()) norm.push_back(c.get_str());
        jw["L_normalized"] = norm;
        j["witnesses"].push_back(jw);
    }
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json jr{{"ell", r.ell}, {"certified", r.certified()}};
        jr["certified_by"] = r.certified_by ? nlohmann::json(*r.certified_by) : nlohmann::json(nullptr);
        for (const auto& v : r.verdicts) {
            nlohmann::json jv{{"applicable", v.applicable}};
            if (v.applicable) {
                jv["pass"] = v.exact.pass;
                jv["failing_exponents"] = v.exact.failing;
                jv["charpoly_failing_exponents"] = v.charpoly.failing;
            }
            jr["witnesses"].push_back(jv);
        }
        j["rows"].push_back(jr);
    }
    return j;
}

}  // namespace ellorth
