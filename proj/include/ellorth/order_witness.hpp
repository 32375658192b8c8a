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

#ifndef ELLORTH_ORDER_WITNESS_HPP
#define ELLORTH_ORDER_WITNESS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ellorth/global.hpp"
#include "ellorth/orthogonal.hpp"

namespace ellorth {

// Frobenius witness: the intro-family curve with twist point m over F_p.
struct OrderWitness {
    uint32_t p = 0;
    uint32_t m = 0;
    LFunctionPoly L;
};

// The two default witnesses, m = 2 over F_5 and m = 3 over F_7.
std::vector<OrderWitness> default_order_witnesses();
OrderWitness make_order_witness(uint32_t p, uint32_t m);

const std::vector<uint64_t>& default_order_exponents();  // {16, 20, 24, 28, 36}

struct WitnessVerdict {
    bool applicable = false;  // ell != p
    OrderCheck exact;         // A^e == I
    OrderCheck charpoly;      // charpoly(A^e) == (T - 1)^N
};

struct OrderSweepRow {
    uint32_t ell = 0;
    std::vector<WitnessVerdict> verdicts;  // parallel to the witness list
    std::optional<size_t> certified_by;    // first witness passing the exact test

    bool certified() const { return certified_by.has_value(); }
};

OrderSweepRow order_sweep_row(const std::vector<OrderWitness>& witnesses, uint32_t ell,
                              const std::vector<uint64_t>& exponents);
std::vector<OrderSweepRow> order_sweep(const std::vector<OrderWitness>& witnesses, const std::vector<uint32_t>& ells,
                                       const std::vector<uint64_t>& exponents);

nlohmann::json to_json(const std::vector<OrderWitness>& witnesses, const std::vector<OrderSweepRow>& rows);

}  // namespace ellorth

#endif
