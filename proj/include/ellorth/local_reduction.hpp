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

#ifndef ELLORTH_LOCAL_REDUCTION_HPP
#define ELLORTH_LOCAL_REDUCTION_HPP

#include <compare>
#include <optional>
#include <string>

#include <json.hpp>

#include "ellorth/curves.hpp"

namespace ellorth {

enum class KodairaKind { I, IStar, II, III, IV, IVStar, IIIStar, IIStar };

struct KodairaSymbol {
    KodairaKind kind = KodairaKind::I;
    int n = 0;  // only meaningful for I and IStar

    static KodairaSymbol In(int n) { return {KodairaKind::I, n}; }
    static KodairaSymbol InStar(int n) { return {KodairaKind::IStar, n}; }
    static KodairaSymbol parse(const std::string& s);  // "I0", "I4", "I1*", "II", "IV*", ...
    std::string to_string() const;

    bool is_good() const { return kind == KodairaKind::I && n == 0; }
    bool is_multiplicative() const { return kind == KodairaKind::I && n > 0; }
    bool is_additive() const { return kind != KodairaKind::I; }

    auto operator<=>(const KodairaSymbol&) const = default;
};

// Per-symbol invariants (conductor exponent, Euler number, gamma, lambda, r, b).
struct TableRow {
    int f = 0, e = 0, gamma = 1, lambda = 1, r = 1, b = 0;
    bool operator==(const TableRow&) const = default;
};

TableRow table_row(const KodairaSymbol& k);

enum class ReductionType { good, split_multiplicative, nonsplit_multiplicative, additive };
const char* to_string(ReductionType t);

struct LocalReductionData {
    Place place;
    KodairaSymbol symbol;
    TableRow row;
    int tamagawa = 1;
    ReductionType type = ReductionType::good;
    int64_t a = 0;       // a_x: trace at good places, +1/-1/0 otherwise
    int shift = 0;       // minimalization exponent
    int vA = 0, vB = 0, vDelta = 0;

    int degree() const { return place.degree(); }
};

struct SplitTest {
    bool split = false;
    ExtField::Elem witness;  // residue whose square class decides the split
};

enum class RootFactorSource { trivial, split_multiplicative, additive_character };

struct LocalRootFactor {
    int value = 1;
    RootFactorSource source = RootFactorSource::trivial;
};

// Full local analysis. Good places get a_x by point counting unless
// count_good is false (then a = 0 is left for the caller).
LocalReductionData local_reduce(const WeierstrassCurve& curve, const Place& x, bool count_good = true);
int tamagawa(const WeierstrassCurve& curve, const Place& x);
SplitTest split_type(const WeierstrassCurve& curve, const Place& x);
LocalRootFactor local_root_factor(const LocalReductionData& data);

// Kodaira symbol of a minimal model from its valuations.
KodairaSymbol kodaira_from_valuations(int vA, int vB, int vDelta);

nlohmann::json to_json(const LocalReductionData& d);

}  // namespace ellorth

#endif
