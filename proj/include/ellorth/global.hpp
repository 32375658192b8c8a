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

#ifndef ELLORTH_GLOBAL_HPP
#define ELLORTH_GLOBAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ellorth/local_reduction.hpp"
#include "ellorth/orthogonal.hpp"

namespace ellorth {

// Genus of the base curve; every base here is the projective line.
inline constexpr int kBaseGenus = 0;

using KodairaMultiset = std::vector<std::pair<KodairaSymbol, int>>;  // (symbol, total degree), sorted

struct GlobalInvariants {
    uint32_t q = 0;
    int N = 0;
    int euler_sum = 0;  // sum of e_x deg x
    int chi = 0;        // euler_sum / 12
    mpz_class gamma = 1;
    mpz_class script_L = 1;
    int B = 0;
    mpz_class c_E = 1;
    int epsilon = 1;
    int split_places = 0;  // closed points with split multiplicative reduction
    KodairaMultiset kod;
    std::vector<LocalReductionData> bad;         // bad places, infinity first
    std::vector<LocalReductionData> nonminimal;  // finite roots of the model discriminant with good reduction
    std::optional<LocalReductionData> infinity;  // always set; a is the trace when good

    const LocalReductionData* at(const Place& x) const;
};

GlobalInvariants global_invariants(const WeierstrassCurve& curve);
KodairaMultiset kodaira_multiset(const std::vector<LocalReductionData>& bad);
std::string to_string(const KodairaMultiset& k);
nlohmann::json to_json(const GlobalInvariants& g);

// ---------------------------------------------------------------- L-functions

struct LFunctionPoly {
    uint32_t q = 0;
    std::vector<mpz_class> c;  // c[0] = 1

    int degree() const;
    mpq_class value_at_inverse_q() const;    // L(1/q)
    std::vector<mpq_class> normalized() const;  // coefficients of L(T/q)
    std::string to_string() const;
    bool operator==(const LFunctionPoly& o) const { return q == o.q && c == o.c; }
};

struct LFunctionOptions {
    uint64_t max_field = 5'000'000;  // largest F_{q^k} enumerated for required terms
    uint64_t extra_field = 300'000;  // largest field enumerated for optional extra terms
    int jobs = 0;
};

enum class LMethod { traces_full, traces_half, unavailable };

struct LFunctionResult {
    LFunctionPoly L;
    LMethod method = LMethod::unavailable;
    std::vector<mpz_class> direct;  // terms 0..K computed from point counts
    std::vector<int64_t> traces;    // S_1..S_K (index 0 unused)
    int checked_pairs = 0;          // functional-equation pairs with both sides direct
    bool direct_consistent = true;  // those pairs (and any terms above N) agree
    std::string note;
};

// Point-count traces S_k = sum over P^1(F_{q^k}) of fiber traces, k = 1..K.
std::vector<int64_t> trace_sums(const WeierstrassCurve& curve, const GlobalInvariants& inv, int K, int jobs = 0);
// Power-series coefficients 0..K of exp(sum S_k T^k / k).
std::vector<mpz_class> coefficients_from_traces(const std::vector<int64_t>& S, int K);

LFunctionResult lfunction(const WeierstrassCurve& curve, const GlobalInvariants& inv, const LFunctionOptions& opt = {});
// Reference path: Euler product over every place of degree <= N with naive fiber counts.
LFunctionPoly lfunction_euler_product(const WeierstrassCurve& curve, const GlobalInvariants& inv);
// Field size needed to compute L with one redundant coefficient.
uint64_t lfunction_required_field(uint32_t q, int N);
// Rough operation count of the Euler-product path.
double euler_product_cost(uint32_t q, int N);

struct FECheck {
    bool pass = true;
    int first_mismatch = -1;  // lower index i of the failing pair (i, N-i)
};

FECheck check_functional_equation(const LFunctionPoly& L, int epsilon);

enum class CheckStatus { pass, fail, inapplicable };
const char* to_string(CheckStatus s);

struct BsdCheck {
    CheckStatus status = CheckStatus::inapplicable;
    uint32_t ell = 0;
    SquareClass value_class = SquareClass::trivial;     // class of L(1/q)
    SquareClass predicted_class = SquareClass::trivial;  // class of q^(g-1+chi) c_E
    bool exact_square = false;  // L(1/q) / (q^(g-1+chi) c_E) is a rational square
    std::string note;
};

BsdCheck bsd_square_class_check(const GlobalInvariants& inv, const LFunctionPoly& L, uint32_t ell);
// Exact rational form of the same statement.
bool bsd_exact_square(const GlobalInvariants& inv, const LFunctionPoly& L);

// Companion matrix of the monic normalization of L(T/q) mod ell.
ModMatrix frobenius_matrix_mod_ell(const LFunctionPoly& L, uint32_t ell);
// Characteristic polynomial of L(T/q)/lead mod ell, ascending, monic.
std::vector<uint32_t> normalized_poly_mod_ell(const LFunctionPoly& L, uint32_t ell);

bool is_perfect_square(const mpz_class& n);
bool is_rational_square(const mpq_class& r);

}  // namespace ellorth

#endif
