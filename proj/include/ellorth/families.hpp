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

#ifndef ELLORTH_FAMILIES_HPP
#define ELLORTH_FAMILIES_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellorth/curves.hpp"
#include "ellorth/global.hpp"
#include "ellorth/local_reduction.hpp"

namespace ellorth {

// Polynomial expression over Q in one variable: "3(t^2-1)^3", "-u^2+63/4",
// "[0, -3, 0, 1]" (dense ascending list). Implicit multiplication allowed.
PolyQ parse_poly_expr(const std::string& text, char var);

// a*n + b, written "8n+1", "4n", "n-1", "5".
struct LinearInN {
    long a = 0, b = 0;
    long at(long n) const { return a * n + b; }
    static LinearInN parse(const std::string& s);
};

struct RationalMapQ {
    PolyQ num, den;  // coprime, integer coefficients, den with positive leading coefficient
    mpq_class operator()(const mpq_class& u) const;  // throws on a pole
    std::string to_string(char var = 'u') const;
};
RationalMapQ make_rational_map(PolyQ num, PolyQ den);

struct PlaceClaim {
    std::optional<mpq_class> at;  // nullopt = infinity
    std::vector<KodairaSymbol> symbols;
    std::vector<int> tamagawa;  // empty = no claim
};

struct ExpectedProfile {
    std::optional<long> N, chi, B;
    std::optional<mpz_class> gamma, script_L;
    char condition = 0;  // 'A', 'B' or 'C'
    std::vector<PlaceClaim> places;
    std::vector<KodairaSymbol> twist_symbols;  // at roots of (t - m) f(t)
    std::vector<int> twist_tamagawa;
    bool c_power_of_4 = false;
    std::optional<int> epsilon;
    std::vector<std::optional<mpq_class>> equal_tamagawa;  // places whose c must agree
    bool waive_i0star = false, waive_six_b = false;
    std::vector<long> ell_nonsquare, ell_square;  // restriction on ell for the condition
};

// Raw key/value text; keys may carry ".even"/".odd" overrides for n.
class FamilySpec {
public:
    static FamilySpec parse(const std::string& text);
    static FamilySpec load(const std::string& path);

    const std::string& id() const { return id_; }
    long n_min() const { return n_min_; }
    std::optional<long> n_max() const { return n_max_; }
    std::optional<std::string> get(const std::string& key, long n) const;
    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::string id_;
    long n_min_ = 0;
    std::optional<long> n_max_;
    std::map<std::string, std::string> kv_;
};

// Built-in families, in a fixed order.
const std::vector<std::string>& builtin_family_ids();
const FamilySpec& builtin_family(const std::string& id);  // throws std::out_of_range
// Built-in id or a path to a family file.
FamilySpec resolve_family(const std::string& id_or_path);

// A spec evaluated at a concrete n, still over Q.
struct FamilyInstance {
    std::string id;
    long n = 0;
    PolyQ a2, a4, a6;             // with f folded in: a2 f, a4 f^2, a6 f^3
    RationalMapQ h;
    std::optional<RationalMapQ> g;
    std::vector<mpq_class> f_roots;
    std::vector<uint32_t> excluded;  // stated exclusions besides 2, 3
    ExpectedProfile expect;
    std::string law;  // closed-form root number law, may be empty

    PolyQ discriminant() const;  // of the untwisted model
};

FamilyInstance instantiate_family(const FamilySpec& spec, long n);

// Empty if p is usable; otherwise the reason it is excluded.
std::optional<std::string> exclusion_reason(const FamilyInstance& fam, uint32_t p);
// W(F_p): w with beta(w) != 0 and disc(h(w)) != 0.
std::vector<uint32_t> parameter_set(const FamilyInstance& fam, uint32_t p);
uint32_t evaluate_h(const FamilyInstance& fam, uint32_t p, uint32_t w);  // throws on a pole

WeierstrassCurve base_curve(const FamilyInstance& fam, uint32_t p);
// (t - m) y^2 = x^3 + a2 x^2 + a4 x + a6 with m = h(w). Throws std::domain_error
// on an excluded prime or w outside W(F_p).
TwistedCurve instantiate(const FamilyInstance& fam, uint32_t p, uint32_t w);
// Same, with the twist point given directly.
TwistedCurve instantiate_at(const FamilyInstance& fam, uint32_t p, uint32_t m);

// Closed-form root number laws and split-reduction witnesses.
struct SplitClaim {
    std::optional<mpq_class> at;  // nullopt = infinity
    int witness = 0;              // Legendre symbol of the stated witness
    std::string text;
};
struct LawEvaluation {
    bool known = false;
    std::optional<int> product;     // local-factor product as stated
    std::optional<int> telescoped;  // the simplified form
    std::vector<SplitClaim> splits;
    // intro family: 2c dichotomy and sign law
    std::optional<int> two_c_square, minus_three_m;
};
LawEvaluation evaluate_law(const FamilyInstance& fam, uint32_t p, uint32_t m);

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct CellReport {
    uint32_t p = 0, w = 0, m = 0;
    GlobalInvariants inv;
    std::vector<CheckResult> checks;
    bool pass() const;
};

struct VerifyOptions {
    std::vector<uint32_t> ells;  // default: primes 5 <= ell < 1000
    int jobs = 0;
};

struct CriterionReport {
    std::string id;
    long n = 0;
    std::vector<uint32_t> primes;
    std::vector<std::pair<uint32_t, std::string>> excluded;
    std::vector<CellReport> cells;
    std::vector<CheckResult> family_checks;  // Kodaira-multiset independence etc.
    bool pass() const;
    int failures() const;
};

CriterionReport verify_profile(const FamilyInstance& fam, const std::vector<uint32_t>& primes, const VerifyOptions& opt = {});
nlohmann::json to_json(const CriterionReport& r);
std::string summary(const CriterionReport& r);

// Root-number law on one cell; false when it disagrees with the local root factors.
bool epsilon_law_check(const FamilyInstance& fam, uint32_t p, uint32_t w);

// Same claims with h replaced by the identity map; returns the first (p, m)
// where the claimed root number fails, if any.
std::optional<std::pair<uint32_t, uint32_t>> epsilon_negative_control(const FamilyInstance& fam,
                                                                      const std::vector<uint32_t>& primes);

}  // namespace ellorth

#endif
