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

// Closed-form root-number products and split-reduction witnesses, one per family.

#include <functional>
#include <map>

#include "ellorth/families.hpp"

namespace ellorth {

namespace {

struct LawContext {
    PrimeField F;
    long n;
    uint32_t m;                  // h(w)
    std::vector<uint32_t> roots;  // roots of f mod p

    int chi(uint32_t a) const { return F.legendre(a); }
    uint32_t c(const mpq_class& v) const { return F.from_rational(v); }
    uint32_t f_at(uint32_t x) const {
        uint32_t r = 1;
        for (uint32_t a : roots) r = F.mul(r, F.sub(x, a));
        return r;
    }
    uint32_t mul(std::initializer_list<uint32_t> xs) const {
        uint32_t r = 1;
        for (uint32_t x : xs) r = F.mul(r, x);
        return r;
    }
    int minus_one_pow(long e) const { return e % 2 == 0 ? 1 : chi(c(-1)); }
    // prod over roots r of chi(phi(r))
    int root_product(const std::function<uint32_t(uint32_t)>& phi) const {
        int s = 1;
        for (uint32_t r : roots) s *= chi(phi(r));
        return s;
    }
};

SplitClaim split_at(std::optional<mpq_class> at, int witness, std::string text) {
    return SplitClaim{std::move(at), witness, std::move(text)};
}

using Law = std::function<void(const LawContext&, LawEvaluation&)>;

const std::map<std::string, Law>& laws() {
    static const std::map<std::string, Law> table = {
        {"intro_N5",
         [](const LawContext& x, LawEvaluation& ev) {
             const auto& F = x.F;
             ev.two_c_square = x.chi(x.mul({x.c(-3), F.sub(F.mul(x.m, x.m), 1)}));
             ev.minus_three_m = x.chi(x.mul({x.c(-3), x.m}));
         }},
        {"even_0mod8",
         [](const LawContext& x, LawEvaluation& ev) {
             ev.product = x.chi(x.c(6)) * x.chi(x.c(-3)) * x.chi(x.c(-2)) * x.minus_one_pow(4 * x.n);
             ev.splits.push_back(split_at(std::nullopt, x.chi(x.c(-3)), "-3"));
             ev.splits.push_back(split_at(mpq_class(0), x.chi(x.mul({x.c(-6), x.m, x.f_at(0)})), "-6 h f(0)"));
             ev.splits.push_back(split_at(mpq_class(0), x.chi(x.c(6)), "6"));
         }},
        {"even_2mod8",
         [](const LawContext& x, LawEvaluation& ev) {
             ev.product = x.chi(x.c(-3)) * x.chi(x.c(-6)) * x.chi(x.c(-2)) * x.minus_one_pow(4 * x.n + 1);
             ev.splits.push_back(split_at(std::nullopt, x.chi(x.c(-3)), "-3"));
             ev.splits.push_back(split_at(mpq_class(0), x.chi(x.mul({x.c(6), x.m, x.f_at(0)})), "6 h f(0)"));
             ev.splits.push_back(split_at(mpq_class(0), x.chi(x.c(-6)), "-6"));
         }},
        {"even_4mod8",
         [](const LawContext& x, LawEvaluation& ev) {
             ev.product = x.chi(x.c(3)) * x.chi(x.c(-3)) * x.minus_one_pow(2) * x.minus_one_pow(4 * x.n + 1);
             ev.splits.push_back(split_at(std::nullopt, x.chi(x.c(-3)), "-3"));
             ev.splits.push_back(split_at(mpq_class(0), x.chi(x.mul({x.c(-1), x.m, x.f_at(0)})), "-h f(0)"));
             ev.splits.push_back(split_at(mpq_class(0), x.chi(x.c(3)), "3"));
         }},
        {"even_6mod8",
         [](const LawContext& x, LawEvaluation& ev) {
             const auto& F = x.F;
             const uint32_t one = 1, m1 = x.c(-1);
             const uint32_t w1 = x.mul({x.c(-3), F.sub(one, x.m), x.f_at(one)});
             const uint32_t w2 = x.mul({x.c(3), F.sub(m1, x.m), x.f_at(m1)});
             ev.product = x.chi(w1) * x.chi(w2) * x.minus_one_pow(2) * x.minus_one_pow(4 * x.n + 1);
             auto phi = [&](uint32_t r) { return F.mul(F.sub(one, r), F.sub(m1, r)); };
             ev.telescoped = x.chi(phi(x.m)) * x.root_product(phi);
             ev.splits.push_back(split_at(mpq_class(1), x.chi(w1), "-3(1-h)f(1)"));
             ev.splits.push_back(split_at(mpq_class(-1), x.chi(x.mul({x.c(-3), F.add(x.m, one), x.f_at(m1)})), "-3(h+1)f(-1)"));
         }},
        {"case1_2ns",
         [](const LawContext& x, LawEvaluation& ev) {
             const auto& F = x.F;
             const uint32_t w0 = x.mul({x.c(3), x.m, x.f_at(0)});
             const uint32_t w2 = x.mul({x.c(-6), F.sub(1, x.m), x.f_at(1)});
             ev.product = x.chi(x.c(-2)) * x.chi(x.c(-2)) * x.chi(w0) * x.chi(w2) * x.minus_one_pow(x.n);
             auto phi = [&](uint32_t r) { return F.mul(r, F.sub(1, r)); };
             ev.telescoped = x.chi(x.mul({x.c(2), phi(x.m)})) * x.root_product(phi);
             ev.splits.push_back(split_at(mpq_class(0), x.chi(w0), "3 h f(0)"));
             ev.splits.push_back(split_at(mpq_class(2), x.chi(w2), "-6(1-h)f(1)"));
         }},
        {"case2_3ns",
         [](const LawContext& x, LawEvaluation& ev) {
             const auto& F = x.F;
             const uint32_t w0 = x.mul({x.c(3), x.m, x.f_at(0)});
             const uint32_t w1 = x.mul({x.c(-3), F.sub(1, x.m), x.f_at(1)});
             ev.product = x.chi(x.c(-1)) * x.chi(x.c(-2)) * x.chi(w0) * x.chi(w1) * x.minus_one_pow(x.n);
             auto phi = [&](uint32_t r) { return F.mul(r, F.sub(1, r)); };
             ev.telescoped = x.chi(x.mul({x.c(2), phi(x.m)})) * x.root_product(phi);
             ev.splits.push_back(split_at(mpq_class(0), x.chi(w0), "3 h f(0)"));
             ev.splits.push_back(split_at(mpq_class(1), x.chi(w1), "-3(1-h)f(1)"));
         }},
        {"case3_5ns",
         [](const LawContext& x, LawEvaluation& ev) {
             const auto& F = x.F;
             const bool even = x.n % 2 == 0;
             const uint32_t w0 = x.mul({x.c(3), x.m, x.f_at(0)});
             const uint32_t w1 = x.mul({x.c(15), F.sub(1, x.m), x.f_at(1)});
             ev.product = x.chi(x.c(even ? -3 : -1)) * x.chi(w0) * x.chi(w1) * x.minus_one_pow(1) * x.minus_one_pow(x.n);
             auto phi = [&](uint32_t r) { return F.mul(r, F.sub(1, r)); };
             ev.telescoped = x.chi(x.mul({x.c(even ? -15 : -5), phi(x.m)})) * x.root_product(phi);
             ev.splits.push_back(split_at(mpq_class(0), x.chi(w0), "3 h f(0)"));
             ev.splits.push_back(split_at(mpq_class(1), x.chi(w1), "15(1-h)f(1)"));
         }},
        {"case4_7ns",
         [](const LawContext& x, LawEvaluation& ev) {
             const auto& F = x.F;
             const bool even = x.n % 2 == 0;
             const uint32_t a = x.c(mpq_class(-9, 8));
             const uint32_t w0 = x.mul({x.c(2), x.m, x.f_at(0)});
             const uint32_t w1 = x.mul({x.c(7), F.sub(a, x.m), x.f_at(a)});
             const int lead = even ? x.minus_one_pow(2) : x.chi(x.c(-3)) * x.chi(x.c(-1));
             ev.product = lead * x.chi(w0) * x.chi(w1) * x.minus_one_pow(x.n);
             auto phi = [&](uint32_t r) { return F.mul(r, F.sub(a, r)); };
             // 14 h (9/8 + h) = -14 phi(h)
             ev.telescoped = x.chi(x.mul({x.c(even ? -14 : -42), phi(x.m)})) * x.root_product(phi);
             ev.splits.push_back(split_at(mpq_class(0), x.chi(w0), "2 h f(0)"));
             ev.splits.push_back(split_at(mpq_class(-9, 8), x.chi(w1), "7(-9/8-h)f(-9/8)"));
         }},
    };
    return table;
}

}  // namespace

LawEvaluation evaluate_law(const FamilyInstance& fam, uint32_t p, uint32_t m) {
    LawEvaluation ev;
    auto it = laws().find(fam.law);
    if (it == laws().end()) return ev;
    LawContext x{PrimeField(p), fam.n, m, {}};
    for (const auto& r : fam.f_roots) x.roots.push_back(x.F.from_rational(r));
    ev.known = true;
    it->second(x, ev);
    return ev;
}

}  // namespace ellorth
