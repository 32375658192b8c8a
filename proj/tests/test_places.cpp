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

#include <doctest.h>

#include "ellorth/places.hpp"

using namespace ellorth;

namespace {
PolyFp P(uint32_t p, std::vector<int64_t> c) { return PolyFp::from_ints(PrimeField(p), c); }
}  // namespace

TEST_CASE("valuations at finite places and infinity") {
    PrimeField F(5);
    auto f = P(5, {0, 1}).pow(2) * P(5, {-1, 1}).pow(9);
    CHECK(valuation(f, Place::finite(P(5, {0, 1}))) == 2);
    CHECK(valuation(f, Place::infinity(F)) == -11);
    CHECK(valuation(PolyFp(F), Place::infinity(F)) == kInfiniteValuation);

    // (t^2 + 1)/(t - 2) over F_7: t^2 + 1 is irreducible there
    PrimeField F7(7);
    RationalFunction g(P(7, {1, 0, 1}), P(7, {-2, 1}));
    auto fac = factor(P(7, {1, 0, 1}));
    for (auto& [pi, m] : fac.factors) CHECK(valuation(g, Place::finite(pi)) == 1);
    CHECK(valuation(g, Place::finite(P(7, {-2, 1}))) == -1);
    CHECK(valuation(g, Place::infinity(F7)) == -1);
}

TEST_CASE("valuation axioms and the product formula") {
    Rng rng(4);
    for (uint32_t p : {5u, 7u}) {
        PrimeField F(p);
        auto places = enumerate_places(F, 2);
        for (int trial = 0; trial < 30; ++trial) {
            auto rnd = [&](int deg) {
                std::vector<uint32_t> c(deg + 1);
                for (auto& x : c) x = F.random(rng);
                c.back() = 1 + static_cast<uint32_t>(rng() % (p - 1));
                return PolyFp(F, c);
            };
            auto a = rnd(1 + static_cast<int>(rng() % 5)), b = rnd(1 + static_cast<int>(rng() % 5));
            for (const auto& x : places) {
                CHECK(valuation(a * b, x) == valuation(a, x) + valuation(b, x));
                auto s = a + b;
                if (!s.is_zero()) CHECK(valuation(s, x) >= std::min(valuation(a, x), valuation(b, x)));
            }
            // sum over all places where v != 0, using the factorization of a
            int total = valuation(a, Place::infinity(F));
            for (auto& [pi, m] : factor(a).factors) total += valuation(a, Place::finite(pi)) * pi.degree();
            CHECK(total == 0);
        }
    }
}

TEST_CASE("place enumeration") {
    CHECK(enumerate_places(PrimeField(5), 1).size() == 6);
    CHECK(enumerate_places(PrimeField(5), 2).size() == 16);
    CHECK(enumerate_places(PrimeField(7), 1).size() == 8);
    for (uint32_t q : {5u, 7u, 11u}) {
        PrimeField F(q);
        for (int d = 1; d <= 4; ++d) {
            if (q == 11 && d == 4) continue;  // 3660 irreducibles; covered by the count below
            auto irr = irreducibles_of_degree(F, d);
            CHECK(irr.size() == necklace_count(q, d));
            for (size_t i = 1; i < irr.size(); ++i) CHECK(irr[i - 1] < irr[i]);
        }
    }
    CHECK(necklace_count(11, 4) == (14641 - 121) / 4);
    CHECK(necklace_count(5, 2) == 10);
}

TEST_CASE("residue fields and reduction") {
    PrimeField F(5);
    auto x3 = Place::finite(P(5, {-3, 1}));
    auto K = residue_field(x3);
    CHECK(K.eq(reduce_at(RationalFunction(P(5, {0, 0, 1})), x3), K.from_int(4)));

    auto inf = Place::infinity(F);
    auto Ki = residue_field(inf);
    RationalFunction r(P(5, {1, 0, 2}), P(5, {-1, 0, 1}));
    CHECK(Ki.eq(reduce_at(r, inf), Ki.from_int(2)));
    CHECK_THROWS(reduce_at(RationalFunction(P(5, {0, 1})), inf));

    auto x2 = Place::finite(P(5, {2, 0, 1}));
    auto K2 = residue_field(x2);
    CHECK(K2.order() == 25);
    auto z = reduce_at(RationalFunction(P(5, {0, 1})), x2);
    CHECK(K2.is_zero(K2.add(K2.mul(z, z), K2.from_int(2))));
    CHECK(!K2.eq(z, K2.from_base(K2.base().from_int(0))));

    CHECK_THROWS(Place::finite(P(5, {-1, 0, 1})));
    CHECK(invert_variable(P(5, {1, 2, 3}), 2) == P(5, {3, 2, 1}));
}
