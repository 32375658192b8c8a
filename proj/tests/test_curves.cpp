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

#include "ellorth/curves.hpp"
#include "ellorth/local_reduction.hpp"

using namespace ellorth;

namespace {

PolyFp P(uint32_t p, std::vector<int64_t> c) { return PolyFp::from_ints(PrimeField(p), c); }
PolyFp C(uint32_t p, int64_t c) { return PolyFp::constant(PrimeField(p), PrimeField(p).from_int(c)); }

WeierstrassCurve intro_base(uint32_t p) {
    auto u = P(p, {-1, 0, 1});  // t^2 - 1
    return WeierstrassCurve(PolyFp(PrimeField(p)), C(p, 3) * u.pow(3), C(p, -2) * u.pow(5));
}

bool same_j(const WeierstrassCurve& a, const WeierstrassCurve& b) {
    auto ja = a.j_invariant(), jb = b.j_invariant();
    return ja.num() * jb.den() == jb.num() * ja.den();
}

int64_t brute_points(uint32_t p, int64_t a2, int64_t a4, int64_t a6) {
    PrimeField F(p);
    int64_t n = 1;
    for (uint32_t x = 0; x < p; ++x)
        for (uint32_t y = 0; y < p; ++y) {
            auto rhs = F.add(F.add(F.mul(F.mul(x, x), F.add(x, F.from_int(a2))), F.mul(F.from_int(a4), x)), F.from_int(a6));
            if (F.mul(y, y) == rhs) ++n;
        }
    return n;
}

}  // namespace

TEST_CASE("standard quantities") {
    auto E = intro_base(5);
    // -2^6 3^3 t^2 (t-1)^9 (t+1)^9
    auto expected = C(5, -64 * 27) * P(5, {0, 1}).pow(2) * P(5, {-1, 1}).pow(9) * P(5, {1, 1}).pow(9);
    CHECK(E.discriminant() == expected);
    // Delta = (c4^3 - c6^2) / 1728
    CHECK(E.discriminant() * C(5, 1728) == E.c4().pow(3) - E.c6().pow(2));

    WeierstrassCurve Cst(PolyFp(PrimeField(7)), C(7, 1), PolyFp(PrimeField(7)));
    CHECK(Cst.discriminant() == C(7, -64));
    CHECK(Cst.is_isotrivial());
    auto j = Cst.j_invariant();
    CHECK(j.num() == j.den() * C(7, 1728));
    CHECK(!E.is_isotrivial());

    CHECK_THROWS(WeierstrassCurve(PolyFp(PrimeField(5)), PolyFp(PrimeField(5)), PolyFp(PrimeField(5))));
}

TEST_CASE("serialization round trip and parse errors") {
    auto E = intro_base(7);
    auto text = E.serialize();
    CHECK(WeierstrassCurve::parse(text) == E);
    CHECK_THROWS_AS(WeierstrassCurve::parse("p=5\na2=[1,\n"), ParseError);
    CHECK_THROWS_AS(WeierstrassCurve::parse("p=6\na2=[]\na4=[1]\na6=[0,1]\n"), ParseError);
    CHECK_THROWS_AS(WeierstrassCurve::parse("p=5\na2=[]\na4=[1]\n"), ParseError);
    auto E2 = WeierstrassCurve::parse("# comment\np=5\na2=[]\na4=[0, -3, 0, 1]\na6=[1, 1]\n");
    CHECK(E2.a4() == P(5, {0, -3, 0, 1}));
}

TEST_CASE("twisting") {
    auto E = intro_base(5);
    auto d = P(5, {-1, 1});
    auto T = twist_by(E, d);
    CHECK(T.curve.discriminant() == E.discriminant() * d.pow(6));
    CHECK(same_j(T.curve, E));
    auto TT = twist_by(T.curve, d);
    CHECK(TT.curve.discriminant() == E.discriminant() * d.pow(12));
    CHECK(same_j(TT.curve, E));
    auto Tb = twist_by_constant(E, 2);
    CHECK(Tb.curve.a4() == E.a4() * C(5, 4));
    CHECK(Tb.curve.a6() == E.a6() * C(5, 8));
    CHECK_THROWS(twist_by(E, PolyFp(PrimeField(5))));

    Rng rng(3);
    for (uint32_t p : {5u, 7u, 11u}) {
        PrimeField F(p);
        for (int k = 0; k < 5; ++k) {
            std::vector<uint32_t> c(3);
            for (auto& x : c) x = F.random(rng);
            c[2] = 1;
            PolyFp dd(F, c);
            CHECK(same_j(twist_by(intro_base(p), dd).curve, intro_base(p)));
        }
    }
}

TEST_CASE("fiber point counts") {
    // y^2 = x^3 + x over F_5: 4 points, a = 2
    auto K = ExtField::build(5, 1);
    CHECK(fiber_trace_naive(K, K.one(), K.zero()) == 2);
    CHECK(fiber_trace_charsum(K, K.one(), K.zero()) == 2);
    CHECK(5 + 1 - brute_points(5, 0, 1, 0) == 2);

    // E_1 of the intro family over F_5 at t = 2
    auto E1 = twist_by(intro_base(5), P(5, {-1, 1})).curve;
    auto x2 = Place::finite(P(5, {-2, 1}));
    int64_t a = count_fiber_points(E1, x2, CountMode::both);
    auto F = PrimeField(5);
    int64_t a2 = F.to_signed(E1.a2()(2)), a4 = F.to_signed(E1.a4()(2)), a6 = F.to_signed(E1.a6()(2));
    CHECK(a == 5 + 1 - brute_points(5, a2, a4, a6));
    CHECK_THROWS(count_fiber_points(E1, Place::finite(P(5, {0, 1}))));

    // both paths agree and respect the Hasse bound at every good place of degree <= 2
    for (uint32_t p : {5u, 7u}) {
        auto E = twist_by(intro_base(p), P(p, {-2, 1})).curve;
        for (const auto& x : enumerate_places(PrimeField(p), 2)) {
            if (!local_reduce(E, x, false).symbol.is_good()) continue;
            int64_t ax = count_fiber_points(E, x, CountMode::both);
            double qd = std::pow(static_cast<double>(p), x.degree());
            CHECK(static_cast<double>(ax * ax) <= 4 * qd);
        }
    }
}

TEST_CASE("constant nonsquare twist negates traces at odd-degree places") {
    for (uint32_t p : {5u, 7u, 11u}) {
        PrimeField F(p);
        uint32_t beta = 2;
        while (F.legendre(beta) != -1) ++beta;
        auto E = twist_by(intro_base(p), P(p, {-2, 1})).curve;
        auto Et = twist_by_constant(E, beta).curve;
        for (const auto& x : enumerate_places(F, 3)) {
            if (!local_reduce(E, x, false).symbol.is_good()) continue;
            int64_t a = count_fiber_points(E, x), at = count_fiber_points(Et, x);
            CHECK(at == (x.degree() % 2 ? -a : a));
        }
    }
}
