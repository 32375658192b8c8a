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

#include "ellorth/orthogonal.hpp"

using namespace ellorth;

namespace {

// Monic mod-ell reduction of a polynomial with rational coefficients (ascending).
std::vector<uint32_t> reduce_monic(const std::vector<mpq_class>& c, uint32_t ell) {
    std::vector<uint32_t> r;
    for (const auto& x : c) {
        mpz_class num = x.get_num() % ell, den = x.get_den() % ell;
        if (num < 0) num += ell;
        r.push_back(static_cast<uint32_t>(num.get_ui() * mod_inv(static_cast<uint32_t>(den.get_ui()), ell) % ell));
    }
    return r;
}

std::vector<mpq_class> q(std::initializer_list<std::pair<long, long>> v) {
    std::vector<mpq_class> r;
    for (auto [a, b] : v) {
        mpq_class x(a, b);
        x.canonicalize();
        r.push_back(x);
    }
    return r;
}

ModVec random_anisotropic(const OrthogonalSpace& V, Rng& rng) {
    for (;;) {
        ModVec v(V.dim());
        for (auto& x : v) x = static_cast<uint32_t>(rng() % V.ell());
        if (V.pair(v, v) != 0) return v;
    }
}

}  // namespace

TEST_CASE("reflections") {
    auto V = OrthogonalSpace::standard(7, 4);
    auto r = reflection(V, {1, 0, 0, 0});
    auto expect = ModMatrix::identity(7, 4);
    expect(0, 0) = 6;
    CHECK(r == expect);
    CHECK_THROWS_AS(reflection(OrthogonalSpace::standard(5, 2), {1, 2}), std::domain_error);  // 1 + 4 = 0 mod 5

    Rng rng(1);
    for (uint32_t ell : {5u, 7u, 11u, 13u})
        for (int n = 2; n <= 6; ++n) {
            auto W = OrthogonalSpace::random(ell, n, rng);
            for (int k = 0; k < 10; ++k) {
                auto v = random_anisotropic(W, rng);
                auto R = reflection(W, v);
                auto Rv = R.apply(v);
                for (int i = 0; i < n; ++i) CHECK(Rv[i] == (ell - v[i]) % ell);
                CHECK((R * R).is_identity());
                CHECK(R.det() == ell - 1);
                CHECK(is_orthogonal(W, R));
                // fixes a vector orthogonal to v
                auto u = random_anisotropic(W, rng);
                uint32_t uv = W.pair(u, v), vv = W.pair(v, v);
                uint32_t c = static_cast<uint32_t>(static_cast<uint64_t>(uv) * mod_inv(vv, ell) % ell);
                ModVec w(n);
                for (int i = 0; i < n; ++i) w[i] = static_cast<uint32_t>((u[i] + static_cast<uint64_t>(ell - c) * v[i]) % ell);
                CHECK(W.pair(w, v) == 0);
                CHECK(R.apply(w) == w);
            }
        }
}

TEST_CASE("spinor norm basics") {
    Rng rng(2);
    for (uint32_t ell : {5u, 7u, 11u, 13u})
        for (int n = 2; n <= 6; ++n) {
            auto V = OrthogonalSpace::random(ell, n, rng);
            CHECK(spinor_norm(V, ModMatrix::identity(ell, n)) == SquareClass::trivial);
            auto minus = ModMatrix::identity(ell, n).scaled(ell - 1);
            CHECK(spinor_norm(V, minus) == discriminant(V));
            CHECK(discriminant(V) == square_class_from_sign(legendre_u32(V.gram().det(), ell)));
            for (int k = 0; k < 10; ++k) {
                auto v = random_anisotropic(V, rng);
                CHECK(spinor_norm(V, reflection(V, v)) == square_class_from_sign(legendre_u32(V.pair(v, v), ell)));
            }
        }
    auto V = OrthogonalSpace::standard(7, 3);
    ModMatrix notorth = ModMatrix::identity(7, 3);
    notorth(0, 1) = 1;
    CHECK_THROWS_AS(spinor_norm(V, notorth), std::invalid_argument);
}

TEST_CASE("Zassenhaus formula") {
    CHECK(spinor_zassenhaus(ModMatrix::identity(11, 5)) == SquareClass::trivial);
    CHECK(!spinor_zassenhaus(ModMatrix::identity(11, 4).scaled(10)).has_value());
    Rng rng(3);
    int compared = 0;
    for (uint32_t ell : {5u, 7u, 11u, 13u})
        for (int n = 2; n <= 6; ++n) {
            auto V = OrthogonalSpace::random(ell, n, rng);
            for (int k = 0; k < 50; ++k) {
                auto A = random_orthogonal(V, rng, 2 * n);
                auto B = random_orthogonal(V, rng, 2 * n);
                CHECK(is_orthogonal(V, A));
                CHECK(spinor_norm(V, A * B) == spinor_norm(V, A) * spinor_norm(V, B));
                if (auto z = spinor_zassenhaus(A)) {
                    CHECK(*z == spinor_norm(V, A));
                    ++compared;
                }
            }
        }
    CHECK(compared > 500);
}

TEST_CASE("Omega membership") {
    auto V = OrthogonalSpace::standard(7, 4);
    CHECK(omega_membership(V, ModMatrix::identity(7, 4)).cls == OmegaClass::in_omega);
    auto r = reflection(V, {1, 1, 0, 0});
    CHECK(omega_membership(V, r).cls == OmegaClass::not_so);
    CHECK(omega_membership(V, r).det == -1);
    // <v,v> = 2 and <u,u> = 2: same class, product lies in Omega
    auto r2 = reflection(V, {0, 0, 1, 1});
    CHECK(omega_membership(V, r * r2).cls == OmegaClass::in_omega);
    // <v,v> = 1 (square) and <u,u> = 3 (nonsquare mod 7)
    auto r3 = reflection(V, {1, 0, 0, 0});
    auto r4 = reflection(V, {0, 1, 1, 1});
    CHECK(omega_membership(V, r3 * r4).cls == OmegaClass::so_not_omega);
}

TEST_CASE("order exclusions for the printed witnesses") {
    const std::vector<uint64_t> E{16, 20, 24, 28, 36};
    // -L(T/5) and L(T/7) as printed, ascending and monic
    auto w5 = q({{-1, 1}, {2, 5}, {-1, 25}, {1, 25}, {-2, 5}, {1, 1}});
    auto w7 = q({{1, 1}, {0, 1}, {-33, 49}, {-33, 49}, {0, 1}, {1, 1}});
    CHECK(order_excludes(ModMatrix::companion(7, reduce_monic(w5, 7)), E).pass);
    auto r17 = order_excludes(ModMatrix::companion(17, reduce_monic(w5, 17)), E);
    CHECK(!r17.pass);
    CHECK(r17.failing == std::vector<uint64_t>{36});
    CHECK(order_excludes(ModMatrix::companion(17, reduce_monic(w7, 17)), E).pass);
    CHECK(order_excludes(ModMatrix::companion(5, reduce_monic(w7, 5)), E).pass);
    // the two tests agree for the first witness on 5 < ell < 100
    for (uint32_t ell = 7; ell < 100; ++ell) {
        if (!is_prime_u64(ell)) continue;
        auto A = ModMatrix::companion(ell, reduce_monic(w5, ell));
        auto a = order_excludes(A, E), b = order_excludes_charpoly(A, E);
        CHECK(a.failing == b.failing);
        CHECK(a.pass == (ell != 17));
    }
    // charpoly of the companion matrix is the input
    auto A = ModMatrix::companion(11, reduce_monic(w7, 11));
    CHECK(A.charpoly() == reduce_monic(w7, 11));
    CHECK(ModMatrix::identity(11, 3).pow(36).is_identity());
}

TEST_CASE("spinor norm on forms with many isotropic vectors") {
    // split forms where every M v - v can be isotropic
    Rng rng(kDefaultSeed);
    for (uint32_t ell : {5u, 7u}) {
        ModMatrix h(ell, 6);
        for (int i = 0; i < 3; ++i) h(2 * i, 2 * i + 1) = h(2 * i + 1, 2 * i) = 1;
        OrthogonalSpace V(h);
        for (int k = 0; k < 500; ++k) {
            auto A = random_orthogonal(V, rng, 13);
            auto B = random_orthogonal(V, rng, 13);
            CHECK(spinor_norm(V, A * B) == spinor_norm(V, A) * spinor_norm(V, B));
        }
        CHECK(spinor_norm(V, ModMatrix::identity(ell, 6).scaled(ell - 1)) == discriminant(V));
    }
}
