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

#ifndef ELLORTH_PLACES_HPP
#define ELLORTH_PLACES_HPP

#include <climits>
#include <functional>
#include <string>
#include <vector>

#include "ellorth/poly.hpp"

namespace ellorth {

inline constexpr int kInfiniteValuation = INT_MAX;

// Closed point of the projective line over F_p.
class Place {
public:
    static Place finite(PolyFp uniformizer);  // monic irreducible, certified
    static Place infinity(const PrimeField& field);

    bool is_infinity() const { return infinite_; }
    const PrimeField& field() const { return field_; }
    // Monic irreducible generator; for infinity the polynomial "s" in the
    // coordinate s = 1/t.
    const PolyFp& uniformizer() const { return pi_; }
    int degree() const { return infinite_ ? 1 : pi_.degree(); }
    std::string to_string() const;

    bool operator==(const Place& o) const { return infinite_ == o.infinite_ && pi_ == o.pi_; }
    bool operator<(const Place& o) const;

private:
    Place(PrimeField f, PolyFp pi, bool inf) : field_(f), pi_(std::move(pi)), infinite_(inf) {}
    PrimeField field_;
    PolyFp pi_;
    bool infinite_ = false;
};

class RationalFunction {
public:
    RationalFunction(PolyFp num, PolyFp den);
    explicit RationalFunction(PolyFp num);

    const PolyFp& num() const { return num_; }
    const PolyFp& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator+(const RationalFunction& o) const;

private:
    PolyFp num_, den_;
};

int valuation(const PolyFp& f, const Place& x);
int valuation(const RationalFunction& f, const Place& x);

// Monic irreducibles of exact degree d, in graded lexicographic order.
std::vector<PolyFp> irreducibles_of_degree(const PrimeField& field, int d);
// Infinity followed by every finite place of degree <= d_max.
std::vector<Place> enumerate_places(const PrimeField& field, int d_max);
// Number of monic irreducibles of degree d over F_q (necklace formula).
uint64_t necklace_count(uint64_t q, int d);

ExtField residue_field(const Place& x);
ExtField::Elem reduce_at(const RationalFunction& f, const Place& x);
// Residue of a polynomial modulo a uniformizer, as an element of F_p[z]/(pi).
ExtField::Elem residue_of(const PolyFp& f, const ExtField& residue, const PolyFp& pi);

// Substitution t -> 1/s: returns s^k * f(1/s).
PolyFp invert_variable(const PolyFp& f, int k);

}  // namespace ellorth

#endif
