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

#ifndef ELLORTH_CURVES_HPP
#define ELLORTH_CURVES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellorth/places.hpp"
#include "ellorth/poly.hpp"

namespace ellorth {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StandardQuantities {
    PolyFp b2, b4, b6, b8, c4, c6, disc;
};

// y^2 = x^3 + a2 x^2 + a4 x + a6 over F_p(t), with a derived short model
// y^2 = x^3 + A x + B obtained by completing the cube.
class WeierstrassCurve {
public:
    WeierstrassCurve(PolyFp a2, PolyFp a4, PolyFp a6);
    static WeierstrassCurve short_form(PolyFp A, PolyFp B);

    const PrimeField& field() const { return a4_.field(); }
    uint32_t p() const { return field().p(); }
    const PolyFp& a2() const { return a2_; }
    const PolyFp& a4() const { return a4_; }
    const PolyFp& a6() const { return a6_; }
    const PolyFp& short_a() const { return A_; }
    const PolyFp& short_b() const { return B_; }
    const PolyFp& c4() const { return q_.c4; }
    const PolyFp& c6() const { return q_.c6; }
    const PolyFp& discriminant() const { return q_.disc; }
    const StandardQuantities& quantities() const { return q_; }
    RationalFunction j_invariant() const;
    bool is_isotrivial() const;

    // Text form: "p=", "a2=", "a4=", "a6=" with dense ascending integer lists.
    std::string serialize() const;
    static WeierstrassCurve parse(const std::string& text);

    bool operator==(const WeierstrassCurve& o) const { return a2_ == o.a2_ && a4_ == o.a4_ && a6_ == o.a6_; }

private:
    PolyFp a2_, a4_, a6_, A_, B_;
    StandardQuantities q_;
};

StandardQuantities standard_quantities(const PolyFp& a2, const PolyFp& a4, const PolyFp& a6);

// A quadratic twist d*y^2 = x^3 + a2 x^2 + a4 x + a6, stored in the
// equivalent form y^2 = x^3 + a2 d x^2 + a4 d^2 x + a6 d^3.
struct TwistedCurve {
    WeierstrassCurve base;
    PolyFp twist;
    WeierstrassCurve curve;
};

TwistedCurve twist_by(const WeierstrassCurve& base, const PolyFp& d);
TwistedCurve twist_by_constant(const WeierstrassCurve& base, uint32_t beta);

// Short model at a place, made minimal there. For infinity, the model lives
// in the coordinate s = 1/t and the place is s = 0.
struct LocalModel {
    Place place;
    ExtField residue;
    PolyFp pi;          // uniformizer in the model's coordinate
    PolyFp A, B;        // minimal short model
    int shift = 0;      // power of pi removed (x scaled by pi^(2*shift))
    int vA = 0, vB = 0, vDelta = 0;  // valuations in the minimal model
};

LocalModel minimal_model_at(const WeierstrassCurve& curve, const Place& x);

// Trace of Frobenius of y^2 = x^3 + a x + b over the field F.
int64_t fiber_trace_naive(const ExtField& F, const ExtField::Elem& a, const ExtField::Elem& b);
int64_t fiber_trace_charsum(const ExtField& F, const ExtField::Elem& a, const ExtField::Elem& b);

enum class CountMode { charsum, naive, both };

// a_x at a place of good reduction, on the minimal model at x.
int64_t count_fiber_points(const WeierstrassCurve& curve, const Place& x, CountMode mode = CountMode::both);

std::vector<int64_t> parse_int_list(const std::string& s);
std::string format_int_list(const std::vector<int64_t>& v);
std::vector<int64_t> to_signed_coeffs(const PolyFp& f);

}  // namespace ellorth

#endif
