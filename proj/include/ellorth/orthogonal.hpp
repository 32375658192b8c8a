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

#ifndef ELLORTH_ORTHOGONAL_HPP
#define ELLORTH_ORTHOGONAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellorth/fields.hpp"

namespace ellorth {

using ModVec = std::vector<uint32_t>;

// Dense square matrix over F_ell.
class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(uint32_t ell, int n);
    static ModMatrix identity(uint32_t ell, int n);
    // Companion matrix of a monic polynomial given by ascending coefficients.
    static ModMatrix companion(uint32_t ell, const std::vector<uint32_t>& monic);

    uint32_t ell() const { return ell_; }
    int size() const { return n_; }
    uint32_t& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    uint32_t operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    ModMatrix operator*(const ModMatrix& o) const;
    ModMatrix operator+(const ModMatrix& o) const;
    ModMatrix operator-(const ModMatrix& o) const;
    ModMatrix scaled(uint32_t c) const;
    ModMatrix transpose() const;
    ModMatrix pow(uint64_t e) const;
    ModVec apply(const ModVec& v) const;

    uint32_t det() const;
    // Characteristic polynomial det(T I - A), ascending and monic.
    std::vector<uint32_t> charpoly() const;
    bool is_identity() const;
    bool operator==(const ModMatrix& o) const { return ell_ == o.ell_ && n_ == o.n_ && a_ == o.a_; }
    std::string to_string() const;

private:
    uint32_t ell_ = 0;
    int n_ = 0;
    std::vector<uint32_t> a_;
};

uint32_t mod_inv(uint32_t a, uint32_t ell);
int legendre_u32(uint32_t a, uint32_t ell);

// Non-degenerate symmetric pairing on F_ell^n.
class OrthogonalSpace {
public:
    explicit OrthogonalSpace(ModMatrix gram);
    static OrthogonalSpace standard(uint32_t ell, int n);
    static OrthogonalSpace random(uint32_t ell, int n, Rng& rng);

    uint32_t ell() const { return gram_.ell(); }
    int dim() const { return gram_.size(); }
    const ModMatrix& gram() const { return gram_; }
    uint32_t pair(const ModVec& u, const ModVec& v) const;

private:
    ModMatrix gram_;
};

ModMatrix reflection(const OrthogonalSpace& V, const ModVec& v);
bool is_orthogonal(const OrthogonalSpace& V, const ModMatrix& A);

// Class of det(gram), equal to spin(-I).
SquareClass discriminant(const OrthogonalSpace& V);

// Spinor norm by splitting A into reflections.
SquareClass spinor_norm(const OrthogonalSpace& V, const ModMatrix& A);
// Class of 2^N det(I + A); empty when det(I + A) = 0.
std::optional<SquareClass> spinor_zassenhaus(const ModMatrix& A);

enum class OmegaClass { in_omega, so_not_omega, not_so };
const char* to_string(OmegaClass c);

struct OmegaMembership {
    OmegaClass cls = OmegaClass::in_omega;
    int det = 1;
    SquareClass spin = SquareClass::trivial;
};

OmegaMembership omega_membership(const OrthogonalSpace& V, const ModMatrix& A);

// Product of 0..max_reflections random anisotropic reflections.
ModMatrix random_orthogonal(const OrthogonalSpace& V, Rng& rng, int max_reflections);

struct OrderCheck {
    bool pass = true;
    std::vector<uint64_t> failing;  // exponents e with A^e = I (or charpoly (T-1)^N)
};

// Pass iff A^e != I for every listed e.
OrderCheck order_excludes(const ModMatrix& A, const std::vector<uint64_t>& exponents);
// Weaker variant: pass iff A^e is not unipotent, i.e. charpoly(A^e) != (T - 1)^N.
OrderCheck order_excludes_charpoly(const ModMatrix& A, const std::vector<uint64_t>& exponents);

}  // namespace ellorth

#endif
