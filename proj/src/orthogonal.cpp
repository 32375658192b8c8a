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

#include "ellorth/orthogonal.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace ellorth {

namespace {

uint32_t mulm(uint32_t a, uint32_t b, uint32_t l) { return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % l); }
uint32_t addm(uint32_t a, uint32_t b, uint32_t l) { return a + b >= l ? a + b - l : a + b; }
uint32_t subm(uint32_t a, uint32_t b, uint32_t l) { return a >= b ? a - b : a + l - b; }

void require_same(const ModMatrix& a, const ModMatrix& b) {
    if (a.ell() != b.ell() || a.size() != b.size()) throw std::invalid_argument("ModMatrix: shape or modulus mismatch");
}

}  // namespace

uint32_t mod_inv(uint32_t a, uint32_t ell) {
    if (a % ell == 0) throw std::domain_error("mod_inv: zero");
    return static_cast<uint32_t>(powmod_u64(a % ell, ell - 2, ell));
}

int legendre_u32(uint32_t a, uint32_t ell) {
    a %= ell;
    if (a == 0) return 0;
    return powmod_u64(a, (ell - 1) / 2, ell) == 1 ? 1 : -1;
}

ModMatrix::ModMatrix(uint32_t ell, int n) : ell_(ell), n_(n), a_(static_cast<size_t>(n) * n, 0) {
    if (n < 0) throw std::invalid_argument("ModMatrix: negative size");
}

ModMatrix ModMatrix::identity(uint32_t ell, int n) {
    ModMatrix m(ell, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1 % ell;
    return m;
}

ModMatrix ModMatrix::companion(uint32_t ell, const std::vector<uint32_t>& monic) {
    if (monic.empty() || monic.back() % ell != 1) throw std::invalid_argument("companion: polynomial must be monic");
    const int n = static_cast<int>(monic.size()) - 1;
    ModMatrix m(ell, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) m(i, n - 1) = (ell - monic[i] % ell) % ell;
    return m;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
    require_same(*this, o);
    ModMatrix r(ell_, n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const uint64_t x = (*this)(i, k);
            if (!x) continue;
            for (int j = 0; j < n_; ++j) r(i, j) = static_cast<uint32_t>((r(i, j) + x * o(k, j)) % ell_);
        }
    return r;
}

ModMatrix ModMatrix::operator+(const ModMatrix& o) const {
    require_same(*this, o);
    ModMatrix r(ell_, n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = addm(a_[i], o.a_[i], ell_);
    return r;
}

ModMatrix ModMatrix::operator-(const ModMatrix& o) const {
    require_same(*this, o);
    ModMatrix r(ell_, n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = subm(a_[i], o.a_[i], ell_);
    return r;
}

ModMatrix ModMatrix::scaled(uint32_t c) const {
    ModMatrix r(ell_, n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = mulm(a_[i], c % ell_, ell_);
    return r;
}

ModMatrix ModMatrix::transpose() const {
    ModMatrix r(ell_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ModMatrix ModMatrix::pow(uint64_t e) const {
    ModMatrix result = identity(ell_, n_), base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

ModVec ModMatrix::apply(const ModVec& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("ModMatrix::apply: size mismatch");
    ModVec r(n_, 0);
    for (int i = 0; i < n_; ++i) {
        uint64_t s = 0;
        for (int j = 0; j < n_; ++j) s = (s + static_cast<uint64_t>((*this)(i, j)) * v[j]) % ell_;
        r[i] = static_cast<uint32_t>(s);
    }
    return r;
}

uint32_t ModMatrix::det() const {
    ModMatrix m = *this;
    uint32_t d = 1 % ell_;
    for (int c = 0; c < n_; ++c) {
        int piv = -1;
        for (int r = c; r < n_; ++r)
            if (m(r, c)) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n_; ++j) std::swap(m(piv, j), m(c, j));
            d = (ell_ - d) % ell_;
        }
        d = mulm(d, m(c, c), ell_);
        const uint32_t inv = mod_inv(m(c, c), ell_);
        for (int r = c + 1; r < n_; ++r) {
            if (!m(r, c)) continue;
            const uint32_t f = mulm(m(r, c), inv, ell_);
            for (int j = c; j < n_; ++j) m(r, j) = subm(m(r, j), mulm(f, m(c, j), ell_), ell_);
        }
    }
    return d;
}

std::vector<uint32_t> ModMatrix::charpoly() const {
    const uint32_t l = ell_;
    const int n = n_;
    ModMatrix h = *this;
    // similarity reduction to upper Hessenberg form
    for (int j = 0; j + 2 < n; ++j) {
        int piv = -1;
        for (int i = j + 1; i < n; ++i)
            if (h(i, j)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != j + 1) {
            for (int c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
            for (int r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
        }
        const uint32_t inv = mod_inv(h(j + 1, j), l);
        for (int k = j + 2; k < n; ++k) {
            if (!h(k, j)) continue;
            const uint32_t f = mulm(h(k, j), inv, l);
            for (int c = 0; c < n; ++c) h(k, c) = subm(h(k, c), mulm(f, h(j + 1, c), l), l);
            for (int r = 0; r < n; ++r) h(r, j + 1) = addm(h(r, j + 1), mulm(f, h(r, k), l), l);
        }
    }
    // p_m = (T - h_mm) p_{m-1} - sum_i h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    std::vector<std::vector<uint32_t>> p(n + 1);
    p[0] = {1 % l};
    for (int m = 1; m <= n; ++m) {
        std::vector<uint32_t> cur(m + 1, 0);
        const auto& prev = p[m - 1];
        for (int i = 0; i < m; ++i) {
            cur[i + 1] = addm(cur[i + 1], prev[i], l);
            cur[i] = subm(cur[i], mulm(h(m - 1, m - 1), prev[i], l), l);
        }
        uint32_t prod = 1 % l;
        for (int i = m - 1; i >= 1; --i) {
            prod = mulm(prod, h(i, i - 1), l);
            const uint32_t coef = mulm(h(i - 1, m - 1), prod, l);
            if (!coef) continue;
            const auto& q = p[i - 1];
            for (size_t k = 0; k < q.size(); ++k) cur[k] = subm(cur[k], mulm(coef, q[k], l), l);
        }
        p[m] = std::move(cur);
    }
    return p[n];
}

bool ModMatrix::is_identity() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

std::string ModMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- spaces

OrthogonalSpace::OrthogonalSpace(ModMatrix gram) : gram_(std::move(gram)) {
    if (!(gram_.transpose() == gram_)) throw std::invalid_argument("OrthogonalSpace: gram matrix not symmetric");
    if (gram_.det() == 0) throw std::invalid_argument("OrthogonalSpace: degenerate pairing");
}

OrthogonalSpace OrthogonalSpace::standard(uint32_t ell, int n) { return OrthogonalSpace(ModMatrix::identity(ell, n)); }

OrthogonalSpace OrthogonalSpace::random(uint32_t ell, int n, Rng& rng) {
    for (;;) {
        ModMatrix g(ell, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) g(i, j) = g(j, i) = static_cast<uint32_t>(rng() % ell);
        if (g.det() != 0) return OrthogonalSpace(std::move(g));
    }
}

uint32_t OrthogonalSpace::pair(const ModVec& u, const ModVec& v) const {
    const ModVec gv = gram_.apply(v);
    uint64_t s = 0;
    for (int i = 0; i < dim(); ++i) s = (s + static_cast<uint64_t>(u[i]) * gv[i]) % ell();
    return static_cast<uint32_t>(s);
}

ModMatrix reflection(const OrthogonalSpace& V, const ModVec& v) {
    const uint32_t l = V.ell();
    const uint32_t vv = V.pair(v, v);
    if (vv == 0) throw std::domain_error("reflection: isotropic vector");
    // x -> x - 2 <x,v>/<v,v> v, i.e. I - (2/<v,v>) v (G v)^T
    const ModVec gv = V.gram().apply(v);
    const uint32_t c = mulm(2, mod_inv(vv, l), l);
    ModMatrix r = ModMatrix::identity(l, V.dim());
    for (int i = 0; i < V.dim(); ++i)
        for (int j = 0; j < V.dim(); ++j) r(i, j) = subm(r(i, j), mulm(c, mulm(v[i], gv[j], l), l), l);
    return r;
}

bool is_orthogonal(const OrthogonalSpace& V, const ModMatrix& A) {
    return A.ell() == V.ell() && A.size() == V.dim() && A.transpose() * V.gram() * A == V.gram();
}

SquareClass discriminant(const OrthogonalSpace& V) { return square_class_from_sign(legendre_u32(V.gram().det(), V.ell())); }

namespace {

ModVec random_vector(uint32_t l, int n, Rng& rng) {
    ModVec v(n);
    for (auto& x : v) x = static_cast<uint32_t>(rng() % l);
    return v;
}

ModVec random_anisotropic(const OrthogonalSpace& V, Rng& rng) {
    for (;;) {
        ModVec v = random_vector(V.ell(), V.dim(), rng);
        if (V.pair(v, v) != 0) return v;
    }
}

}  // namespace

namespace {

// Component of v orthogonal to the anisotropic vectors in basis.
ModVec project_out(const OrthogonalSpace& V, ModVec v, const std::vector<ModVec>& basis) {
    const uint32_t l = V.ell();
    for (const auto& u : basis) {
        const uint32_t c = mulm(V.pair(v, u), mod_inv(V.pair(u, u), l), l);
        for (int i = 0; i < V.dim(); ++i) v[i] = subm(v[i], mulm(c, u[i], l), l);
    }
    return v;
}

// Orthogonal basis of anisotropic vectors (Gram-Schmidt).
std::vector<ModVec> orthogonal_basis(const OrthogonalSpace& V) {
    const uint32_t l = V.ell();
    const int n = V.dim();
    std::vector<ModVec> basis;
    while (static_cast<int>(basis.size()) < n) {
        std::vector<ModVec> proj;
        for (int a = 0; a < n; ++a) {
            ModVec e(n, 0);
            e[a] = 1;
            proj.push_back(project_out(V, e, basis));
        }
        std::optional<ModVec> pick;
        for (const auto& v : proj)
            if (V.pair(v, v)) {
                pick = v;
                break;
            }
        // all projections isotropic: a sum of two with nonzero pairing is anisotropic
        for (int a = 0; a < n && !pick; ++a)
            for (int b = a + 1; b < n && !pick; ++b)
                if (V.pair(proj[a], proj[b])) {
                    ModVec v(n);
                    for (int i = 0; i < n; ++i) v[i] = addm(proj[a][i], proj[b][i], l);
                    pick = v;
                }
        if (!pick) throw std::logic_error("orthogonal_basis: degenerate form");
        basis.push_back(*pick);
    }
    return basis;
}

}  // namespace

// Explicit Cartan-Dieudonne decomposition: for each vector u of an orthogonal
// basis, one or two reflections send Mu back to u while fixing the earlier ones.
SquareClass spinor_norm(const OrthogonalSpace& V, const ModMatrix& A) {
    if (!is_orthogonal(V, A)) throw std::invalid_argument("spinor_norm: matrix is not orthogonal");
    const uint32_t l = V.ell();
    const int n = V.dim();
    ModMatrix M = A;
    SquareClass cls = SquareClass::trivial;
    auto reflect = [&](const ModVec& w) {
        M = reflection(V, w) * M;
        cls = cls * square_class_from_sign(legendre_u32(V.pair(w, w), l));
    };
    for (const auto& u : orthogonal_basis(V)) {
        const ModVec x = M.apply(u);
        ModVec dm(n), dp(n);
        for (int i = 0; i < n; ++i) {
            dm[i] = subm(x[i], u[i], l);
            dp[i] = addm(x[i], u[i], l);
        }
        if (x == u) continue;
        if (V.pair(dm, dm)) {
            reflect(dm);
        } else {
            // Q(x - u) + Q(x + u) = 4 Q(u) != 0
            reflect(dp);
            reflect(u);
        }
    }
    if (!M.is_identity()) throw std::logic_error("spinor_norm: decomposition did not reach the identity");
    return cls;
}

std::optional<SquareClass> spinor_zassenhaus(const ModMatrix& A) {
    const uint32_t l = A.ell();
    const uint32_t d = (ModMatrix::identity(l, A.size()) + A).det();
    if (d == 0) return std::nullopt;
    int s = legendre_u32(d, l);
    if (A.size() % 2 == 1) s *= legendre_u32(2, l);
    return square_class_from_sign(s);
}

const char* to_string(OmegaClass c) {
    switch (c) {
        case OmegaClass::in_omega: return "omega";
        case OmegaClass::so_not_omega: return "so_not_omega";
        case OmegaClass::not_so: return "not_so";
    }
    return "?";
}

OmegaMembership omega_membership(const OrthogonalSpace& V, const ModMatrix& A) {
    OmegaMembership r;
    r.spin = spinor_norm(V, A);
    const uint32_t d = A.det();
    r.det = d == 1 ? 1 : -1;
    if (r.det == -1) r.cls = OmegaClass::not_so;
    else r.cls = r.spin == SquareClass::trivial ? OmegaClass::in_omega : OmegaClass::so_not_omega;
    return r;
}

ModMatrix random_orthogonal(const OrthogonalSpace& V, Rng& rng, int max_reflections) {
    ModMatrix M = ModMatrix::identity(V.ell(), V.dim());
    const int k = static_cast<int>(rng() % static_cast<uint64_t>(max_reflections + 1));
    for (int i = 0; i < k; ++i) M = reflection(V, random_anisotropic(V, rng)) * M;
    return M;
}

OrderCheck order_excludes(const ModMatrix& A, const std::vector<uint64_t>& exponents) {
    OrderCheck r;
    for (auto e : exponents)
        if (A.pow(e).is_identity()) r.failing.push_back(e);
    r.pass = r.failing.empty();
    return r;
}

OrderCheck order_excludes_charpoly(const ModMatrix& A, const std::vector<uint64_t>& exponents) {
    const uint32_t l = A.ell();
    const int n = A.size();
    // (T - 1)^n
    std::vector<uint32_t> unip(1, 1 % l);
    for (int i = 0; i < n; ++i) {
        std::vector<uint32_t> next(unip.size() + 1, 0);
        for (size_t k = 0; k < unip.size(); ++k) {
            next[k + 1] = addm(next[k + 1], unip[k], l);
            next[k] = subm(next[k], unip[k], l);
        }
        unip = std::move(next);
    }
    OrderCheck r;
    for (auto e : exponents)
        if (A.pow(e).charpoly() == unip) r.failing.push_back(e);
    r.pass = r.failing.empty();
    return r;
}

}  // namespace ellorth
