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

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "ellorth/global.hpp"
#include "ellorth/parallel.hpp"
#include "ellorth/trace_tables.hpp"

namespace ellorth {

namespace {

mpz_class upow(uint64_t b, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

uint64_t field_size(uint32_t q, int k) {
    long double v = std::pow(static_cast<long double>(q), k);
    return v > 1.8e19L ? UINT64_MAX : static_cast<uint64_t>(v);
}

// Log-form coefficients of a polynomial over F_p inside F_{p^k}.
std::vector<uint32_t> log_coeffs(const LogField& K, const PolyFp& f) {
    std::vector<uint32_t> out;
    for (auto c : f.coeffs()) out.push_back(K.from_int(c));
    return out;
}

uint32_t horner(const LogField& K, const std::vector<uint32_t>& c, uint32_t t) {
    if (c.empty()) return K.zero();
    uint32_t v = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) v = K.add(K.mul(v, t), c[i]);
    return v;
}

// alpha^m + beta^m where alpha + beta = a, alpha beta = Q.
mpz_class power_sum(int64_t a, const mpz_class& Q, int m) {
    mpz_class s0 = 2, s1 = a;
    if (m == 0) return s0;
    for (int i = 2; i <= m; ++i) {
        mpz_class s2 = a * s1 - Q * s0;
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    return s1;
}

// Trace of a place of degree d on the fiber over F_{q^(d m)}, summed over its d points.
struct PlaceTrace {
    int degree = 1;
    ReductionType type = ReductionType::good;
    int64_t a = 0;

    mpz_class contribution(uint32_t q, int m) const {
        switch (type) {
            case ReductionType::additive: return 0;
            case ReductionType::split_multiplicative: return mpz_class(degree);
            case ReductionType::nonsplit_multiplicative: return mpz_class(m % 2 ? -degree : degree);
            case ReductionType::good: return degree * power_sum(a, upow(q, degree), m);
        }
        return 0;
    }
};

int64_t good_trace(const WeierstrassCurve& curve, const LocalReductionData& d) {
    if (d.degree() == 1 || d.a != 0) return d.a;
    return count_fiber_points(curve, d.place, CountMode::charsum);
}

std::vector<PlaceTrace> special_places(const WeierstrassCurve& curve, const GlobalInvariants& inv, int K,
                                       std::vector<Place>* finite_out = nullptr) {
    std::vector<PlaceTrace> out;
    auto add = [&](const LocalReductionData& d) {
        if (d.degree() > K && !d.place.is_infinity()) {
            if (finite_out) finite_out->push_back(d.place);
            out.push_back({d.degree(), d.type, 0});
            return;
        }
        PlaceTrace t{d.degree(), d.type, d.a};
        if (d.type == ReductionType::good) t.a = good_trace(curve, d);
        if (finite_out && !d.place.is_infinity()) finite_out->push_back(d.place);
        out.push_back(t);
    };
    for (const auto& d : inv.bad)
        if (!d.place.is_infinity()) add(d);
    for (const auto& d : inv.nonminimal) add(d);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- polynomial

int LFunctionPoly::degree() const {
    int d = static_cast<int>(c.size()) - 1;
    while (d > 0 && c[d] == 0) --d;
    return d;
}

mpq_class LFunctionPoly::value_at_inverse_q() const {
    mpq_class v = 0;
    for (size_t i = 0; i < c.size(); ++i) v += mpq_class(c[i], upow(q, i));
    v.canonicalize();
    return v;
}

std::vector<mpq_class> LFunctionPoly::normalized() const {
    std::vector<mpq_class> r;
    for (size_t i = 0; i < c.size(); ++i) {
        mpq_class v(c[i], upow(q, i));
        v.canonicalize();
        r.push_back(v);
    }
    return r;
}

std::string LFunctionPoly::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        mpz_class a = abs(c[i]);
        if (first) os << (c[i] < 0 ? "-" : "");
        else os << (c[i] < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) os << "T";
        if (i >= 2) os << "^" << i;
    }
    return first ? "0" : os.str();
}

// ---------------------------------------------------------------- traces

std::vector<int64_t> trace_sums(const WeierstrassCurve& curve, const GlobalInvariants& inv, int K, int jobs) {
    const uint32_t q = inv.q;
    if (jobs <= 0) jobs = default_jobs();
    std::vector<int64_t> S(K + 1, 0);
    const auto specials = special_places(curve, inv, K);
    PlaceTrace inf{1, inv.infinity->type, inv.infinity->a};
    for (int k = 1; k <= K; ++k) {
        const auto tables = cubic_sum_tables(q, k);
        const LogField& F = tables->field();
        const auto A = log_coeffs(F, curve.short_a()), B = log_coeffs(F, curve.short_b());
        const uint32_t four = F.from_int(4), tw7 = F.from_int(27);
        std::vector<int64_t> partial(static_cast<size_t>(jobs) + 1, 0);
        parallel_chunks(F.order(), jobs, [&](size_t b, size_t e, size_t w) {
            int64_t s = 0;
            for (size_t code = b; code < e; ++code) {
                const uint32_t t = F.log_of(static_cast<uint32_t>(code));
                const uint32_t a = horner(F, A, t), bb = horner(F, B, t);
                const uint32_t disc = F.add(F.mul(four, F.pow_small(a, 3)), F.mul(tw7, F.pow_small(bb, 2)));
                if (disc == F.zero()) continue;  // handled by the special places below
                s -= tables->character_sum(a, bb);
            }
            partial[w] = s;
        });
        mpz_class total = 0;
        for (auto v : partial) total += v;
        total += inf.contribution(q, k);
        for (const auto& sp : specials)
            if (k % sp.degree == 0) total += sp.contribution(q, k / sp.degree);
        if (!total.fits_slong_p()) throw std::overflow_error("trace_sums: trace does not fit in 64 bits");
        S[k] = total.get_si();
    }
    return S;
}

std::vector<mpz_class> coefficients_from_traces(const std::vector<int64_t>& S, int K) {
    if (static_cast<int>(S.size()) < K + 1) throw std::invalid_argument("coefficients_from_traces: too few traces");
    std::vector<mpz_class> c(K + 1, 0);
    c[0] = 1;
    for (int i = 1; i <= K; ++i) {
        mpz_class acc = 0;
        for (int j = 1; j <= i; ++j) acc += mpz_class(static_cast<long>(S[j])) * c[i - j];
        if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(i)))
            throw std::logic_error("coefficients_from_traces: Newton identity gave a non-integer coefficient");
        mpz_divexact_ui(c[i].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(i));
    }
    return c;
}

uint64_t lfunction_required_field(uint32_t q, int N) { return field_size(q, N / 2 + 1); }

LFunctionResult lfunction(const WeierstrassCurve& curve, const GlobalInvariants& inv, const LFunctionOptions& opt) {
    LFunctionResult r;
    const int N = inv.N;
    const uint32_t q = inv.q;
    r.L.q = q;
    int K = N / 2 + 1;
    if (field_size(q, K) > opt.max_field) {
        r.note = "F_{q^" + std::to_string(K) + "} exceeds the field budget";
        return r;
    }
    while (K < N + 1 && field_size(q, K + 1) <= opt.extra_field) ++K;
    r.traces = trace_sums(curve, inv, K, opt.jobs);
    r.direct = coefficients_from_traces(r.traces, K);
    r.L.c.assign(N + 1, 0);
    for (int i = 0; i <= N; ++i) {
        if (i <= K) r.L.c[i] = r.direct[i];
        else r.L.c[i] = inv.epsilon * upow(q, 2 * i - N) * r.direct[N - i];
    }
    for (int i = 0; 2 * i <= N; ++i) {
        if (N - i > K) continue;
        ++r.checked_pairs;
        if (r.direct[N - i] != inv.epsilon * upow(q, N - 2 * i) * r.direct[i]) r.direct_consistent = false;
    }
    for (int j = N + 1; j <= K; ++j)
        if (r.direct[j] != 0) r.direct_consistent = false;
    r.method = K >= N ? LMethod::traces_full : LMethod::traces_half;
    return r;
}

// ---------------------------------------------------------------- Euler product

double euler_product_cost(uint32_t q, int N) {
    double c = 0;
    for (int d = 1; d <= N; ++d) c += std::pow(static_cast<double>(q), 2.0 * d) / d;
    return c;
}

LFunctionPoly lfunction_euler_product(const WeierstrassCurve& curve, const GlobalInvariants& inv) {
    const int N = inv.N;
    const uint32_t q = inv.q;
    std::vector<mpz_class> s(N + 1, 0);
    s[0] = 1;
    // multiply by 1 / (1 - a T^d + Q T^(2d)), or 1 / (1 - a T^d) when Q = 0
    auto divide = [&](int d, const mpz_class& a, const mpz_class& Q) {
        for (int i = 0; i <= N; ++i) {
            if (i >= d) s[i] += a * s[i - d];
            if (i >= 2 * d) s[i] -= Q * s[i - 2 * d];
        }
    };
    auto factor_of = [&](const LocalReductionData& d, int64_t a_good) {
        const int deg = d.degree();
        switch (d.type) {
            case ReductionType::good: divide(deg, a_good, upow(q, deg)); break;
            case ReductionType::split_multiplicative: divide(deg, 1, 0); break;
            case ReductionType::nonsplit_multiplicative: divide(deg, -1, 0); break;
            case ReductionType::additive: break;
        }
    };
    factor_of(*inv.infinity, inv.infinity->a);

    std::vector<const LocalReductionData*> specials;
    for (const auto& d : inv.bad)
        if (!d.place.is_infinity()) specials.push_back(&d);
    for (const auto& d : inv.nonminimal) specials.push_back(&d);

    for (int d = 1; d <= N; ++d) {
        const auto F = log_field(q, d);
        const uint64_t m = F->order() - 1;
        const auto A = log_coeffs(*F, curve.short_a()), B = log_coeffs(*F, curve.short_b());
        const uint32_t four = F->from_int(4), tw7 = F->from_int(27);
        std::vector<std::vector<uint32_t>> pis;
        std::vector<const LocalReductionData*> here;
        for (auto* sp : specials)
            if (sp->degree() == d) {
                here.push_back(sp);
                pis.push_back(log_coeffs(*F, sp->place.uniformizer()));
            }
        std::vector<uint32_t> reps;
        if (d == 1) reps.push_back(F->zero());
        for (uint64_t L = 0; L < m; ++L) {
            // keep L if it is the least element of a Frobenius orbit of size d
            bool keep = true;
            uint64_t x = L;
            for (int i = 1; i < d && keep; ++i) {
                x = static_cast<uint64_t>((static_cast<unsigned __int128>(x) * q) % m);
                if (x <= L) keep = false;
            }
            if (keep) reps.push_back(static_cast<uint32_t>(L));
        }
        // per-place traces, in a fixed order
        std::vector<int64_t> traces(reps.size(), 0);
        std::vector<int> special_index(reps.size(), -1);
        parallel_chunks(reps.size(), 0, [&](size_t b, size_t e, size_t) {
            for (size_t i = b; i < e; ++i) {
                const uint32_t t = reps[i];
                const uint32_t a = horner(*F, A, t), bb = horner(*F, B, t);
                const uint32_t disc = F->add(F->mul(four, F->pow_small(a, 3)), F->mul(tw7, F->pow_small(bb, 2)));
                if (disc == F->zero()) {
                    for (size_t j = 0; j < pis.size(); ++j)
                        if (horner(*F, pis[j], t) == F->zero()) special_index[i] = static_cast<int>(j);
                    if (special_index[i] < 0) throw std::logic_error("euler product: root of the discriminant with no place");
                    continue;
                }
                int64_t sum = 0;
                for (uint64_t c = 0; c <= m; ++c) {
                    const uint32_t xx = c == m ? F->zero() : static_cast<uint32_t>(c);
                    sum += F->chi(F->add(F->add(F->pow_small(xx, 3), F->mul(a, xx)), bb));
                }
                traces[i] = -sum;
            }
        });
        for (size_t i = 0; i < reps.size(); ++i) {
            if (special_index[i] >= 0) {
                const auto* sp = here[special_index[i]];
                factor_of(*sp, sp->type == ReductionType::good ? good_trace(curve, *sp) : 0);
            } else {
                divide(d, traces[i], upow(q, d));
            }
        }
    }
    LFunctionPoly L{q, std::move(s)};
    return L;
}

// ---------------------------------------------------------------- checks

FECheck check_functional_equation(const LFunctionPoly& L, int epsilon) {
    FECheck r;
    const int N = static_cast<int>(L.c.size()) - 1;
    for (int i = 0; i <= N; ++i) {
        const int lo = std::max(0, N - 2 * i), hi = std::max(0, 2 * i - N);
        if (L.c[N - i] * upow(L.q, hi) != epsilon * L.c[i] * upow(L.q, lo)) {
            r.pass = false;
            r.first_mismatch = std::min(i, N - i);
            return r;
        }
    }
    return r;
}

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::inapplicable: return "inapplicable";
    }
    return "?";
}

bool is_perfect_square(const mpz_class& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

bool is_rational_square(const mpq_class& r) {
    mpq_class c = r;
    c.canonicalize();
    return is_perfect_square(c.get_num()) && is_perfect_square(c.get_den());
}

namespace {
mpq_class bsd_prediction(const GlobalInvariants& inv) {
    const int e = kBaseGenus - 1 + inv.chi;
    mpq_class p = e >= 0 ? mpq_class(upow(inv.q, e)) : mpq_class(1, upow(inv.q, -e));
    p *= inv.c_E;
    p.canonicalize();
    return p;
}
}  // namespace

bool bsd_exact_square(const GlobalInvariants& inv, const LFunctionPoly& L) {
    const mpq_class v = L.value_at_inverse_q();
    if (v == 0) return false;
    return is_rational_square(v / bsd_prediction(inv));
}

BsdCheck bsd_square_class_check(const GlobalInvariants& inv, const LFunctionPoly& L, uint32_t ell) {
    if (!is_prime_u64(ell) || ell < 5 || ell == inv.q || inv.script_L % ell == 0)
        throw std::invalid_argument("bsd_square_class_check: ell must be a prime >= 5 not dividing 6 q L");
    BsdCheck r;
    r.ell = ell;
    const mpq_class v = L.value_at_inverse_q();
    if (v == 0) {
        r.note = "L(1/q) = 0";
        return r;
    }
    r.exact_square = is_rational_square(v / bsd_prediction(inv));
    const mpq_class pred = bsd_prediction(inv);
    if (legendre_mod(v, ell) == 0) {
        r.note = "ell divides L(1/q)";
        return r;
    }
    if (legendre_mod(pred, ell) == 0) {
        r.note = "ell divides c_E";
        return r;
    }
    r.value_class = square_class_of_rational(v, ell);
    r.predicted_class = square_class_of_rational(pred, ell);
    r.status = r.value_class == r.predicted_class ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

std::vector<uint32_t> normalized_poly_mod_ell(const LFunctionPoly& L, uint32_t ell) {
    if (L.q % ell == 0) throw std::invalid_argument("normalized_poly_mod_ell: q not invertible mod ell");
    const uint32_t qinv = mod_inv(L.q % ell, ell);
    std::vector<uint32_t> c;
    uint64_t s = 1;
    for (const auto& x : L.c) {
        mpz_class r = x % ell;
        if (r < 0) r += ell;
        c.push_back(static_cast<uint32_t>(r.get_ui() * s % ell));
        s = s * qinv % ell;
    }
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    const uint32_t li = mod_inv(c.back(), ell);
    for (auto& x : c) x = static_cast<uint32_t>(static_cast<uint64_t>(x) * li % ell);
    return c;
}

ModMatrix frobenius_matrix_mod_ell(const LFunctionPoly& L, uint32_t ell) {
    if (ell < 5 || !is_prime_u64(ell)) throw std::invalid_argument("frobenius_matrix_mod_ell: ell must be a prime >= 5");
    const auto P = normalized_poly_mod_ell(L, ell);
    if (static_cast<int>(P.size()) - 1 != L.degree()) throw std::domain_error("frobenius_matrix_mod_ell: leading coefficient vanishes mod ell");
    ModMatrix M = ModMatrix::companion(ell, P);
    if (M.charpoly() != P) throw std::logic_error("frobenius_matrix_mod_ell: characteristic polynomial mismatch");
    return M;
}

}  // namespace ellorth
