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

// Command-line front end. JSON goes to stdout (or --out); a short
// human-readable summary goes to stderr.
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellorth/families.hpp"
#include "ellorth/global.hpp"
#include "ellorth/order_witness.hpp"

using namespace ellorth;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string target;  // curve file or family id/path
    std::string place;
    std::vector<uint32_t> primes;
    std::vector<uint32_t> ells;
    long n = -1;
    int jobs = 0;
    std::string out;
    uint64_t seed = kDefaultSeed;
    bool check_fe = false;
    uint64_t max_field = LFunctionOptions{}.max_field;
    uint32_t p = 0;
    long w = -1, m = -1;
};

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint32_t> primes_between(uint32_t lo, uint32_t hi) {
    std::vector<uint32_t> v;
    for (uint32_t x = lo; x <= hi; ++x)
        if (is_prime(x)) v.push_back(x);
    return v;
}

void validate(const RunConfig& cfg) {
    for (uint32_t p : cfg.primes)
        if (p < 5 || !is_prime(p)) throw UsageError("--primes: " + std::to_string(p) + " is not a prime >= 5");
    for (uint32_t l : cfg.ells)
        if (l < 5 || !is_prime(l)) throw UsageError("--ell: " + std::to_string(l) + " is not a prime >= 5");
    if (cfg.jobs < 0) throw UsageError("--jobs must be >= 0");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const RunConfig& cfg, const json& j) {
    if (cfg.out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream o(cfg.out);
    if (!o) throw UsageError("cannot write " + cfg.out);
    o << j.dump(2) << "\n";
}

// "inf", an integer a (the point t = a), or a dense ascending list for a
// monic irreducible polynomial.
Place parse_place(const PrimeField& F, const std::string& s) {
    if (s == "inf" || s == "infinity") return Place::infinity(F);
    try {
        if (!s.empty() && s.front() == '[') return Place::finite(PolyFp::from_ints(F, parse_int_list(s)));
        size_t used = 0;
        long long a = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return Place::finite(PolyFp::from_ints(F, {-a, 1}));
    } catch (const std::exception& e) {
        throw UsageError("bad place '" + s + "': " + e.what());
    }
}

WeierstrassCurve load_curve(const std::string& path) {
    try {
        return WeierstrassCurve::parse(read_file(path));
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
}

int cmd_reduce(const RunConfig& cfg) {
    auto E = load_curve(cfg.target);
    json j;
    j["p"] = E.p();
    if (!cfg.place.empty()) {
        auto d = local_reduce(E, parse_place(E.field(), cfg.place));
        j["reduction"] = to_json(d);
        std::cerr << d.place.to_string() << ": " << d.symbol.to_string() << ", c = " << d.tamagawa << ", "
                  << to_string(d.type) << "\n";
    } else {
        auto inv = global_invariants(E);
        j["reduction"] = json::array();
        for (const auto& d : inv.bad) {
            j["reduction"].push_back(to_json(d));
            std::cerr << d.place.to_string() << ": " << d.symbol.to_string() << ", c = " << d.tamagawa << "\n";
        }
    }
    emit(cfg, j);
    return 0;
}

int cmd_lfunction(const RunConfig& cfg) {
    auto E = load_curve(cfg.target);
    if (E.is_isotrivial()) throw UsageError(cfg.target + ": curve is isotrivial");
    auto inv = global_invariants(E);
    LFunctionOptions opt;
    opt.max_field = cfg.max_field;
    opt.jobs = cfg.jobs;
    auto r = lfunction(E, inv, opt);
    json j;
    j["invariants"] = to_json(inv);
    j["seed"] = cfg.seed;
    if (r.method == LMethod::unavailable) {
        j["L"] = nullptr;
        j["note"] = r.note;
        emit(cfg, j);
        std::cerr << "L unavailable: " << r.note << "\n";
        return 1;
    }
    std::vector<std::string> coeffs;
    for (const auto& c : r.L.c) coeffs.push_back(c.get_str());
    j["L"] = coeffs;
    j["L_text"] = r.L.to_string();
    j["method"] = r.method == LMethod::traces_full ? "traces_full" : "traces_half";
    j["direct_terms"] = static_cast<int>(r.direct.size()) - 1;
    j["checked_pairs"] = r.checked_pairs;
    j["direct_consistent"] = r.direct_consistent;
    std::cerr << "N = " << inv.N << ", chi = " << inv.chi << ", epsilon = " << inv.epsilon << "\n";
    std::cerr << "L(T) = " << r.L.to_string() << "\n";
    bool ok = r.direct_consistent;
    if (cfg.check_fe) {
        auto fe = check_functional_equation(r.L, inv.epsilon);
        j["fe"] = {{"pass", fe.pass}, {"epsilon", inv.epsilon}, {"first_mismatch", fe.first_mismatch},
                   {"redundant_pairs", r.checked_pairs}};
        std::cerr << "FE: " << (fe.pass && r.direct_consistent ? "pass" : "fail") << ", epsilon=" << inv.epsilon << "\n";
        ok = ok && fe.pass;
    }
    if (!cfg.ells.empty()) {
        j["bsd"] = json::array();
        for (uint32_t ell : cfg.ells) {
            json b{{"ell", ell}};
            if (ell == inv.q || inv.script_L % ell == 0) {
                b["status"] = "inapplicable";
                b["note"] = "ell divides 6 q L";
            } else {
                auto c = bsd_square_class_check(inv, r.L, ell);
                b["status"] = to_string(c.status);
                b["value_class"] = c.value_class == SquareClass::trivial ? "square" : "nonsquare";
                b["predicted_class"] = c.predicted_class == SquareClass::trivial ? "square" : "nonsquare";
                b["exact_square"] = c.exact_square;
                if (!c.note.empty()) b["note"] = c.note;
                if (c.status == CheckStatus::fail) ok = false;
            }
            std::cerr << "BSD ell=" << ell << ": " << b["status"].get<std::string>();
            if (b.contains("note")) std::cerr << " (" << b["note"].get<std::string>() << ")";
            std::cerr << "\n";
            j["bsd"].push_back(b);
        }
    }
    j["pass"] = ok;
    emit(cfg, j);
    return ok ? 0 : 1;
}

FamilySpec load_family(const std::string& id) {
    try {
        return resolve_family(id);
    } catch (const std::out_of_range&) {
        throw UsageError("unknown family '" + id + "'");
    } catch (const std::invalid_argument& e) {
        throw UsageError(id + ": " + e.what());
    }
}

int cmd_verify_family(const RunConfig& cfg) {
    auto spec = load_family(cfg.target);
    long n = cfg.n >= 0 ? cfg.n : spec.n_min();
    if (n < spec.n_min() || (spec.n_max() && n > *spec.n_max()))
        throw UsageError("--n " + std::to_string(n) + " is outside the family's range");
    auto fam = instantiate_family(spec, n);
    VerifyOptions opt;
    opt.jobs = cfg.jobs;
    if (!cfg.ells.empty()) opt.ells = cfg.ells;
    auto primes = cfg.primes.empty() ? primes_between(5, 31) : cfg.primes;
    auto rep = verify_profile(fam, primes, opt);
    auto j = to_json(rep);
    j["seed"] = cfg.seed;
    emit(cfg, j);
    std::cerr << summary(rep);
    return rep.pass() ? 0 : 1;
}

int cmd_order_sweep(const RunConfig& cfg) {
    auto ells = cfg.ells.empty() ? primes_between(5, 100) : cfg.ells;
    auto witnesses = default_order_witnesses();
    auto rows = order_sweep(witnesses, ells, default_order_exponents());
    auto j = to_json(witnesses, rows);
    bool ok = true;
    for (const auto& r : rows) {
        ok = ok && r.certified();
        std::cerr << "ell=" << r.ell << ":";
        for (size_t i = 0; i < r.verdicts.size(); ++i) {
            const auto& v = r.verdicts[i];
            std::cerr << "  (p=" << witnesses[i].p << ", m=" << witnesses[i].m << ") ";
            if (!v.applicable) {
                std::cerr << "n/a";
                continue;
            }
            if (v.exact.pass) {
                std::cerr << "pass";
            } else {
                std::cerr << "fail at e=";
                for (size_t k = 0; k < v.exact.failing.size(); ++k) std::cerr << (k ? "," : "") << v.exact.failing[k];
            }
        }
        std::cerr << (r.certified() ? "  -> certified\n" : "  -> NOT certified\n");
    }
    j["pass"] = ok;
    emit(cfg, j);
    return ok ? 0 : 1;
}

int cmd_instantiate(const RunConfig& cfg) {
    auto spec = load_family(cfg.target);
    long n = cfg.n >= 0 ? cfg.n : spec.n_min();
    auto fam = instantiate_family(spec, n);
    if (cfg.p == 0) throw UsageError("--p is required");
    if ((cfg.w < 0) == (cfg.m < 0)) throw UsageError("give exactly one of --w, --m");
    try {
        auto E = cfg.w >= 0 ? instantiate(fam, cfg.p, static_cast<uint32_t>(cfg.w))
                            : instantiate_at(fam, cfg.p, static_cast<uint32_t>(cfg.m));
        std::string text = E.curve.serialize();
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream o(cfg.out);
            o << text;
        }
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ellorth: elliptic surfaces over F_p(t), their L-functions and orthogonal monodromy checks"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out, "write JSON here instead of stdout");
    };

    auto* reduce = app.add_subcommand("reduce", "local reduction data of a curve file");
    reduce->add_option("curve", cfg.target, "curve file")->required();
    reduce->add_option("--place", cfg.place, "inf, an integer a (t = a), or [c0,c1,...,1]");
    common(reduce);

    auto* lf = app.add_subcommand("lfunction", "global invariants and L(T, E) of a curve file");
    lf->add_option("curve", cfg.target, "curve file")->required();
    lf->add_flag("--check-fe", cfg.check_fe, "check the functional equation");
    lf->add_option("--ell", cfg.ells, "primes for the BSD square-class check")->delimiter(',');
    lf->add_option("--max-field", cfg.max_field, "largest extension field to enumerate");
    common(lf);

    auto* vf = app.add_subcommand("verify-family", "check a family's claimed profile over a prime grid");
    vf->add_option("family", cfg.target, "built-in id or family file")->required();
    vf->add_option("--n", cfg.n, "family parameter n");
    vf->add_option("--primes", cfg.primes, "primes p (default 5..31)")->delimiter(',');
    vf->add_option("--ell", cfg.ells, "primes ell for the square-class conditions")->delimiter(',');
    common(vf);

    auto* sweep = app.add_subcommand("order-sweep", "order exclusion sweep for the two Frobenius witnesses");
    sweep->add_option("--ell", cfg.ells, "primes ell (default 5..100)")->delimiter(',');
    common(sweep);

    auto* inst = app.add_subcommand("instantiate", "write the curve file of a family member");
    inst->add_option("family", cfg.target, "built-in id or family file")->required();
    inst->add_option("--n", cfg.n, "family parameter n");
    inst->add_option("--p", cfg.p, "prime")->required();
    inst->add_option("--w", cfg.w, "parameter w (twist point h(w))");
    inst->add_option("--m", cfg.m, "twist point m directly");
    common(inst);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.jobs == 0) cfg.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    try {
        validate(cfg);
        if (cfg.command == "reduce") return cmd_reduce(cfg);
        if (cfg.command == "lfunction") return cmd_lfunction(cfg);
        if (cfg.command == "verify-family") return cmd_verify_family(cfg);
        if (cfg.command == "order-sweep") return cmd_order_sweep(cfg);
        if (cfg.command == "instantiate") return cmd_instantiate(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
