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

#include "ellorth/families.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ellorth/parallel.hpp"

namespace ellorth {

const std::vector<std::pair<std::string, std::string>>& embedded_family_texts();  // generated

namespace {

const RationalField kQ{};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    return out;
}

// Recursive-descent parser for polynomial expressions.
class ExprParser {
public:
    ExprParser(const std::string& s, char var) : s_(s), var_(var) {}

    PolyQ parse() {
        PolyQ r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("polynomial '" + s_ + "': " + msg);
    }
    bool starts_primary() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == var_ || c == '(';
    }
    PolyQ expr() {
        PolyQ r = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                r += term();
            } else if (peek('-')) {
                ++pos_;
                r -= term();
            } else {
                return r;
            }
        }
    }
    PolyQ term() {
        PolyQ r = unary();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                r *= unary();
            } else if (starts_primary()) {
                r *= unary();
            } else {
                return r;
            }
        }
    }
    PolyQ unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }
    PolyQ power() {
        PolyQ b = primary();
        if (peek('^')) {
            ++pos_;
            skip();
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (st == pos_) fail("exponent expected");
            b = b.pow(static_cast<unsigned>(std::stoul(s_.substr(st, pos_ - st))));
        }
        return b;
    }
    mpz_class integer() {
        skip();
        size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (st == pos_) fail("number expected");
        return mpz_class(s_.substr(st, pos_ - st));
    }
    PolyQ primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            PolyQ r = expr();
            if (!peek(')')) fail("')' expected");
            ++pos_;
            return r;
        }
        if (c == var_) {
            ++pos_;
            return PolyQ::x(kQ);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpq_class v(integer());
            if (peek('/')) {
                ++pos_;
                mpz_class d = integer();
                if (d == 0) fail("zero denominator");
                v /= mpq_class(d);
                v.canonicalize();
            }
            return PolyQ::constant(kQ, v);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    char var_;
    size_t pos_ = 0;
};

mpq_class parse_rational(const std::string& s) {
    std::string t = trim(s);
    mpq_class v;
    if (v.set_str(t, 10) != 0) throw ParseError("bad rational '" + s + "'");
    v.canonicalize();
    return v;
}

std::optional<mpq_class> parse_place(const std::string& s) {
    std::string t = trim(s);
    if (t == "inf") return std::nullopt;
    return parse_rational(t);
}

std::vector<KodairaSymbol> parse_symbols(const std::string& s) {
    std::vector<KodairaSymbol> out;
    for (const auto& part : split(s, '|')) out.push_back(KodairaSymbol::parse(part));
    return out;
}

std::vector<int> parse_int_set(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split(s, '|')) out.push_back(std::stoi(part));
    return out;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    for (const auto& part : split(s, ','))
        if (!part.empty()) out.push_back(std::stol(part));
    return out;
}

PlaceClaim& claim_for(std::vector<PlaceClaim>& v, const std::optional<mpq_class>& at) {
    for (auto& c : v)
        if (c.at == at) return c;
    v.push_back(PlaceClaim{at, {}, {}});
    return v.back();
}

int radical_degree(const PolyQ& f) {
    int d = 0;
    for (const auto& [g, m] : squarefree_decomposition(f)) d += g.degree();
    return d;
}
int radical_degree(const PolyFp& f) {
    int d = 0;
    for (const auto& [g, m] : squarefree_decomposition(f)) d += g.degree();
    return d;
}

struct Quantities {
    PolyQ c4, c6, disc;
};

Quantities quantities(const PolyQ& a2, const PolyQ& a4, const PolyQ& a6) {
    auto k = [](long v) { return PolyQ::constant(kQ, mpq_class(v)); };
    PolyQ b2 = k(4) * a2, b4 = k(2) * a4, b6 = k(4) * a6;
    PolyQ b8 = k(4) * a2 * a6 - a4 * a4;
    Quantities q;
    q.c4 = b2 * b2 - k(24) * b4;
    q.c6 = -(b2 * b2 * b2) + k(36) * b2 * b4 - k(216) * b6;
    q.disc = -(b2 * b2 * b8) - k(8) * b4 * b4 * b4 - k(27) * b6 * b6 + k(9) * b2 * b4 * b6;
    return q;
}

bool is_power_of_4(mpz_class c) {
    if (c <= 0) return false;
    while (c % 4 == 0) c /= 4;
    return c == 1;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "|" : "") + std::to_string(v[i]);
    return s;
}

std::string symbols_text(const std::vector<KodairaSymbol>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "|" : "") + v[i].to_string();
    return s;
}

std::string place_text(const std::optional<mpq_class>& at) { return at ? at->get_str() : "inf"; }

Place place_of(const PrimeField& F, const std::optional<mpq_class>& at) {
    if (!at) return Place::infinity(F);
    return Place::finite(PolyFp::linear(F, F.from_rational(*at)));
}

}  // namespace

// ---------------------------------------------------------------- parsing

PolyQ parse_poly_expr(const std::string& text, char var) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') throw ParseError("polynomial list '" + text + "': missing ']'");
        std::vector<mpq_class> c;
        for (const auto& part : split(t.substr(1, t.size() - 2), ','))
            if (!part.empty()) c.push_back(parse_rational(part));
        return PolyQ(kQ, c);
    }
    if (t.empty()) throw ParseError("empty polynomial");
    return ExprParser(t, var).parse();
}

LinearInN LinearInN::parse(const std::string& s_in) {
    std::string s;
    for (char c : s_in)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    static const std::regex re(R"(^(?:([+-]?\d*)n)?([+-]?\d+)?$)");
    std::smatch m;
    if (s.empty() || !std::regex_match(s, m, re)) throw ParseError("bad linear expression '" + s_in + "'");
    LinearInN r;
    if (s.find('n') != std::string::npos) {
        std::string a = m[1].str();
        r.a = (a.empty() || a == "+") ? 1 : (a == "-" ? -1 : std::stol(a));
    }
    if (m[2].matched) r.b = std::stol(m[2].str());
    return r;
}

RationalMapQ make_rational_map(PolyQ num, PolyQ den) {
    if (den.is_zero()) throw std::invalid_argument("rational map with zero denominator");
    PolyQ g = gcd(num, den);
    if (g.degree() > 0) {
        num = num / g;
        den = den / g;
    }
    // common scale: multiply both by the lcm of all denominators, divide by the content
    mpz_class l = 1, c = 0;
    for (const auto* f : {&num, &den})
        for (const auto& a : f->coeffs()) l = lcm(l, mpz_class(a.get_den()));
    for (const auto* f : {&num, &den})
        for (const auto& a : f->coeffs()) c = gcd(c, mpz_class(mpq_class(a * l).get_num()));
    mpq_class s = mpq_class(l) / mpq_class(c);
    if (sgn(den.lead()) < 0) s = -s;
    return RationalMapQ{num.scaled(s), den.scaled(s)};
}

mpq_class RationalMapQ::operator()(const mpq_class& u) const {
    mpq_class d = den(u);
    if (d == 0) throw std::domain_error("rational map: pole at " + u.get_str());
    mpq_class r = num(u) / d;
    r.canonicalize();
    return r;
}

std::string RationalMapQ::to_string(char var) const {
    std::string v(1, var);
    return "(" + num.to_string(v) + ")/(" + den.to_string(v) + ")";
}

FamilySpec FamilySpec::parse(const std::string& text) {
    FamilySpec s;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("family line " + std::to_string(lineno) + ": expected key = value");
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (k.empty()) throw ParseError("family line " + std::to_string(lineno) + ": empty key");
        if (s.kv_.count(k)) throw ParseError("family line " + std::to_string(lineno) + ": duplicate key '" + k + "'");
        s.kv_[k] = v;
    }
    auto it = s.kv_.find("id");
    if (it == s.kv_.end() || it->second.empty()) throw ParseError("family: missing id");
    s.id_ = it->second;
    try {
        if (s.kv_.count("n_min")) s.n_min_ = std::stol(s.kv_.at("n_min"));
        if (s.kv_.count("n_max")) s.n_max_ = std::stol(s.kv_.at("n_max"));
    } catch (const std::logic_error&) {
        throw ParseError("family " + s.id_ + ": bad n bounds");
    }
    return s;
}

FamilySpec FamilySpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open family file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::optional<std::string> FamilySpec::get(const std::string& key, long n) const {
    auto it = kv_.find(key + (n % 2 == 0 ? ".even" : ".odd"));
    if (it != kv_.end()) return it->second;
    it = kv_.find(key);
    if (it != kv_.end()) return it->second;
    return std::nullopt;
}

const std::vector<std::string>& builtin_family_ids() {
    static const std::vector<std::string> ids = {
        "intro_N5",   "odd_1mod8",  "odd_3mod8",  "odd_5mod8", "odd_7mod8", "even_0mod8", "even_2mod8",
        "even_4mod8", "even_6mod8", "case1_2ns", "case2_3ns", "case3_5ns", "case4_7ns"};
    return ids;
}

const FamilySpec& builtin_family(const std::string& id) {
    static const std::map<std::string, FamilySpec> specs = [] {
        std::map<std::string, FamilySpec> m;
        for (const auto& [name, text] : embedded_family_texts()) {
            auto s = FamilySpec::parse(text);
            m.emplace(s.id(), std::move(s));
        }
        return m;
    }();
    auto it = specs.find(id);
    if (it == specs.end()) throw std::out_of_range("unknown family '" + id + "'");
    return it->second;
}

FamilySpec resolve_family(const std::string& id_or_path) {
    const auto& ids = builtin_family_ids();
    if (std::find(ids.begin(), ids.end(), id_or_path) != ids.end()) return builtin_family(id_or_path);
    std::ifstream probe(id_or_path);
    if (probe) return FamilySpec::load(id_or_path);
    throw std::out_of_range("unknown family '" + id_or_path + "'");
}

// ---------------------------------------------------------------- instances

PolyQ FamilyInstance::discriminant() const { return quantities(a2, a4, a6).disc; }

FamilyInstance instantiate_family(const FamilySpec& spec, long n) {
    if (n < spec.n_min() || (spec.n_max() && n > *spec.n_max()))
        throw std::out_of_range("family " + spec.id() + ": n=" + std::to_string(n) + " out of range");
    FamilyInstance f;
    f.id = spec.id();
    f.n = n;
    auto req = [&](const std::string& k) {
        auto v = spec.get(k, n);
        if (!v) throw ParseError("family " + spec.id() + ": missing " + k);
        return *v;
    };
    auto opt = [&](const std::string& k) { return spec.get(k, n); };

    PolyQ a2 = parse_poly_expr(opt("a2").value_or("0"), 't');
    PolyQ a4 = parse_poly_expr(opt("a4").value_or("0"), 't');
    PolyQ a6 = parse_poly_expr(opt("a6").value_or("0"), 't');
    f.h = make_rational_map(parse_poly_expr(req("h_num"), 'u'), parse_poly_expr(req("h_den"), 'u'));
    if (f.h.num.degree() > 4 || f.h.den.degree() > 4)
        throw ParseError("family " + spec.id() + ": h must have numerator and denominator of degree at most 4");
    if (opt("g_num")) f.g = make_rational_map(parse_poly_expr(req("g_num"), 'u'), parse_poly_expr(req("g_den"), 'u'));

    if (auto root = opt("f_root")) {
        static const std::regex re(R"(^\s*(?:([hg])\s*\(\s*i\s*(?:([+-])\s*(\d+))?\s*\)|i\s*(?:([+-])\s*(\d+))?)\s*$)");
        std::smatch m;
        if (!std::regex_match(*root, m, re)) throw ParseError("family " + spec.id() + ": bad f_root '" + *root + "'");
        char src = m[1].matched ? m[1].str()[0] : 'i';
        long shift = 0;
        if (m[3].matched) shift = std::stol(m[3].str()) * (m[2].str() == "-" ? -1 : 1);
        if (m[5].matched) shift = std::stol(m[5].str()) * (m[4].str() == "-" ? -1 : 1);
        auto range = split(req("f_range"), '.');
        range.erase(std::remove(range.begin(), range.end(), std::string()), range.end());
        if (range.size() != 2) throw ParseError("family " + spec.id() + ": f_range must be lo..hi");
        long lo = LinearInN::parse(range[0]).at(n), hi = LinearInN::parse(range[1]).at(n);
        if (src == 'g' && !f.g) throw ParseError("family " + spec.id() + ": f_root uses g but g is not defined");
        for (long i = lo; i <= hi; ++i) {
            mpq_class u(i + shift);
            f.f_roots.push_back(src == 'i' ? u : (src == 'h' ? f.h(u) : (*f.g)(u)));
        }
    }
    PolyQ fp = PolyQ::one(kQ);
    for (const auto& r : f.f_roots) fp *= PolyQ::linear(kQ, r);
    f.a2 = a2 * fp;
    f.a4 = a4 * fp * fp;
    f.a6 = a6 * fp * fp * fp;

    if (auto ex = opt("exclude"))
        for (long v : parse_long_list(*ex)) f.excluded.push_back(static_cast<uint32_t>(v));

    ExpectedProfile& e = f.expect;
    if (auto v = opt("expect.N")) e.N = LinearInN::parse(*v).at(n);
    if (auto v = opt("expect.chi")) e.chi = LinearInN::parse(*v).at(n);
    if (auto v = opt("expect.B")) e.B = LinearInN::parse(*v).at(n);
    if (auto v = opt("expect.gamma")) e.gamma = mpz_class(trim(*v));
    if (auto v = opt("expect.L")) e.script_L = mpz_class(trim(*v));
    if (auto v = opt("expect.epsilon")) e.epsilon = std::stoi(*v);
    auto cond = trim(req("condition"));
    if (cond != "A" && cond != "B" && cond != "C") throw ParseError("family " + spec.id() + ": condition must be A, B or C");
    e.condition = cond[0];
    if (auto v = opt("kodaira"))
        for (const auto& item : split(*v, ';')) {
            auto kv = split(item, ':');
            if (kv.size() != 2) throw ParseError("family " + spec.id() + ": bad kodaira item '" + item + "'");
            claim_for(e.places, parse_place(kv[0])).symbols = parse_symbols(kv[1]);
        }
    if (auto v = opt("tamagawa"))
        for (const auto& item : split(*v, ';')) {
            auto kv = split(item, ':');
            if (kv.size() != 2) throw ParseError("family " + spec.id() + ": bad tamagawa item '" + item + "'");
            claim_for(e.places, parse_place(kv[0])).tamagawa = parse_int_set(kv[1]);
        }
    if (auto v = opt("twist_kodaira")) e.twist_symbols = parse_symbols(*v);
    if (auto v = opt("twist_tamagawa")) e.twist_tamagawa = parse_int_set(*v);
    if (auto v = opt("c_power_of_4")) e.c_power_of_4 = trim(*v) == "true";
    if (auto v = opt("equal_tamagawa"))
        for (const auto& s : split(*v, ',')) e.equal_tamagawa.push_back(parse_place(s));
    if (auto v = opt("waive"))
        for (const auto& s : split(*v, ',')) {
            if (s == "i0star")
                e.waive_i0star = true;
            else if (s == "six_b")
                e.waive_six_b = true;
            else
                throw ParseError("family " + spec.id() + ": unknown waiver '" + s + "'");
        }
    if (auto v = opt("ell_nonsquare")) e.ell_nonsquare = parse_long_list(*v);
    if (auto v = opt("ell_square")) e.ell_square = parse_long_list(*v);
    f.law = opt("law").value_or("");
    return f;
}

std::optional<std::string> exclusion_reason(const FamilyInstance& fam, uint32_t p) {
    if (p < 5 || !is_prime_u64(p)) return "not a prime >= 5";
    if (std::find(fam.excluded.begin(), fam.excluded.end(), p) != fam.excluded.end()) return "excluded by the family";
    PrimeField F(p);
    try {
        for (const auto* a : {&fam.a2, &fam.a4, &fam.a6})
            if (reduce_mod_p(*a, F).degree() != a->degree()) return "coefficient degree drops mod p";
        PolyFp hn = reduce_mod_p(fam.h.num, F), hd = reduce_mod_p(fam.h.den, F);
        if (hd.is_zero() || gcd(hn, hd).degree() > 0 || std::max(hn.degree(), hd.degree()) < 1)
            return "h degenerates mod p";
        std::set<uint32_t> roots;
        for (const auto& r : fam.f_roots)
            if (!roots.insert(F.from_rational(r)).second) return "f is not separable mod p";
    } catch (const std::exception&) {
        return "f or h is not defined mod p";
    }
    Quantities q = quantities(fam.a2, fam.a4, fam.a6);
    std::vector<PolyQ> polys = {q.disc};
    if (!q.c4.is_zero()) polys.push_back(q.disc * q.c4);
    if (!q.c6.is_zero()) polys.push_back(q.disc * q.c6);
    for (const auto* c : {&q.c4, &q.c6, &q.disc})
        if (!c->is_zero() && reduce_mod_p(*c, F).degree() != c->degree()) return "invariant degree drops mod p";
    for (const auto& P : polys)
        if (radical_degree(reduce_mod_p(P, F)) != radical_degree(P)) return "bad places collide mod p";
    return std::nullopt;
}

uint32_t evaluate_h(const FamilyInstance& fam, uint32_t p, uint32_t w) {
    PrimeField F(p);
    uint32_t d = reduce_mod_p(fam.h.den, F)(w);
    if (d == 0) throw std::domain_error("h has a pole at w");
    return F.div(reduce_mod_p(fam.h.num, F)(w), d);
}

std::vector<uint32_t> parameter_set(const FamilyInstance& fam, uint32_t p) {
    PrimeField F(p);
    PolyFp D = reduce_mod_p(fam.discriminant(), F);
    PolyFp hd = reduce_mod_p(fam.h.den, F);
    std::vector<uint32_t> out;
    for (uint32_t w = 0; w < p; ++w) {
        if (hd(w) == 0) continue;
        if (D(evaluate_h(fam, p, w)) == 0) continue;
        out.push_back(w);
    }
    return out;
}

WeierstrassCurve base_curve(const FamilyInstance& fam, uint32_t p) {
    PrimeField F(p);
    return WeierstrassCurve(reduce_mod_p(fam.a2, F), reduce_mod_p(fam.a4, F), reduce_mod_p(fam.a6, F));
}

TwistedCurve instantiate_at(const FamilyInstance& fam, uint32_t p, uint32_t m) {
    PrimeField F(p);
    return twist_by(base_curve(fam, p), PolyFp::linear(F, m));
}

TwistedCurve instantiate(const FamilyInstance& fam, uint32_t p, uint32_t w) {
    if (auto why = exclusion_reason(fam, p)) throw std::domain_error("p=" + std::to_string(p) + " excluded: " + *why);
    PrimeField F(p);
    if (reduce_mod_p(fam.h.den, F)(w % p) == 0) throw std::domain_error("w is a pole of h");
    uint32_t m = evaluate_h(fam, p, w % p);
    if (reduce_mod_p(fam.discriminant(), F)(m) == 0) throw std::domain_error("w is not in W(F_p): disc(h(w)) = 0");
    return instantiate_at(fam, p, m);
}

// ---------------------------------------------------------------- verification

bool CellReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool CriterionReport::pass() const { return failures() == 0 && !cells.empty(); }

int CriterionReport::failures() const {
    int f = 0;
    for (const auto& c : cells)
        for (const auto& k : c.checks) f += !k.pass;
    for (const auto& k : family_checks) f += !k.pass;
    return f;
}

namespace {

std::vector<uint32_t> default_ells() {
    std::vector<uint32_t> v;
    for (uint32_t l = 5; l < 1000; ++l)
        if (is_prime_u64(l)) v.push_back(l);
    return v;
}

int legendre_int(const mpz_class& a, uint32_t ell) { return legendre_mod(a, ell); }

void add(std::vector<CheckResult>& out, std::string name, bool pass, std::string detail = "") {
    out.push_back(CheckResult{std::move(name), pass, std::move(detail)});
}

template <class T>
std::string eq_detail(const T& got, const T& want) {
    std::ostringstream os;
    os << "computed " << got << ", expected " << want;
    return os.str();
}

CellReport run_cell(const FamilyInstance& fam, uint32_t p, uint32_t w, const std::vector<uint32_t>& ells) {
    CellReport cell;
    cell.p = p;
    cell.w = w;
    cell.m = evaluate_h(fam, p, w);
    const auto tw = instantiate_at(fam, p, cell.m);
    cell.inv = global_invariants(tw.curve);
    const auto& g = cell.inv;
    const auto& e = fam.expect;
    auto& out = cell.checks;
    PrimeField F(p);

    if (e.N) add(out, "N", g.N == *e.N, eq_detail<long>(g.N, *e.N));
    if (e.chi) add(out, "chi", g.chi == *e.chi, eq_detail<long>(g.chi, *e.chi));
    if (e.gamma) add(out, "gamma", g.gamma == *e.gamma, eq_detail(g.gamma.get_str(), e.gamma->get_str()));
    if (e.script_L) add(out, "L", g.script_L == *e.script_L, eq_detail(g.script_L.get_str(), e.script_L->get_str()));
    if (e.B) add(out, "B", g.B == *e.B, eq_detail<long>(g.B, *e.B));

    std::vector<Place> accounted;
    for (const auto& claim : e.places) {
        Place x = place_of(F, claim.at);
        accounted.push_back(x);
        const LocalReductionData* d = g.at(x);
        KodairaSymbol sym = d ? d->symbol : KodairaSymbol::In(0);
        int c = d ? d->tamagawa : 1;
        const std::string at = place_text(claim.at);
        if (!claim.symbols.empty()) {
            bool ok = std::find(claim.symbols.begin(), claim.symbols.end(), sym) != claim.symbols.end();
            add(out, "kodaira@" + at, ok, "computed " + sym.to_string() + ", expected " + symbols_text(claim.symbols));
        }
        if (!claim.tamagawa.empty()) {
            bool ok = std::find(claim.tamagawa.begin(), claim.tamagawa.end(), c) != claim.tamagawa.end();
            add(out, "tamagawa@" + at, ok, "computed " + std::to_string(c) + ", expected " + join_ints(claim.tamagawa));
        }
    }

    // twist points: m and the roots of f
    std::vector<uint32_t> troots = {cell.m};
    for (const auto& r : fam.f_roots) troots.push_back(F.from_rational(r));
    {
        bool sym_ok = true, c_ok = true;
        std::string bad_sym, bad_c;
        std::vector<int> seen;
        for (uint32_t r : troots) {
            Place x = Place::finite(PolyFp::linear(F, r));
            accounted.push_back(x);
            const LocalReductionData* d = g.at(x);
            KodairaSymbol sym = d ? d->symbol : KodairaSymbol::In(0);
            int c = d ? d->tamagawa : 1;
            seen.push_back(c);
            if (!e.twist_symbols.empty() &&
                std::find(e.twist_symbols.begin(), e.twist_symbols.end(), sym) == e.twist_symbols.end()) {
                sym_ok = false;
                bad_sym = "t=" + std::to_string(r) + ": " + sym.to_string();
            }
            if (!e.twist_tamagawa.empty() &&
                std::find(e.twist_tamagawa.begin(), e.twist_tamagawa.end(), c) == e.twist_tamagawa.end()) {
                c_ok = false;
                bad_c = "t=" + std::to_string(r) + ": c=" + std::to_string(c);
            }
        }
        if (!e.twist_symbols.empty())
            add(out, "kodaira@twist", sym_ok, sym_ok ? std::to_string(troots.size()) + " places " + symbols_text(e.twist_symbols) : bad_sym);
        if (!e.twist_tamagawa.empty())
            add(out, "tamagawa@twist", c_ok, c_ok ? "c in " + join_ints(e.twist_tamagawa) + ", seen " + join_ints(seen) : bad_c);
    }
    {
        std::string extra;
        for (const auto& d : g.bad)
            if (std::find(accounted.begin(), accounted.end(), d.place) == accounted.end())
                extra += (extra.empty() ? "" : ", ") + d.place.to_string() + ":" + d.symbol.to_string();
        add(out, "bad_places", extra.empty(), extra.empty() ? std::to_string(g.bad.size()) + " bad places, all claimed" : "unclaimed " + extra);
    }

    // hypotheses of the criterion
    int mult = 0, i0star = 0;
    for (const auto& d : g.bad) {
        if (d.place.is_infinity()) continue;
        if (d.symbol.is_multiplicative()) ++mult;
        if (d.symbol == KodairaSymbol::InStar(0)) ++i0star;
    }
    add(out, "hyp_multiplicative", mult > 0, std::to_string(mult) + " multiplicative places on A^1");
    if (e.waive_i0star)
        add(out, "hyp_i0star_waived", i0star == 1, std::to_string(i0star) + " I0* places on A^1 (waiver expects exactly 1)");
    else
        add(out, "hyp_i0star", i0star >= 2, std::to_string(i0star) + " I0* places on A^1");
    if (e.waive_six_b)
        add(out, "hyp_6B_waived", 6 * g.B > g.N, "6B=" + std::to_string(6 * g.B) + ", N=" + std::to_string(g.N) + " (waiver expects 6B > N)");
    else
        add(out, "hyp_6B", 6 * g.B <= g.N, "6B=" + std::to_string(6 * g.B) + ", N=" + std::to_string(g.N));

    // condition A/B/C
    {
        std::string name = std::string("condition_") + e.condition;
        std::string why;
        bool ok = true;
        const bool n_even = g.N % 2 == 0, chi_odd = g.chi % 2 != 0;
        if (e.condition == 'A') {
            if (n_even) ok = false, why += "N even; ";
            if (!chi_odd) ok = false, why += "chi even; ";
        } else if (e.condition == 'B') {
            if (!n_even) ok = false, why += "N odd; ";
            if (g.epsilon != 1) ok = false, why += "epsilon=-1; ";
        } else {
            if (!n_even) ok = false, why += "N odd; ";
            if (!chi_odd) ok = false, why += "chi even; ";
            if (g.epsilon != 1) ok = false, why += "epsilon=-1; ";
        }
        int used = 0;
        std::string failed;
        for (uint32_t ell : ells) {
            if (ell < 5 || !is_prime_u64(ell) || ell == p || g.script_L % ell == 0) continue;
            bool hyp = true;
            for (long a : e.ell_nonsquare) hyp = hyp && legendre_int(a, ell) == -1;
            for (long a : e.ell_square) hyp = hyp && legendre_int(a, ell) == 1;
            if (!hyp) continue;
            ++used;
            const int lg = legendre_int(g.gamma, ell);
            bool cell_ok = true;
            if (e.condition == 'A') cell_ok = lg == 1 && legendre_int(2 * g.c_E, ell) == 1;
            if (e.condition == 'B') cell_ok = lg == -1;
            if (e.condition == 'C') cell_ok = lg == 1 && legendre_int(g.c_E, ell) == 1;
            if (!cell_ok) failed += (failed.empty() ? "" : ",") + std::to_string(ell);
        }
        if (!failed.empty()) ok = false, why += "square classes fail at ell=" + failed + "; ";
        if (used == 0) ok = false, why += "no admissible ell; ";
        if (!ok) why.resize(why.size() - 2);
        add(out, name, ok, ok ? std::to_string(used) + " admissible ell" : why);
    }
    if (e.c_power_of_4) add(out, "c_power_of_4", is_power_of_4(g.c_E), "c_E=" + g.c_E.get_str());
    if (!e.equal_tamagawa.empty()) {
        std::vector<int> cs;
        for (const auto& at : e.equal_tamagawa) {
            const auto* d = g.at(place_of(F, at));
            cs.push_back(d ? d->tamagawa : 1);
        }
        bool ok = std::adjacent_find(cs.begin(), cs.end(), std::not_equal_to<>()) == cs.end();
        add(out, "equal_tamagawa", ok, "values " + join_ints(cs));
    }

    // root number and split laws
    if (e.epsilon) add(out, "epsilon_claim", g.epsilon == *e.epsilon, eq_detail(g.epsilon, *e.epsilon));
    if (!fam.law.empty()) {
        LawEvaluation ev = evaluate_law(fam, p, cell.m);
        if (!ev.known) {
            add(out, "law", false, "unknown law '" + fam.law + "'");
        } else {
            if (ev.product)
                add(out, "epsilon_product", *ev.product == g.epsilon, eq_detail(g.epsilon, *ev.product));
            if (ev.telescoped)
                add(out, "epsilon_telescoped", *ev.telescoped == g.epsilon, eq_detail(g.epsilon, *ev.telescoped));
            for (const auto& s : ev.splits) {
                const auto* d = g.at(place_of(F, s.at));
                bool split = d && d->type == ReductionType::split_multiplicative;
                bool ok = s.witness != 0 && split == (s.witness == 1);
                add(out, "split@" + place_text(s.at), ok,
                    std::string(split ? "split" : "not split") + ", witness " + s.text + " has symbol " + std::to_string(s.witness));
            }
            if (ev.two_c_square) {
                mpz_class two_c = 2 * g.c_E;
                bool ok = *ev.two_c_square == 1 ? (two_c == 16 || two_c == 64) : (*ev.two_c_square == -1 && two_c == 32);
                add(out, "two_c", ok, "2c=" + two_c.get_str() + ", (-3(m^2-1)|p)=" + std::to_string(*ev.two_c_square));
            }
            if (ev.minus_three_m) {
                bool ok = (*ev.minus_three_m == 1) == (-g.epsilon == 1) && *ev.minus_three_m != 0;
                add(out, "sign_law", ok, "epsilon=" + std::to_string(g.epsilon) + ", (-3m|p)=" + std::to_string(*ev.minus_three_m));
            }
        }
    }
    return cell;
}

}  // namespace

CriterionReport verify_profile(const FamilyInstance& fam, const std::vector<uint32_t>& primes, const VerifyOptions& opt) {
    CriterionReport rep;
    rep.id = fam.id;
    rep.n = fam.n;
    rep.primes = primes;
    const auto ells = opt.ells.empty() ? default_ells() : opt.ells;
    std::vector<std::pair<uint32_t, uint32_t>> grid;
    for (uint32_t p : primes) {
        if (auto why = exclusion_reason(fam, p)) {
            rep.excluded.emplace_back(p, *why);
            continue;
        }
        for (uint32_t w : parameter_set(fam, p)) grid.emplace_back(p, w);
    }
    rep.cells.resize(grid.size());
    parallel_tasks(grid.size(), opt.jobs, [&](size_t i) { rep.cells[i] = run_cell(fam, grid[i].first, grid[i].second, ells); });

    // Kodaira multiset independent of m (per prime and across primes)
    std::map<uint32_t, std::set<std::string>> per_p;
    std::set<std::string> all;
    for (const auto& c : rep.cells) {
        auto k = to_string(c.inv.kod);
        per_p[c.p].insert(k);
        all.insert(k);
    }
    for (const auto& [p, ks] : per_p) {
        std::string d;
        for (const auto& k : ks) d += (d.empty() ? "" : " / ") + k;
        add(rep.family_checks, "kodaira_independent@p=" + std::to_string(p), ks.size() == 1, d);
    }
    if (!all.empty()) {
        std::string d;
        for (const auto& k : all) d += (d.empty() ? "" : " / ") + k;
        add(rep.family_checks, "kodaira_independent_all_p", all.size() == 1, d);
    }
    if (rep.cells.empty()) add(rep.family_checks, "grid_nonempty", false, "no usable (p, w)");
    return rep;
}

bool epsilon_law_check(const FamilyInstance& fam, uint32_t p, uint32_t w) {
    const auto tw = instantiate(fam, p, w);
    const auto g = global_invariants(tw.curve);
    const uint32_t m = evaluate_h(fam, p, w);
    LawEvaluation ev = evaluate_law(fam, p, m);
    bool ok = true;
    if (fam.expect.epsilon) ok = ok && g.epsilon == *fam.expect.epsilon;
    if (!ev.known) return ok;
    if (ev.product) ok = ok && *ev.product == g.epsilon;
    if (ev.telescoped) ok = ok && *ev.telescoped == g.epsilon;
    if (ev.minus_three_m) ok = ok && *ev.minus_three_m != 0 && (*ev.minus_three_m == 1) == (g.epsilon == -1);
    return ok;
}

std::optional<std::pair<uint32_t, uint32_t>> epsilon_negative_control(const FamilyInstance& fam,
                                                                      const std::vector<uint32_t>& primes) {
    if (!fam.expect.epsilon) return std::nullopt;
    for (uint32_t p : primes) {
        if (exclusion_reason(fam, p)) continue;
        PrimeField F(p);
        PolyFp D = reduce_mod_p(fam.discriminant(), F);
        for (uint32_t m = 0; m < p; ++m) {
            if (D(m) == 0) continue;
            const auto g = global_invariants(instantiate_at(fam, p, m).curve);
            if (g.epsilon != *fam.expect.epsilon) return std::make_pair(p, m);
        }
    }
    return std::nullopt;
}

nlohmann::json to_json(const CriterionReport& r) {
    nlohmann::json j;
    j["family"] = r.id;
    j["n"] = r.n;
    j["pass"] = r.pass();
    j["failures"] = r.failures();
    j["primes"] = r.primes;
    j["excluded"] = nlohmann::json::array();
    for (const auto& [p, why] : r.excluded) j["excluded"].push_back({{"p", p}, {"reason", why}});
    j["cells"] = nlohmann::json::array();
    for (const auto& c : r.cells) {
        nlohmann::json cj;
        cj["p"] = c.p;
        cj["w"] = c.w;
        cj["m"] = c.m;
        cj["invariants"] = to_json(c.inv);
        cj["checks"] = nlohmann::json::array();
        for (const auto& k : c.checks) cj["checks"].push_back({{"name", k.name}, {"pass", k.pass}, {"detail", k.detail}});
        cj["pass"] = c.pass();
        j["cells"].push_back(cj);
    }
    j["family_checks"] = nlohmann::json::array();
    for (const auto& k : r.family_checks) j["family_checks"].push_back({{"name", k.name}, {"pass", k.pass}, {"detail", k.detail}});
    j["failures"] = r.failures();
    j["verdict"] = r.pass() ? "pass" : "fail";
    return j;
}

std::string summary(const CriterionReport& r) {
    std::ostringstream os;
    os << "family " << r.id << " n=" << r.n << ": " << r.cells.size() << " cells over p in {";
    for (size_t i = 0; i < r.primes.size(); ++i) os << (i ? "," : "") << r.primes[i];
    os << "}\n";
    for (const auto& [p, why] : r.excluded) os << "  excluded p=" << p << ": " << why << "\n";
    // aggregate per check name, keeping first-seen order
    std::vector<std::string> order;
    std::map<std::string, std::pair<int, int>> tally;
    std::map<std::string, std::string> first_fail;
    for (const auto& c : r.cells)
        for (const auto& k : c.checks) {
            if (!tally.count(k.name)) order.push_back(k.name);
            auto& t = tally[k.name];
            ++t.second;
            if (k.pass) {
                ++t.first;
            } else if (!first_fail.count(k.name)) {
                first_fail[k.name] = "p=" + std::to_string(c.p) + " w=" + std::to_string(c.w) + ": " + k.detail;
            }
        }
    for (const auto& name : order) {
        const auto& [ok, total] = tally[name];
        os << "  " << (ok == total ? "pass" : "FAIL") << "  " << name << " " << ok << "/" << total;
        if (first_fail.count(name)) os << "  first failure " << first_fail[name];
        os << "\n";
    }
    for (const auto& k : r.family_checks) os << "  " << (k.pass ? "pass" : "FAIL") << "  " << k.name << "  " << k.detail << "\n";
    os << "verdict: " << (r.pass() ? "pass" : "fail") << " (" << r.failures() << " failed checks)\n";
    return os.str();
}

}  // namespace ellorth
