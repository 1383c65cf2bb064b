#include "fflat/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ffl {

Poly Poly::monomial(const FieldPtr& F, uint32_t a, int deg) {
    if (a % F->q() == 0 || deg < 0) return Poly(F);
    std::vector<uint32_t> c(deg + 1, 0);
    c[deg] = a;
    return Poly(F, std::move(c));
}

Poly Poly::operator+(const Poly& o) const {
    const auto& F = F_;
    std::vector<uint32_t> out(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = F->add(coeff((int)i), o.coeff((int)i));
    return Poly(F, std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
    const auto& F = F_ ? F_ : o.F_;
    std::vector<uint32_t> out(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = F->sub(coeff((int)i), o.coeff((int)i));
    return Poly(F, std::move(out));
}

Poly Poly::operator-() const {
    std::vector<uint32_t> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = F_->neg(c_[i]);
    return Poly(F_, std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(F_ ? F_ : o.F_);
    std::vector<uint32_t> out(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] = F_->add(out[i + j], F_->mul(c_[i], o.c_[j]));
    }
    return Poly(F_, std::move(out));
}

Poly Poly::operator*(uint32_t scalar) const {
    std::vector<uint32_t> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = F_->mul(c_[i], scalar);
    return Poly(F_, std::move(out));
}

bool Poly::operator<(const Poly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

Poly Poly::monic() const {
    if (is_zero()) throw DivisionByZero("monic of zero polynomial");
    if (lc() == 1) return *this;
    return *this * F_->inv(lc());
}

Poly Poly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<uint32_t> out(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), out.begin() + k);
    return Poly(F_, std::move(out));
}

uint32_t Poly::eval(uint32_t x) const {
    uint32_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = F_->add(F_->mul(acc, x), c_[i]);
    return acc;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c_[i];
        } else {
            if (c_[i] != 1) os << c_[i] << "*";
            os << "T";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

std::string Poly::to_list_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero("poly_divmod by zero");
    const auto& F = b.field();
    if (a.deg() < b.deg()) return {Poly::zero(F), a};
    std::vector<uint32_t> rem(a.coeffs());
    std::vector<uint32_t> quo(a.deg() - b.deg() + 1, 0);
    uint32_t lci = F->inv(b.lc());
    for (int i = a.deg(); i >= b.deg(); --i) {
        uint32_t c = F->mul(rem[i], lci);
        if (!c) continue;
        quo[i - b.deg()] = c;
        for (int j = 0; j <= b.deg(); ++j)
            rem[i - b.deg() + j] = F->sub(rem[i - b.deg() + j], F->mul(c, b.coeff(j)));
    }
    return {Poly(F, std::move(quo)), Poly(F, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_div_exact(const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw DivisionByZero("inexact polynomial division");
    return q;
}

bool poly_divides(const Poly& d, const Poly& a) {
    if (d.is_zero()) return a.is_zero();
    return (a % d).is_zero();
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = b;
        b = r;
    }
    return a.is_zero() ? a : a.monic();
}

Xgcd poly_xgcd(const Poly& a, const Poly& b) {
    const auto& F = a.field() ? a.field() : b.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(F), s1 = Poly::zero(F);
    Poly t0 = Poly::zero(F), t1 = Poly::one(F);
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = r1; r1 = r;
        Poly s = s0 - q * s1; s0 = s1; s1 = s;
        Poly t = t0 - q * t1; t0 = t1; t1 = t;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    uint32_t u = F->inv(r0.lc());
    return {r0 * u, s0 * u, t0 * u};
}

Poly poly_mod(const Poly& a, const Poly& F) { return a % F; }

Poly mod_inverse(const Poly& x, const Poly& F) {
    auto e = poly_xgcd(x % F, F);
    if (e.g.deg() != 0) throw NotInvertible(x.to_string() + " mod " + F.to_string());
    return e.u % F;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& F) { return (a * b) % F; }

Poly poly_powmod(const Poly& a, uint64_t e, const Poly& F) {
    Poly acc = Poly::one(a.field()) % F;
    Poly base = a % F;
    while (e) {
        if (e & 1) acc = poly_mulmod(acc, base, F);
        base = poly_mulmod(base, base, F);
        e >>= 1;
    }
    return acc;
}

Poly poly_pow(const Poly& a, uint32_t e) {
    Poly acc = Poly::one(a.field());
    Poly base = a;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

LogAbs deg_f(const Poly& x, const Poly& F) {
    if (F.is_zero()) throw DivisionByZero("deg_F with zero modulus");
    return (x % F).log_abs();
}

bool is_irreducible(const Poly& f) {
    int n = f.deg();
    if (n < 1) return false;
    const auto& F = f.field();
    uint64_t q = F->q();
    Poly fm = f.monic();
    Poly t = Poly::t(F);
    // Rabin: T^{q^n} = T mod f, and gcd(T^{q^{n/l}} - T, f) = 1 for prime l | n.
    auto t_qk = [&](int k) {
        Poly cur = t % fm;
        for (int i = 0; i < k; ++i) cur = poly_powmod(cur, q, fm);
        return cur;
    };
    if (t_qk(n) != t % fm) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l) continue;
        bool prime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) { prime = false; break; }
        if (!prime) continue;
        Poly g = poly_gcd(t_qk(n / l) - t, fm);
        if (g.deg() != 0) return false;
    }
    return true;
}

Poly random_poly(const FieldPtr& F, int m, Rng& rng) {
    if (m <= 0) return Poly::zero(F);
    std::vector<uint32_t> c(m);
    for (int i = 0; i < m; ++i) c[i] = (uint32_t)rng.below(F->q());
    return Poly(F, std::move(c));
}

Poly random_nonzero_poly(const FieldPtr& F, int m, Rng& rng) {
    for (;;) {
        Poly p = random_poly(F, m, rng);
        if (!p.is_zero()) return p;
    }
}

Poly random_irreducible(const FieldPtr& F, int r, uint64_t seed) {
    if (r < 1) throw ConfigError("random_irreducible: degree must be >= 1");
    Rng rng(seed);
    for (int tries = 0; tries < 1000000; ++tries) {
        std::vector<uint32_t> c(r + 1, 0);
        c[r] = 1;
        for (int i = 0; i < r; ++i) c[i] = (uint32_t)rng.below(F->q());
        Poly cand(F, std::move(c));
        if (is_irreducible(cand)) return cand;
    }
    throw ConfigError("random_irreducible: sampling failed");
}

Poly Factorization::product(const FieldPtr& F) const {
    Poly acc = Poly::constant(F, unit);
    for (const auto& [p, m] : factors)
        for (int i = 0; i < m; ++i) acc = acc * p;
    return acc;
}

Factorization factorize(const Poly& x, uint64_t cap) {
    if (x.is_zero()) throw DivisionByZero("factorize(0)");
    const auto& F = x.field();
    Factorization out;
    out.unit = x.lc();
    Poly rem = x.monic();
    uint64_t ops = 0;
    // trial division by monic polynomials in increasing degree; any divisor
    // found at minimal degree is irreducible since smaller factors are gone
    for (int d = 1; 2 * d <= rem.deg();) {
        uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= F->q();
        bool found = false;
        for (uint64_t code = 0; code < count; ++code) {
            if (++ops > cap) throw CapExceeded("factorize trial division");
            std::vector<uint32_t> c(d + 1, 0);
            uint64_t v = code;
            for (int i = 0; i < d; ++i) { c[i] = (uint32_t)(v % F->q()); v /= F->q(); }
            c[d] = 1;
            Poly cand(F, std::move(c));
            if (poly_divides(cand, rem)) {
                int mult = 0;
                while (poly_divides(cand, rem)) {
                    rem = poly_div_exact(rem, cand);
                    ++mult;
                }
                out.factors.push_back({cand, mult});
                found = true;
                break;
            }
        }
        if (!found) ++d;
        if (rem.deg() == 0) break;
    }
    if (rem.deg() >= 1) out.factors.push_back({rem, 1});
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

uint64_t divisor_count(const Poly& x) {
    auto f = factorize(x);
    uint64_t n = 1;
    for (const auto& [p, m] : f.factors) n *= (uint64_t)(m + 1);
    return n;
}

std::vector<Poly> divisors(const Poly& x, uint64_t cap) {
    auto f = factorize(x, cap);
    const auto& F = x.field();
    std::vector<Poly> out{Poly::one(F)};
    for (const auto& [p, m] : f.factors) {
        std::vector<Poly> next;
        next.reserve(out.size() * (m + 1));
        Poly pk = Poly::one(F);
        for (int k = 0; k <= m; ++k) {
            for (const auto& d : out) next.push_back(d * pk);
            if (k < m) pk = pk * p;
        }
        if (next.size() > cap) throw CapExceeded("divisors");
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Poly> enumerate_interval(const FieldPtr& F, int m, const Poly& center, uint64_t cap) {
    if (m < 0) throw ConfigError("enumerate_interval: m < 0");
    uint64_t total = 1;
    for (int i = 0; i < m; ++i) {
        total *= F->q();
        if (total > cap) throw CapExceeded("enumerate_interval");
    }
    std::vector<Poly> out;
    out.reserve(total);
    for (uint64_t code = 0; code < total; ++code) {
        std::vector<uint32_t> c(m, 0);
        uint64_t v = code;
        for (int i = 0; i < m; ++i) { c[i] = (uint32_t)(v % F->q()); v /= F->q(); }
        out.push_back(center + Poly(F, std::move(c)));
    }
    return out;
}

std::vector<std::vector<Poly>> enumerate_ball(int m, const std::vector<Poly>& center, uint64_t cap) {
    if (center.empty()) throw ConfigError("enumerate_ball: empty center");
    const auto& F = center[0].field();
    size_t d = center.size();
    uint64_t per = 1;
    for (int i = 0; i < m; ++i) {
        per *= F->q();
        if (per > cap) throw CapExceeded("enumerate_ball");
    }
    uint64_t total = 1;
    for (size_t i = 0; i < d; ++i) {
        if (total > cap / per + 1) throw CapExceeded("enumerate_ball");
        total *= per;
        if (total > cap) throw CapExceeded("enumerate_ball");
    }
    std::vector<Poly> coords = enumerate_interval(F, m, Poly::zero(F), cap);
    std::vector<std::vector<Poly>> out;
    out.reserve(total);
    std::vector<size_t> idx(d, 0);
    for (;;) {
        std::vector<Poly> v(d);
        for (size_t i = 0; i < d; ++i) v[i] = center[i] + coords[idx[i]];
        out.push_back(std::move(v));
        size_t k = 0;
        while (k < d && ++idx[k] == coords.size()) idx[k++] = 0;
        if (k == d) break;
    }
    return out;
}

// ---- parsing ----

namespace {

struct Tok {
    const std::string& s;
    size_t i = 0;
    void skip() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
    bool eof() { skip(); return i >= s.size(); }
    char peek() { skip(); return i < s.size() ? s[i] : '\0'; }
    char get() { skip(); return s[i++]; }
    uint64_t integer() {
        skip();
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) throw ParseError("expected integer in '" + s + "'");
        uint64_t v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
        return v;
    }
};

} // namespace

Poly parse_poly(const FieldPtr& F, const std::string& text) {
    Tok t{text};
    if (t.eof()) throw ParseError("empty polynomial");
    if (t.peek() == '[') {
        t.get();
        std::vector<uint32_t> c;
        if (t.peek() == ']') { t.get(); return Poly(F, c); }
        for (;;) {
            bool neg = false;
            if (t.peek() == '-') { t.get(); neg = true; }
            uint64_t v = t.integer();
            uint32_t e = (uint32_t)(v % F->q());
            c.push_back(neg ? F->neg(e) : e);
            char ch = t.get();
            if (ch == ']') break;
            if (ch != ',') throw ParseError("bad list polynomial: " + text);
        }
        return Poly(F, c);
    }
    // term form: [+-] coeff [* T [^k]] ...
    Poly acc = Poly::zero(F);
    bool neg = false;
    if (t.peek() == '+' || t.peek() == '-') neg = (t.get() == '-');
    for (;;) {
        uint32_t coeff = 1;
        int deg = 0;
        bool have_coeff = false;
        if (std::isdigit((unsigned char)t.peek())) {
            coeff = (uint32_t)(t.integer() % F->q());
            have_coeff = true;
        }
        if (t.peek() == '*') t.get();
        if (t.peek() == 'T' || t.peek() == 't') {
            t.get();
            deg = 1;
            if (t.peek() == '^') {
                t.get();
                deg = (int)t.integer();
            }
        } else if (!have_coeff) {
            throw ParseError("bad polynomial term in '" + text + "'");
        }
        Poly term = Poly::monomial(F, coeff, deg);
        acc = neg ? acc - term : acc + term;
        if (t.eof()) break;
        char op = t.get();
        if (op == '+') neg = false;
        else if (op == '-') neg = true;
        else throw ParseError("unexpected '" + std::string(1, op) + "' in '" + text + "'");
    }
    return acc;
}

} // namespace ffl
