#include "fflat/ratfun.hpp"

#include <sstream>

namespace ffl {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("RatFun with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::one(num_.field());
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.deg() > 0) {
        num_ = poly_div_exact(num_, g);
        den_ = poly_div_exact(den_, g);
    }
    uint32_t u = den_.lc();
    if (u != 1) {
        uint32_t ui = num_.field()->inv(u);
        num_ = num_ * ui;
        den_ = den_ * ui;
    }
}

RatFun RatFun::operator+(const RatFun& o) const {
    return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
    return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_); }

RatFun RatFun::operator*(const RatFun& o) const {
    return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
    if (o.is_zero()) throw DivisionByZero("RatFun division by zero");
    return RatFun(num_ * o.den_, den_ * o.num_);
}

RatFun RatFun::inverse() const {
    if (is_zero()) throw DivisionByZero("RatFun inverse of zero");
    return RatFun(den_, num_);
}

std::string RatFun::to_string() const {
    if (is_poly()) return num_.to_string();
    std::ostringstream os;
    os << "(" << num_.to_string() << ")/(" << den_.to_string() << ")";
    return os.str();
}

RatFun parse_ratfun(const FieldPtr& F, const std::string& text) {
    // split at a top-level '/': parenthesised or bare
    int depth = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == '/' && depth == 0) {
            auto strip = [](std::string s) {
                while (!s.empty() && (s.front() == ' ' || s.front() == '(')) s.erase(s.begin());
                while (!s.empty() && (s.back() == ' ' || s.back() == ')')) s.pop_back();
                return s;
            };
            return RatFun(parse_poly(F, strip(text.substr(0, i))),
                          parse_poly(F, strip(text.substr(i + 1))));
        }
    }
    return RatFun(parse_poly(F, text));
}

LaurentApprox laurent_expand(const RatFun& x, int precision) {
    if (precision < 0) throw ConfigError("laurent_expand: negative precision");
    const auto& F = x.field();
    LaurentApprox out;
    out.precision = precision;
    if (x.is_zero()) {
        out.top = 0;
        out.coeffs.assign((size_t)precision + 1, 0);
        return out;
    }
    // num*T^N = Q*den + R with deg R < deg den gives the coefficients of
    // num/den at indices >= -N as the coefficients of Q shifted by N.
    Poly shifted = x.num().shifted(precision);
    auto [q, r] = poly_divmod(shifted, x.den());
    (void)r;
    int top = x.num().deg() - x.den().deg();
    out.top = top;
    if (top + precision >= 0) {
        out.coeffs.resize((size_t)(top + precision) + 1, 0);
        for (int i = top; i >= -precision; --i)
            out.coeffs[(size_t)(top - i)] = q.coeff(i + precision);
    }
    (void)F;
    return out;
}

LaurentApprox laurent_expand(const RatFun& x) {
    return laurent_expand(x, x.den().deg() + 8);
}

uint32_t residue_coeff(const RatFun& x) {
    return laurent_expand(x, 1).coeff(-1);
}

std::string CharValue::to_string() const {
    std::ostringstream os;
    os << "zeta_" << p << "^" << t;
    return os.str();
}

CharValue char_e(const RatFun& x) {
    const auto& F = x.field();
    return CharValue{F->trace(residue_coeff(x)), F->p()};
}

int haar_character_integral(const RatFun& x, uint64_t cap) {
    const auto& F = x.field();
    // [x*alpha]_{-1} depends only on the coefficients x_0..x_n of the
    // polynomial part of x (n = exponent of |x|) and on the n+1 leading
    // coefficients a_{-1}..a_{-(n+1)} of alpha in the unit ball.
    LogAbs ax = x.log_abs();
    if (ax.is_zero() || ax.e < 0) return 1; // single term, t = 0
    int n = (int)ax.e;
    Poly polypart = poly_divmod(x.num(), x.den()).first;
    uint64_t total = 1;
    for (int i = 0; i <= n; ++i) {
        total *= F->q();
        if (total > cap) throw CapExceeded("haar_character_integral");
    }
    std::vector<uint64_t> hist(F->p(), 0);
    std::vector<uint32_t> a((size_t)n + 1, 0); // a[j] = coefficient a_{-1-j}
    for (uint64_t code = 0;; ++code) {
        uint32_t dot = 0;
        for (int j = 0; j <= n; ++j)
            dot = F->add(dot, F->mul(polypart.coeff(j), a[(size_t)j]));
        hist[F->trace(dot)]++;
        // odometer
        size_t k = 0;
        while (k < a.size() && ++a[k] == F->q()) a[k++] = 0;
        if (k == a.size()) break;
    }
    // sum of exp(2 pi i t / p) over the histogram: zero iff uniform,
    // equal to the total iff concentrated at t = 0
    bool uniform = true;
    for (uint32_t t = 1; t < F->p(); ++t)
        if (hist[t] != hist[0]) { uniform = false; break; }
    if (F->p() > 1 && uniform && hist[0] * F->p() == total) return 0;
    if (hist[0] == total) return 1;
    throw Error("haar_character_integral: character sum neither 0 nor 1");
}

} // namespace ffl
