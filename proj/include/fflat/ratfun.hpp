#ifndef FFLAT_RATFUN_HPP
#define FFLAT_RATFUN_HPP

#include <string>
#include <vector>

#include "fflat/poly.hpp"

namespace ffl {

// Reduced fraction num/den over F_q[T]; den monic and nonzero, zero is 0/1.
class RatFun {
public:
    RatFun() = default;
    explicit RatFun(Poly num) : num_(std::move(num)) {
        den_ = Poly::one(num_.field());
    }
    RatFun(Poly num, Poly den);

    static RatFun zero(const FieldPtr& F) { return RatFun(Poly::zero(F)); }
    static RatFun one(const FieldPtr& F) { return RatFun(Poly::one(F)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.deg() == 0; }

    // |num/den| = q^{deg num - deg den}
    LogAbs log_abs() const {
        if (num_.is_zero()) return LogAbs::neg_inf();
        return LogAbs::of(num_.deg() - den_.deg());
    }

    RatFun operator+(const RatFun& o) const;
    RatFun operator-(const RatFun& o) const;
    RatFun operator-() const;
    RatFun operator*(const RatFun& o) const;
    RatFun operator/(const RatFun& o) const; // throws DivisionByZero
    RatFun inverse() const;
    bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    Poly num_, den_;
};

RatFun parse_ratfun(const FieldPtr& F, const std::string& text); // "num" or "num/den"

// Truncated Laurent expansion sum a_i T^i, i from `top` down to -precision.
struct LaurentApprox {
    int top = 0;          // highest index carried (a_top may be 0 for x = 0)
    int precision = 0;    // coefficients kept down to index -precision
    std::vector<uint32_t> coeffs; // coeffs[k] = a_{top-k}
    uint32_t coeff(int i) const {
        if (i > top || i < -precision) return 0;
        return coeffs[(size_t)(top - i)];
    }
};

LaurentApprox laurent_expand(const RatFun& x, int precision);
// default precision: deg(den) + 8, enough for every residue computation here
LaurentApprox laurent_expand(const RatFun& x);

// [x]_{-1}: coefficient of T^{-1} in the expansion
uint32_t residue_coeff(const RatFun& x);

// e(x) = exp(2 pi i Tr([x]_{-1}) / p), carried exactly as the exponent t mod p.
struct CharValue {
    uint32_t t = 0;
    uint32_t p = 0;
    std::string to_string() const; // prints as a root of unity
};
CharValue char_e(const RatFun& x);

// Integral of e(x*alpha) over the unit ball, evaluated exactly as the finite
// average over the coefficients of alpha that [x*alpha]_{-1} depends on.
// Returns 1 if |x| < 1 and 0 if |x| >= 1.
int haar_character_integral(const RatFun& x, uint64_t cap = 100000000ull);

} // namespace ffl

#endif
