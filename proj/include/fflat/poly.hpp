#ifndef FFLAT_POLY_HPP
#define FFLAT_POLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fflat/field.hpp"
#include "fflat/logabs.hpp"
#include "fflat/rng.hpp"

namespace ffl {

// Dense univariate polynomial over F_q.  Coefficients low..high, trimmed;
// the zero polynomial has an empty coefficient vector.
class Poly {
public:
    Poly() = default; // invalid until assigned; only for container use
    explicit Poly(FieldPtr F) : F_(std::move(F)) {}
    Poly(FieldPtr F, std::vector<uint32_t> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= (uint32_t)F_->q();
        trim();
    }

    static Poly zero(const FieldPtr& F) { return Poly(F); }
    static Poly one(const FieldPtr& F) { return Poly(F, {1}); }
    static Poly constant(const FieldPtr& F, uint32_t a) { return Poly(F, {a}); }
    static Poly t(const FieldPtr& F) { return Poly(F, {0, 1}); }
    static Poly monomial(const FieldPtr& F, uint32_t a, int deg);

    const FieldPtr& field() const { return F_; }
    const std::vector<uint32_t>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    // deg of zero is the -inf sentinel via log_abs(); this accessor returns -1
    int deg() const { return (int)c_.size() - 1; }
    LogAbs log_abs() const { return c_.empty() ? LogAbs::neg_inf() : LogAbs::of(deg()); }

    uint32_t coeff(int i) const { return (i >= 0 && i < (int)c_.size()) ? c_[i] : 0; }
    uint32_t lc() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return lc() == 1; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(uint32_t scalar) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }
    // lexicographic by (deg, coeffs high..low); total order for map keys
    bool operator<(const Poly& o) const;

    Poly monic() const; // throws DivisionByZero on zero
    Poly shifted(int k) const; // * T^k, k >= 0

    uint32_t eval(uint32_t x) const; // Horner over F_q

    std::string to_string() const;   // human form, e.g. "2*T^2+1"
    std::string to_list_string() const; // "[c0,c1,...]"

    friend Poly operator*(uint32_t s, const Poly& p) { return p * s; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    FieldPtr F_;
    std::vector<uint32_t> c_;
};

// a = q*b + r with deg r < deg b;  throws DivisionByZero when b = 0
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
// exact division; throws DivisionByZero if not divisible
Poly poly_div_exact(const Poly& a, const Poly& b);
bool poly_divides(const Poly& d, const Poly& a);

Poly poly_gcd(Poly a, Poly b); // monic gcd, gcd(0,0) = 0
// g monic, g = u*a + v*b
struct Xgcd { Poly g, u, v; };
Xgcd poly_xgcd(const Poly& a, const Poly& b);

// x^{-1} mod F;  throws NotInvertible when gcd(x, F) != 1
Poly mod_inverse(const Poly& x, const Poly& F);
Poly poly_mod(const Poly& a, const Poly& F);
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& F);
Poly poly_powmod(const Poly& a, uint64_t e, const Poly& F);
Poly poly_pow(const Poly& a, uint32_t e);

// degree of the canonical representative of x mod F (deg < deg F)
LogAbs deg_f(const Poly& x, const Poly& F);

bool is_irreducible(const Poly& f);
Poly random_irreducible(const FieldPtr& F, int r, uint64_t seed);

// Multiset of monic irreducible factors with multiplicities, plus the unit.
struct Factorization {
    uint32_t unit;
    std::vector<std::pair<Poly, int>> factors; // monic irreducible, multiplicity
    Poly product(const FieldPtr& F) const;
};
Factorization factorize(const Poly& x, uint64_t cap = 100000000ull);

std::vector<Poly> divisors(const Poly& x, uint64_t cap = 100000000ull); // monic divisors
uint64_t divisor_count(const Poly& x);

// All of I_m(s) = { x : deg(x_i - s_i) < m } in F_q[T]^d, deterministic order.
std::vector<std::vector<Poly>> enumerate_ball(int m, const std::vector<Poly>& center,
                                              uint64_t cap = 100000000ull);
std::vector<Poly> enumerate_interval(const FieldPtr& F, int m, const Poly& center,
                                     uint64_t cap = 100000000ull);

// Uniform polynomial of degree < m (coefficient-wise uniform).
Poly random_poly(const FieldPtr& F, int m, Rng& rng);
// Uniform nonzero polynomial of degree < m.
Poly random_nonzero_poly(const FieldPtr& F, int m, Rng& rng);

Poly parse_poly(const FieldPtr& F, const std::string& text);

} // namespace ffl

#endif
