#ifndef FFLAT_BIVAR_HPP
#define FFLAT_BIVAR_HPP

#include <utility>
#include <vector>

#include "fflat/matrix.hpp"
#include "fflat/ratfun.hpp"

namespace ffl {

// Element of F_q[T][x]: coeffs()[j] is the F_q[T] coefficient of x^j.
class BivarPoly {
public:
    BivarPoly() = default;
    explicit BivarPoly(FieldPtr F) : F_(std::move(F)) {}
    BivarPoly(FieldPtr F, std::vector<Poly> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) { trim(); }

    static BivarPoly zero(const FieldPtr& F) { return BivarPoly(F); }
    static BivarPoly x(const FieldPtr& F) {
        return BivarPoly(F, {Poly::zero(F), Poly::one(F)});
    }
    static BivarPoly from_const(const Poly& c) { return BivarPoly(c.field(), {c}); }

    const FieldPtr& field() const { return F_; }
    const std::vector<Poly>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int deg_x() const { return (int)c_.size() - 1; }
    Poly coeff(int j) const {
        return (j >= 0 && j < (int)c_.size()) ? c_[(size_t)j] : Poly::zero(F_);
    }
    const Poly& lc() const { return c_.back(); }

    BivarPoly operator+(const BivarPoly& o) const;
    BivarPoly operator-(const BivarPoly& o) const;
    BivarPoly operator*(const BivarPoly& o) const;
    BivarPoly operator*(const Poly& s) const;
    bool operator==(const BivarPoly& o) const { return c_ == o.c_; }
    bool operator!=(const BivarPoly& o) const { return !(*this == o); }

    Poly eval(const Poly& point) const;       // Horner in F_q[T]
    RatFun eval(const RatFun& point) const;   // Horner over F_q(T)
    Poly eval_mod(const Poly& point, const Poly& F) const;

    std::string to_string() const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    FieldPtr F_;
    std::vector<Poly> c_;
};

BivarPoly bivar_pow(const BivarPoly& p, uint32_t e);

// h(P) = max coefficient degree; exactly additive under products.
int height(const BivarPoly& p); // throws ZeroPolynomial on 0

// Sylvester matrix of P (x-degree d) and Q (x-degree e): d+e rows, the e
// shifted rows of P coefficients stacked over the d shifted rows of Q.
PolyMat sylvester(const BivarPoly& P, const BivarPoly& Q); // throws DegreeTooLow
Poly resultant(const BivarPoly& P, const BivarPoly& Q);

// gcd over F_q(T)[x] by monic Euclid; used as the resultant oracle.
// Returns the monic gcd with RatFun coefficients reduced to a BivarPoly
// over F_q[T] after clearing denominators (primitive, monic leading Poly).
BivarPoly bivar_gcd_fraction_field(const BivarPoly& P, const BivarPoly& Q);

// ((e+a)(d+b) - (a+1)(b+1)) * ell for the profile
// P = a_0 + ... + a_{e-1} x^{e-1}, |a_j| <= q^{(e-j+a) ell},
// Q = b_0 + ... + b_{d-1} x^{d-1}, |b_j| <= q^{(d-j+b) ell}.
long long resultant_degree_bound(long long e, long long d, long long ell,
                                 long long a, long long b);
// Verifies the declared profile of concrete P, Q (throws ProfileViolated),
// builds the Sylvester matrix on the declared slot counts (leading zeros
// allowed), and checks |Res| <= q^bound.  Returns the measured |Res|.
LogAbs resultant_profile_check(const BivarPoly& P, const BivarPoly& Q,
                               long long e, long long d,
                               long long ell, long long a, long long b);

// Exhaustive permutation check of the circulant sum identity:
// every fully-marked permutation of X(m,n) has entry sum
// (m-1+sigma)(n-1+theta) - sigma*theta.  Throws CapExceeded if m+n-2 > 9.
bool circulant_permutation_check(int m, int n, long long sigma, long long theta);

// P_x(Z) = sum_{s<=k} prod_{j != s} (x_j + Z) - sum_{s>k} prod_{j != s} (x_j + Z)
BivarPoly kloosterman_poly(const std::vector<Poly>& xs); // xs.size() = 2k

// Desk-scale factorization in F_q[T][x]: content + linear factors by the
// rational-root theorem + a divisor-pair search for quadratic splits of a
// quartic remainder.  Degree >= 5 remainders without rational roots are out
// of reach and raise CapExceeded.
struct BivarFactorization {
    uint32_t unit = 1;
    Poly content;                               // monic content in F_q[T]
    std::vector<std::pair<BivarPoly, int>> factors; // primitive irreducible, mult
    BivarPoly product() const;
};
BivarFactorization factor_bivar(const BivarPoly& P, uint64_t cap = 100000000ull);

bool bivar_divides(const BivarPoly& d, const BivarPoly& p);
// division in F_q(T)[x] restricted back to F_q[T][x]; nullopt if not exact
std::optional<BivarPoly> bivar_div_exact(const BivarPoly& p, const BivarPoly& d);

// For P with profile |a_j| <= q^{(d-j+a) ell}: every desk-findable
// factorization P = P1*P2 has P1 obeying |b_j| <= q^{(e-j+a) ell}.
bool factorisation_bound_check(const BivarPoly& P, long long ell, long long a,
                               uint64_t cap = 100000000ull);

} // namespace ffl

#endif
