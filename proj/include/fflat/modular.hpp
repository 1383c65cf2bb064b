#ifndef FFLAT_MODULAR_HPP
#define FFLAT_MODULAR_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fflat/bivar.hpp"
#include "fflat/lattice.hpp"
#include "fflat/rat.hpp"

namespace ffl {

// {x in F_q[T]^d : a_1 x_1 + ... + a_d x_d = 0 mod F}
struct ModularSpec {
    std::vector<Poly> a;
    Poly F; // modulus, degree r >= 1

    size_t dim() const { return a.size(); }
    int r() const { return F.deg(); }
};

// Basis with F in the corner, -abar_1 a_j along the top row, identity below.
// Throws NotInvertible when gcd(a_1, F) != 1.
Lattice build_modular_lattice(const ModularSpec& spec);

bool modular_congruence_holds(const ModularSpec& spec, const std::vector<Poly>& x);

// y = (y_1/F, ..., y_d/F) lies in the dual lattice iff some w solves
// a_i w = y_i F ... i.e. a_i w = z_i (mod F) for the numerators z_i = y_i*F.
// Returns that w (reduced mod F) or nullopt.
std::optional<Poly> modular_dual_witness(const ModularSpec& spec, const RatVec& y);

// a = (1, s, s^2 mod F, ..., s^{d-1} mod F)
Lattice power_lattice(const Poly& s, const Poly& F, int d);
ModularSpec power_spec(const Poly& s, const Poly& F, int d);

// ---- Coppersmith-style small roots ----

struct CoppersmithResult {
    std::vector<Poly> roots; // all x0 with deg x0 < m and Q(x0) = 0 mod F
    BivarPoly g;             // the extracted global polynomial, g != 0
    int h;                   // multiplicity parameter actually used
};

// h_request < 0 selects the smallest h <= 16 with m < r h / (h d + d - 1).
CoppersmithResult coppersmith_small_roots(const BivarPoly& Q, const Poly& F, int m,
                                          int h_request = -1,
                                          uint64_t cap = 100000000ull);

// ---- the small-annihilator dichotomy ----

struct AnnihilatorWitness {
    enum Case { SHORT_POLY, FULL_POLY }; // case 1 / case 2 of the dichotomy
    Case kind = SHORT_POLY;
    std::vector<Poly> coeffs;  // u_0 .. u_{v-1}
    std::vector<Rat> bound_exps; // claimed per-coefficient exponent bounds
    int t = 0;                 // number of minima <= 1 (which case branch ran)
    bool verified = false;     // self-check of congruence + bounds
    std::string to_json() const;
};

// Dichotomy for the power lattice of s mod F against the staircase body
// |x_j| < q^{ell (d-j)}.  Throws HypothesisFailed naming the failed gate.
AnnihilatorWitness find_small_annihilator(const Poly& s, const Poly& F, int d,
                                          long long ell, const Rat& beta,
                                          uint64_t cap = 100000000ull);

// From u_j = u_0 s^j (mod F) with the stated size profile, produce nonzero
// a, b with b s = a (mod F) and the stated size bounds.
std::pair<Poly, Poly> recursive_descent(const std::vector<Poly>& u, const Poly& s,
                                        const Poly& F, long long ell, const Rat& beta);

// ---- the d = 3 trichotomy ----

struct ThreeCaseResult {
    enum Tag { CASE_A, CASE_B, CASE_C };
    Tag tag = CASE_A;
    unsigned long long count = 0;     // |L cap B|
    // case C witness: w coprime to F, a_i w = x_i (mod F)
    Poly w;
    std::array<Poly, 3> x;
    // measured constants: exponent c_i with |x_i| = q^{c_i} * (bound/q^2)
    std::array<long long, 3> measured_exp{0, 0, 0};
    std::string to_json() const;
};

// N, M, L are closed LogAbs radii: |x_1| <= q^n etc.
ThreeCaseResult three_case_analysis(const Poly& a1, const Poly& a2, const Poly& a3,
                                    const Poly& F, long long n, long long m, long long l,
                                    uint64_t cap = 100000000ull);

} // namespace ffl

#endif
