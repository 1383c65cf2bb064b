#ifndef FFLAT_COUNTS_HPP
#define FFLAT_COUNTS_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fflat/lattice.hpp"
#include "fflat/rat.hpp"
#include "fflat/residue.hpp"

namespace ffl {

// Elementary-operation budget; counters raise rather than truncate.
struct OpBudget {
    uint64_t cap = 100000000ull;
    uint64_t used = 0;
    void spend(uint64_t n) {
        used += n;
        if (used > cap) throw CapExceeded("counter exceeded its operation budget");
    }
};

using BigInt = __int128;
std::string bigint_to_string(BigInt v);

// Finitely supported weights on residues mod F, exact integer values.
struct WeightMap {
    std::map<uint64_t, long long> w;

    long long at(uint64_t code) const {
        auto it = w.find(code);
        return it == w.end() ? 0 : it->second;
    }
    void bump(uint64_t code, long long v) {
        if (!v) return;
        w[code] += v;
        prune(code);
    }
    void prune(uint64_t code) {
        auto it = w.find(code);
        if (it != w.end() && it->second == 0) w.erase(it);
    }
    size_t support_size() const { return w.size(); }

    static WeightMap indicator(const std::vector<uint64_t>& codes);
};

// k-fold additive convolution: S^(k)(x) counts ordered k-tuples summing to x.
WeightMap convolve_pow(const WeightMap& f, int k, const ResidueRing& ring, OpBudget& budget);

// exact norms of an integer weight map
BigInt norm_l1(const WeightMap& f);
long long norm_linf(const WeightMap& f);
BigInt norm_l2_sq(const WeightMap& f);
double lp_norm(const WeightMap& f, double d); // report edge; d >= 1 or infinity

// ---- curve points ----

struct CurveSpec {
    struct Term {
        int i, j; // x^i y^j
        Poly c;
    };
    std::vector<Term> terms;
    static CurveSpec poly_minus_y(const std::vector<Poly>& a); // sum a_i x^i - y
    static CurveSpec cubic_minus_y2(const std::vector<Poly>& a);
};

// |{(x, y) in I_m(s1) x I_m(s2) : Phi(x,y) = 0 mod F}| by double enumeration
unsigned long long count_curve_points(const ResidueRing& ring, const CurveSpec& curve,
                                      int m, const Poly& s1, const Poly& s2,
                                      OpBudget& budget, bool permuted = false);

// ---- Kloosterman / inverse energy ----

// distribution of xbar_1 + ... + xbar_k over admissible x_i in I_m(s);
// only x with gcd(x, F) = 1 are admitted
WeightMap inverse_sum_distribution(const ResidueRing& ring, int k, int m, const Poly& s,
                                   OpBudget& budget, bool permuted = false);
unsigned long long inverse_energy(const ResidueRing& ring, int k, int m, const Poly& s,
                                  OpBudget& budget, bool permuted = false);

// ---- modular square roots (q odd) ----

// S = { x in I_r : deg_F(x^2) < m } as residue codes
std::vector<uint64_t> sqrt_support(const ResidueRing& ring, int m, OpBudget& budget,
                                   bool permuted = false);
// E^sqrt_{F,k}(1_m), exact
BigInt sqrt_energy_ones(const ResidueRing& ring, int k, int m, OpBudget& budget,
                        bool permuted = false);
// general complex weights (alternating conjugation as in the defining sum);
// exactness is only claimed for integer-valued real weights
std::complex<double> sqrt_energy_weighted(const ResidueRing& ring, int k,
                                          const std::map<uint64_t, std::complex<double>>& alpha,
                                          OpBudget& budget);

// Q_{F,lambda,m} for one lambda, and the full table over all residues
unsigned long long q_lambda_ones(const ResidueRing& ring, uint64_t lambda, int m,
                                 OpBudget& budget);
std::vector<long long> q_lambda_table(const ResidueRing& ring, int m, OpBudget& budget);
std::complex<double> q_lambda_weighted(const ResidueRing& ring, uint64_t lambda,
                                       const std::map<uint64_t, std::complex<double>>& alpha,
                                       OpBudget& budget);

// J_{F,lambda,m} = |{(x,y) in I_m^2 : x^2 + lambda^4 = 2 lambda^2 y mod F}|
unsigned long long j_lambda(const ResidueRing& ring, uint64_t lambda, int m, OpBudget& budget,
                            bool permuted = false);

// Dyadic pigeonhole over the Q table: Gamma_nu = {lambda != 0 : 2^nu <= Q <
// 2^{nu+1}}, Delta = the level maximizing Delta^4 |Gamma|, D its class; then
// the same split on the difference-convolution (D * D) over nonzero lambda
// gives K and the class F.
struct DyadicPigeonhole {
    long long delta = 0;            // maximizing dyadic level of Q
    std::vector<uint64_t> d_class;  // lambdas with delta <= Q < 2 delta
    long long k = 0;                // 2^{w+1} for the maximizing level of D*D
    std::vector<uint64_t> f_class;  // lambdas != 0 with K <= (D*D) < 2K
};
DyadicPigeonhole dyadic_pigeonhole(const ResidueRing& ring,
                                   const std::vector<long long>& q_table, OpBudget& budget);

// ---- Vinogradov systems (exact equations over F_q[T], not mod F) ----

// number of 2s-tuples from S with sum_i x_i^j = lambda_j for j = 1..k
unsigned long long vinogradov_count(const std::vector<Poly>& lambda, int k, int s,
                                    const std::vector<Poly>& S, OpBudget& budget);

// ---- family lemma checkers ----

struct FamilyCheckResult {
    bool hypotheses_ok = false;
    std::string failed_hypothesis;
    std::string lhs, rhs; // decimal strings of the exact quantities compared
    bool holds = false;
};

enum class BetaParam { One, Two, Inf };

FamilyCheckResult family_check_first(const std::vector<Lattice>& family, const ConvexBody& B,
                                     const std::vector<PolyVec>& S, OpBudget& budget);
FamilyCheckResult family_check_first_last(const std::vector<Lattice>& family, const ConvexBody& B,
                                          const std::vector<PolyVec>& S, const LogAbs& A,
                                          OpBudget& budget);
FamilyCheckResult family_check_last(const Lattice& L, const ConvexBody& B,
                                    const std::vector<PolyVec>& S, int k, BetaParam beta,
                                    OpBudget& budget);

struct SmallPointResult {
    RatVec x;
    long long alpha = 0;
    bool valid = false; // x != 0 and N_B(x) <= q^alpha
};
SmallPointResult family_small_point(const Lattice& L, const ConvexBody& B,
                                    const std::vector<PolyVec>& S, int k, BetaParam beta,
                                    OpBudget& budget);

// ---- theorem RHS evaluation ----

struct TheoremParams {
    long long q = 3;
    long long r = 0;
    long long m = 0;
    long long k = 2;
    long long d = 2;
    Rat eps{1, 100};
    double norm1 = 0, norminf = 0; // weight norms for the alpha-energy bound
    double delta = 1;              // Delta for the K-Delta pigeonhole bound
    double set_size = 0;           // |S| for the Vinogradov corollary
    long long s = 1;
};

struct RhsReport {
    std::string id;
    std::vector<std::pair<std::string, double>> branches; // name -> log_q exponent
    std::vector<std::pair<std::string, bool>> gates;
    bool trivial_range = false;
    double log_q_value = 0; // log_q of the summed branch values
};

// slack: every o(m) is replaced by slack*m.  Throws RangeGateFailed when a
// stated hypothesis of the theorem fails.
RhsReport theorem_rhs(const std::string& id, const TheoremParams& p, double slack);

} // namespace ffl

#endif
