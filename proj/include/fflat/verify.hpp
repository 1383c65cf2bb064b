#ifndef FFLAT_VERIFY_HPP
#define FFLAT_VERIFY_HPP

#include <string>
#include <vector>

#include "fflat/counts.hpp"
#include "fflat/modular.hpp"

namespace ffl {

struct CheckResult {
    std::string name;
    std::string module_tag;
    bool pass = false;
    std::string detail;
};

// Tunable property suites.  Each check runs `trials` seeded instances and
// reports the first failure (or a summary statistic) in `detail`.
// `fault` flips one computed quantity inside the product-formula check so
// the harness's failure path can itself be exercised.
namespace checks {

CheckResult field_axioms(uint64_t seed, int trials);
CheckResult field_trace_linear(uint64_t seed, int trials);
CheckResult poly_ultrametric(uint64_t seed, int trials);
CheckResult poly_inverse_roundtrip(uint64_t seed, int trials);
CheckResult poly_factorize_roundtrip(uint64_t seed, int trials, int degmax);
CheckResult poly_ball_translation(uint64_t seed, int trials);
CheckResult laurent_char_additive(uint64_t seed, int trials);
CheckResult laurent_haar_orthogonality(uint64_t seed, int trials, int expmax);
CheckResult laurent_expand_stability(uint64_t seed, int trials);

// lattice_core; qs = the field sizes cycled through
CheckResult lattice_product_formula(uint64_t seed, int trials,
                                    const std::vector<uint32_t>& qs, int dmax, int degmax,
                                    bool fault = false);
CheckResult lattice_counting_formula(uint64_t seed, int trials, int dmax, uint64_t count_cap);
CheckResult lattice_duality(uint64_t seed, int trials, const std::vector<uint32_t>& qs, int dmax,
                            int degmax);
CheckResult lattice_dual_count(uint64_t seed, int trials, int dmax);
CheckResult lattice_minkowski(uint64_t seed, int trials, int dmax);

CheckResult modular_det(uint64_t seed, int trials, int dmax, int rmax);
CheckResult modular_membership(uint64_t seed, int trials);
CheckResult coppersmith_complete(uint64_t seed, int trials, int rlo, int rhi);
CheckResult descent_plant(uint64_t seed, int trials);
CheckResult annihilator_selfcert(uint64_t seed, int trials);
CheckResult three_case_cases(uint64_t seed, int trials);

CheckResult bivar_height_additive(uint64_t seed, int trials);
CheckResult bivar_resultant_gcd(uint64_t seed, int trials);
CheckResult bivar_resultant_profile(uint64_t seed, int trials);
CheckResult bivar_circulant();
CheckResult bivar_kloosterman(uint64_t seed, int trials);

CheckResult counts_double_enumeration(uint64_t seed, int trials);
CheckResult counts_partitions(uint64_t seed, int trials);
CheckResult counts_energy_q_identity(uint64_t seed, const std::vector<uint32_t>& qs, int rmax,
                                     uint64_t cap);
CheckResult counts_q_vs_j(uint64_t seed, const std::vector<uint32_t>& qs, int rmax, uint64_t cap,
                          Rat* measured_c = nullptr);
CheckResult counts_family_exact(uint64_t seed, int trials);
CheckResult counts_small_point(uint64_t seed, int trials);

} // namespace checks

// Runs the checks whose module tag (or name) matches `selector`
// ("all" runs everything).  Seeded and deterministic.
std::vector<CheckResult> run_verify(const std::string& selector, uint64_t seed,
                                    bool inject_fault = false);

std::string verify_summary_json(const std::vector<CheckResult>& results);

} // namespace ffl

#endif
