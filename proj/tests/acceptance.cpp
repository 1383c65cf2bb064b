// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <iostream>

#include "fflat/sweep.hpp"
#include "fflat/verify.hpp"

using namespace ffl;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& what, bool pass, double secs, double limit,
            const std::string& extra = "") {
    bool ok = pass && (limit <= 0 || secs <= limit);
    if (!ok) ++failures;
    std::string timing = limit > 0 ? " of " + std::to_string((int)limit) + " s allowed" : "";
    std::printf("[%s] criterion %2d: %s (%.1f s%s)%s%s\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str(), secs, timing.c_str(), extra.empty() ? "" : " -- ", extra.c_str());
}

} // namespace

int main() {
    const uint64_t seed = 20260808;

    // 1. product formula, zero tolerance
    {
        Timer t;
        auto r = checks::lattice_product_formula(seed, 300, {2, 3, 5}, 4, 6);
        report(1, "product formula: sum of minima exponents = detlog - vollog", r.pass,
               t.seconds(), 20, r.detail);
    }
    // 2. counting formula with both enumeration strategies
    {
        Timer t;
        auto r = checks::lattice_counting_formula(seed, 150, 3, 10000);
        report(2, "counting formula: intersection_count = |enumerate_points|", r.pass, t.seconds(),
               60, r.detail);
    }
    // 3. duality and the dual-count identity
    {
        Timer t;
        auto r1 = checks::lattice_duality(seed, 300, {2, 3, 5}, 4, 6);
        auto r2 = checks::lattice_dual_count(seed, 150, 3);
        report(3, "duality: e_i + e*_{d-i+1} = 0 and the dual-count identity",
               r1.pass && r2.pass, t.seconds(), 0, r1.detail + "; " + r2.detail);
    }
    // 4. modular determinant
    {
        Timer t;
        auto r = checks::modular_det(seed, 200, 4, 6);
        report(4, "modular lattices have det exponent r", r.pass, t.seconds(), 0, r.detail);
    }
    // 5. heights and resultants
    {
        Timer t;
        auto r1 = checks::bivar_height_additive(seed, 250); // two fields -> 500 products
        auto r2 = checks::bivar_resultant_gcd(seed, 200);
        auto r3 = checks::bivar_resultant_profile(seed, 100);
        report(5, "height additivity, Res = 0 <-> gcd != 1, profile bound",
               r1.pass && r2.pass && r3.pass, t.seconds(), 30,
               r1.detail + "; " + r2.detail + "; " + r3.detail);
    }
    // 6. Coppersmith completeness
    {
        Timer t;
        auto r = checks::coppersmith_complete(seed, 50, 8, 12);
        report(6, "Coppersmith root set equals brute force", r.pass, t.seconds(), 300, r.detail);
    }
    // 7. character orthogonality
    {
        Timer t;
        auto r = checks::laurent_haar_orthogonality(seed, 67, 6);
        report(7, "Haar character integral is 1 iff |x| < 1", r.pass, t.seconds(), 0, r.detail);
    }
    // 8. energy identity
    {
        Timer t;
        auto r = checks::counts_energy_q_identity(seed, {3, 5}, 6, 400000000ull);
        report(8, "E^sqrt_{F,2}(1_m) = sum of Q^2", r.pass, t.seconds(), 120, r.detail);
    }
    // 9. exact family lemmas + the small-point corollary
    {
        Timer t;
        auto r1 = checks::counts_family_exact(seed, 50);
        auto r2 = checks::counts_small_point(seed, 50);
        report(9, "family lemmas hold exactly; small point always valid", r1.pass && r2.pass,
               t.seconds(), 0, r1.detail + "; " + r2.detail);
    }
    // 10. plant-and-recover
    {
        Timer t;
        auto r1 = checks::descent_plant(seed, 100);
        auto r2 = checks::annihilator_selfcert(seed, 50);
        report(10, "descent recovers plants; annihilator witnesses self-certify",
               r1.pass && r2.pass, t.seconds(), 0, r1.detail + "; " + r2.detail);
    }
    // 11. slack harness
    {
        Timer t;
        bool pass = true;
        double max_slack = -1e300;
        std::string detail;
        SweepConfig inv;
        inv.theorem = "2.3";
        inv.p = 3;
        inv.r_list = {4, 6, 8};
        inv.k = 2;
        inv.m_rule = "r_over_k";
        inv.seed = seed;
        inv.slack_threshold = 2.0;
        auto o1 = run_sweep("inverse", inv, 1, true);
        pass = pass && o1.all_within && !o1.rows.empty();
        max_slack = std::max(max_slack, o1.max_slack);
        for (const auto& row : o1.rows) pass = pass && row.status == "ok";

        SweepConfig sq3;
        sq3.theorem = "2.6";
        sq3.p = 3;
        sq3.r_list = {2, 3, 4, 5, 6, 7, 8};
        sq3.m_rule = "all";
        sq3.seed = seed;
        sq3.cap = 200000000ull;
        sq3.slack_threshold = 2.0;
        auto o2 = run_sweep("sqrt", sq3, 1, true);
        pass = pass && o2.all_within && !o2.rows.empty();
        max_slack = std::max(max_slack, o2.max_slack);
        for (const auto& row : o2.rows) pass = pass && row.status == "ok";

        SweepConfig sq5 = sq3;
        sq5.p = 5;
        sq5.m_rule = "max:5";
        auto o3 = run_sweep("sqrt", sq5, 1, true);
        pass = pass && o3.all_within && !o3.rows.empty();
        max_slack = std::max(max_slack, o3.max_slack);
        for (const auto& row : o3.rows) pass = pass && row.status == "ok";

        char buf[128];
        std::snprintf(buf, sizeof buf, "%zu rows, observed max slack %.4f (threshold 2)",
                      o1.rows.size() + o2.rows.size() + o3.rows.size(), max_slack);
        report(11, "slack harness sweeps for 2.3 and 2.6", pass, t.seconds(), 900, buf);
    }
    // 12. the Q <= C J constant
    {
        Timer t;
        Rat c;
        auto r = checks::counts_q_vs_j(seed, {3, 5}, 6, 2000000000ull, &c);
        report(12, "exhaustive Q/J sweep fixes C; re-sweep asserts Q <= C J", r.pass, t.seconds(),
               0, r.detail);
    }

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
