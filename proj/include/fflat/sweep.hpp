#ifndef FFLAT_SWEEP_HPP
#define FFLAT_SWEEP_HPP

#include <map>
#include <string>
#include <vector>

#include "fflat/report.hpp"

namespace ffl {

// Flat key-value config: ints, floats, quoted strings and [lists].
struct ConfigValue {
    enum Kind { Int, Float, Str, IntList, StrList } kind = Int;
    long long i = 0;
    double f = 0;
    std::string s;
    std::vector<long long> ilist;
    std::vector<std::string> slist;
};

std::map<std::string, ConfigValue> parse_flat_toml(const std::string& text);
std::map<std::string, ConfigValue> load_config(const std::string& path);

struct SweepConfig {
    std::string theorem = "2.3";   // RHS id; also selects the counter family
    long long p = 3, f = 1;        // field spec q = p^f
    std::vector<long long> r_list; // modulus degrees
    long long k = 2;
    long long d = 2;               // curve degree for curve sweeps
    std::vector<long long> m_list; // explicit m grid; empty = rule-based
    std::string m_rule = "all";    // "all" (1..r), "r_over_k" (1..r/k), "max:<n>"
    std::string s = "0";           // interval center
    std::string modulus = "random";
    std::vector<long long> field_modulus; // power-basis modulus over F_p when f > 1
    uint64_t seed = 1;
    uint64_t cap = 100000000ull;
    double slack_threshold = 2.0;
    std::string out_dir = "out";

    static SweepConfig from_map(const std::map<std::string, ConfigValue>& kv);
};

struct SweepOutcome {
    std::vector<CountRow> rows;
    double max_slack = 0;   // over ok rows
    bool all_within = true; // every ok row has slack <= threshold
};

// family: "inverse" (E^inv), "sqrt" (E^sqrt(1_m)), "curve" (curve points).
// jobs > 1 runs grid points on a worker pool; results merge in grid order.
SweepOutcome run_sweep(const std::string& family, const SweepConfig& cfg, int jobs,
                       bool recheck);

// writes report.csv and report.json under cfg.out_dir
void emit_report(const SweepConfig& cfg, const std::vector<CountRow>& rows);

} // namespace ffl

#endif
