#ifndef FFLAT_REPORT_HPP
#define FFLAT_REPORT_HPP

#include <string>
#include <vector>

namespace ffl {

// One sweep row.  status is "ok", "cap_exceeded" or "gate_failed"; only
// "ok" rows carry observed/slack values.
struct CountRow {
    std::string theorem;
    long long q = 0, r = 0, m = 0, k = 0, d = 0;
    std::string observed;   // decimal count, empty unless status == "ok"
    double rhs_exponent = 0;
    double slack = 0;
    uint64_t seed = 0;
    std::string status = "ok";
};

// header: theorem,q,r,m,k,d,observed,rhs_exponent,slack,seed
std::string rows_to_csv(const std::vector<CountRow>& rows);
std::string rows_to_json(const std::vector<CountRow>& rows);
void write_file(const std::string& path, const std::string& content); // throws IoError

} // namespace ffl

#endif
