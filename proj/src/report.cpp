#include "fflat/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fflat/errors.hpp"

namespace ffl {

namespace {
std::string fmt6(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}
} // namespace

std::string rows_to_csv(const std::vector<CountRow>& rows) {
    std::ostringstream os;
    os << "theorem,q,r,m,k,d,observed,rhs_exponent,slack,seed\n";
    for (const auto& row : rows) {
        os << row.theorem << "," << row.q << "," << row.r << "," << row.m << "," << row.k << ","
           << row.d << ",";
        if (row.status == "ok")
            os << row.observed << "," << fmt6(row.rhs_exponent) << "," << fmt6(row.slack);
        else
            os << row.status << "," << fmt6(row.rhs_exponent) << ",";
        os << "," << row.seed << "\n";
    }
    return os.str();
}

std::string rows_to_json(const std::vector<CountRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j;
        j["theorem"] = row.theorem;
        j["q"] = row.q;
        j["r"] = row.r;
        j["m"] = row.m;
        j["k"] = row.k;
        j["d"] = row.d;
        j["status"] = row.status;
        if (row.status == "ok") {
            j["observed"] = row.observed;
            j["slack"] = row.slack;
        }
        j["rhs_exponent"] = row.rhs_exponent;
        j["seed"] = row.seed;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path);
    out << content;
    if (!out) throw IoError("short write to " + path);
}

} // namespace ffl
