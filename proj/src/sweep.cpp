#include "fflat/sweep.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "fflat/counts.hpp"
#include "fflat/modular.hpp"

namespace ffl {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

ConfigValue parse_value(const std::string& raw) {
    ConfigValue v;
    std::string t = strip(raw);
    if (t.empty()) throw ConfigError("empty config value");
    if (t.front() == '[') {
        if (t.back() != ']') throw ConfigError("unterminated list: " + t);
        std::string body = t.substr(1, t.size() - 2);
        std::vector<std::string> parts;
        std::string cur;
        for (char c : body) {
            if (c == ',') {
                parts.push_back(cur);
                cur.clear();
            } else
                cur.push_back(c);
        }
        if (!strip(cur).empty()) parts.push_back(cur);
        bool all_int = true;
        for (auto& p : parts) {
            std::string sp = strip(p);
            if (sp.empty() || sp.find_first_not_of("-0123456789") != std::string::npos)
                all_int = false;
        }
        if (all_int) {
            v.kind = ConfigValue::IntList;
            for (auto& p : parts) v.ilist.push_back(std::stoll(strip(p)));
        } else {
            v.kind = ConfigValue::StrList;
            for (auto& p : parts) {
                std::string sp = strip(p);
                if (sp.size() >= 2 && sp.front() == '"' && sp.back() == '"')
                    sp = sp.substr(1, sp.size() - 2);
                v.slist.push_back(sp);
            }
        }
        return v;
    }
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"') throw ConfigError("unterminated string: " + t);
        v.kind = ConfigValue::Str;
        v.s = t.substr(1, t.size() - 2);
        return v;
    }
    if (t.find_first_not_of("-0123456789") == std::string::npos) {
        v.kind = ConfigValue::Int;
        v.i = std::stoll(t);
        return v;
    }
    if (t.find_first_not_of("-0123456789.eE+") == std::string::npos) {
        v.kind = ConfigValue::Float;
        v.f = std::stod(t);
        return v;
    }
    v.kind = ConfigValue::Str; // bare word
    v.s = t;
    return v;
}

} // namespace

std::map<std::string, ConfigValue> parse_flat_toml(const std::string& text) {
    std::map<std::string, ConfigValue> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        // strip comments outside quotes
        bool inq = false;
        std::string clean;
        for (char c : line) {
            if (c == '"') inq = !inq;
            if (c == '#' && !inq) break;
            clean.push_back(c);
        }
        clean = strip(clean);
        if (clean.empty()) continue;
        size_t eq = clean.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = strip(clean.substr(0, eq));
        kv[key] = parse_value(clean.substr(eq + 1));
    }
    return kv;
}

std::map<std::string, ConfigValue> load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_flat_toml(os.str());
}

SweepConfig SweepConfig::from_map(const std::map<std::string, ConfigValue>& kv) {
    SweepConfig c;
    auto geti = [&](const std::string& k, long long dflt) {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        if (it->second.kind == ConfigValue::Int) return it->second.i;
        throw ConfigError(k + " must be an integer");
    };
    auto gets = [&](const std::string& k, const std::string& dflt) {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        if (it->second.kind == ConfigValue::Str) return it->second.s;
        throw ConfigError(k + " must be a string");
    };
    c.theorem = gets("theorem", c.theorem);
    c.p = geti("p", geti("q", 3));
    c.f = geti("f", 1);
    c.k = geti("k", 2);
    c.d = geti("d", 2);
    auto it = kv.find("r");
    if (it != kv.end()) {
        if (it->second.kind == ConfigValue::IntList) c.r_list = it->second.ilist;
        else if (it->second.kind == ConfigValue::Int) c.r_list = {it->second.i};
        else throw ConfigError("r must be an integer or list");
    }
    auto mt = kv.find("m");
    if (mt != kv.end()) {
        if (mt->second.kind == ConfigValue::IntList) c.m_list = mt->second.ilist;
        else if (mt->second.kind == ConfigValue::Int) c.m_list = {mt->second.i};
        else throw ConfigError("m must be an integer or list");
    }
    c.m_rule = gets("m_rule", c.m_rule);
    c.s = gets("s", c.s);
    c.modulus = gets("modulus", c.modulus);
    auto fm = kv.find("field_modulus");
    if (fm != kv.end()) {
        if (fm->second.kind != ConfigValue::IntList)
            throw ConfigError("field_modulus must be a coefficient list");
        c.field_modulus = fm->second.ilist;
    }
    c.seed = (uint64_t)geti("seed", 1);
    c.cap = (uint64_t)geti("cap", (long long)c.cap);
    auto st = kv.find("slack");
    if (st != kv.end())
        c.slack_threshold = st->second.kind == ConfigValue::Float ? st->second.f
                                                                  : (double)st->second.i;
    c.out_dir = gets("out", c.out_dir);
    if (c.r_list.empty()) throw ConfigError("config needs r");
    return c;
}

namespace {

std::vector<long long> m_values(const SweepConfig& cfg, long long r) {
    std::vector<long long> out;
    if (!cfg.m_list.empty()) {
        for (long long m : cfg.m_list)
            if (m >= 1 && m <= r) out.push_back(m);
        return out;
    }
    long long hi = r;
    if (cfg.m_rule == "r_over_k") hi = r / cfg.k;
    else if (cfg.m_rule.rfind("max:", 0) == 0)
        hi = std::min(r, (long long)std::stoll(cfg.m_rule.substr(4)));
    else if (cfg.m_rule != "all")
        throw ConfigError("unknown m_rule: " + cfg.m_rule);
    for (long long m = 1; m <= hi; ++m) out.push_back(m);
    return out;
}

struct GridPoint {
    long long r, m;
    size_t index;
};

CountRow run_point(const std::string& family, const SweepConfig& cfg, const FieldPtr& Fq,
                   const GridPoint& gp, bool permuted) {
    CountRow row;
    row.theorem = cfg.theorem;
    row.q = (long long)Fq->q();
    row.r = gp.r;
    row.m = gp.m;
    row.k = cfg.k;
    row.d = cfg.d;
    row.seed = Rng::derive(cfg.seed, gp.index);
    try {
        Poly F = cfg.modulus == "random" ? random_irreducible(Fq, (int)gp.r, row.seed)
                                         : parse_poly(Fq, cfg.modulus);
        if (F.deg() != gp.r) throw ConfigError("fixed modulus degree disagrees with r");
        ResidueRing ring(F);
        OpBudget budget{cfg.cap, 0};
        Poly s = parse_poly(Fq, cfg.s);
        unsigned long long observed = 0;
        TheoremParams tp;
        tp.q = row.q;
        tp.r = gp.r;
        tp.m = gp.m;
        tp.k = cfg.k;
        tp.d = cfg.d;
        if (family == "inverse") {
            observed = inverse_energy(ring, (int)cfg.k, (int)gp.m, s, budget, permuted);
        } else if (family == "sqrt") {
            BigInt e = sqrt_energy_ones(ring, (int)cfg.k, (int)gp.m, budget, permuted);
            if (e > (BigInt)0x7fffffffffffffffLL) throw Overflow("sqrt energy too large");
            observed = (unsigned long long)e;
        } else if (family == "curve") {
            Rng crng(row.seed ^ 0x9e3779b97f4a7c15ULL);
            std::vector<Poly> a;
            if (cfg.theorem == "2.2" || cfg.theorem == "curve_box_elliptic") {
                for (int i = 0; i < 3; ++i) a.push_back(random_poly(Fq, (int)gp.r, crng));
                Poly lead = random_nonzero_poly(Fq, (int)gp.r, crng);
                while (poly_gcd(lead, F).deg() != 0) lead = random_nonzero_poly(Fq, (int)gp.r, crng);
                a.push_back(lead);
                observed = count_curve_points(ring, CurveSpec::cubic_minus_y2(a), (int)gp.m, s, s,
                                              budget, permuted);
            } else {
                for (long long i = 0; i < cfg.d; ++i) a.push_back(random_poly(Fq, (int)gp.r, crng));
                Poly lead = random_nonzero_poly(Fq, (int)gp.r, crng);
                while (poly_gcd(lead, F).deg() != 0) lead = random_nonzero_poly(Fq, (int)gp.r, crng);
                a.push_back(lead);
                observed = count_curve_points(ring, CurveSpec::poly_minus_y(a), (int)gp.m, s, s,
                                              budget, permuted);
            }
        } else {
            throw ConfigError("unknown sweep family: " + family);
        }
        RhsReport rhs = theorem_rhs(cfg.theorem, tp, 0.0);
        row.rhs_exponent = rhs.log_q_value;
        row.observed = std::to_string(observed);
        row.slack = observed == 0
                        ? -std::numeric_limits<double>::infinity()
                        : std::log((double)observed) / std::log((double)row.q) - rhs.log_q_value;
    } catch (const CapExceeded&) {
        row.status = "cap_exceeded";
    } catch (const RangeGateFailed&) {
        row.status = "gate_failed";
    }
    return row;
}

} // namespace

SweepOutcome run_sweep(const std::string& family, const SweepConfig& cfg, int jobs, bool recheck) {
    FieldPtr Fq;
    if (cfg.f > 1 && !cfg.field_modulus.empty()) {
        std::vector<uint32_t> mod;
        for (long long c : cfg.field_modulus) mod.push_back((uint32_t)(((c % cfg.p) + cfg.p) % cfg.p));
        Fq = Field::extension((uint32_t)cfg.p, (uint32_t)cfg.f, mod);
    } else {
        Fq = Field::make((uint32_t)cfg.p, (uint32_t)cfg.f, cfg.seed);
    }
    std::vector<GridPoint> grid;
    for (long long r : cfg.r_list)
        for (long long m : m_values(cfg, r)) grid.push_back({r, m, grid.size()});

    std::vector<CountRow> rows(grid.size());
    if (jobs <= 1) {
        for (const auto& gp : grid) rows[gp.index] = run_point(family, cfg, Fq, gp, false);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= grid.size()) return;
                rows[i] = run_point(family, cfg, Fq, grid[i], false);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (recheck) {
        for (size_t i = 0; i < grid.size(); i += 20) {
            if (rows[i].status != "ok") continue;
            CountRow again = run_point(family, cfg, Fq, grid[i], true);
            if (again.observed != rows[i].observed)
                throw Error("recheck mismatch at row " + std::to_string(i));
        }
    }
    SweepOutcome out;
    out.rows = rows;
    for (const auto& row : rows) {
        if (row.status != "ok") continue;
        out.max_slack = std::max(out.max_slack, row.slack);
        if (row.slack > cfg.slack_threshold) out.all_within = false;
    }
    return out;
}

void emit_report(const SweepConfig& cfg, const std::vector<CountRow>& rows) {
    std::filesystem::create_directories(cfg.out_dir);
    write_file(cfg.out_dir + "/report.csv", rows_to_csv(rows));
    write_file(cfg.out_dir + "/report.json", rows_to_json(rows));
}

} // namespace ffl
