// Command-line front end: property-suite runner, parameter sweeps, and
// one-shot lattice / Coppersmith queries.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fflat/counts.hpp"
#include "fflat/modular.hpp"
#include "fflat/sweep.hpp"
#include "fflat/verify.hpp"

using namespace ffl;

namespace {

FieldPtr field_from(long long q, long long f, uint64_t seed) {
    return Field::make((uint32_t)q, (uint32_t)f, seed);
}

RatMat parse_matrix_json(const FieldPtr& F, const std::string& text) {
    auto j = nlohmann::json::parse(text);
    RatMat m;
    for (const auto& row : j) {
        RatVec rv;
        for (const auto& cell : row) rv.push_back(parse_ratfun(F, cell.get<std::string>()));
        m.push_back(std::move(rv));
    }
    if (m.empty() || m.size() != m[0].size()) throw ConfigError("matrix must be square");
    return m;
}

nlohmann::json matrix_to_json(const RatMat& m) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : m) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row) r.push_back(c.to_string());
        j.push_back(r);
    }
    return j;
}

SweepConfig config_for(const std::string& path, const std::string& out_override,
                       long long seed_override, double slack_override) {
    SweepConfig cfg = SweepConfig::from_map(load_config(path));
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (seed_override >= 0) cfg.seed = (uint64_t)seed_override;
    if (slack_override >= 0) cfg.slack_threshold = slack_override;
    return cfg;
}

int do_sweep(const std::string& family, const SweepConfig& cfg, int jobs, bool recheck) {
    auto outcome = run_sweep(family, cfg, jobs, recheck);
    emit_report(cfg, outcome.rows);
    size_t ok = 0, capped = 0, gated = 0;
    for (const auto& row : outcome.rows) {
        if (row.status == "ok") ++ok;
        else if (row.status == "cap_exceeded") ++capped;
        else ++gated;
    }
    std::cout << "rows: " << outcome.rows.size() << " (ok " << ok << ", cap_exceeded " << capped
              << ", gate_failed " << gated << ")\n";
    std::cout << "max slack: " << outcome.max_slack << " (threshold " << cfg.slack_threshold
              << ")\n";
    std::cout << "report: " << cfg.out_dir << "/report.csv\n";
    return outcome.all_within ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact function-field lattice toolkit"};
    app.require_subcommand(1);

    // verify
    std::string sel = "all";
    uint64_t seed = 1;
    bool inject_fault = false;
    std::string json_out;
    auto* verify = app.add_subcommand("verify", "run the module property suites");
    verify->add_option("--select", sel, "module or check name (default all)");
    verify->add_option("--seed", seed, "seed");
    verify->add_flag("--inject-fault", inject_fault, "perturb one check to exercise failure");
    verify->add_option("--json", json_out, "write the summary JSON here");

    // sweeps
    std::string cfg_path, out_dir;
    long long seed_override = -1;
    double slack_override = -1;
    int jobs = 1;
    bool recheck = false;
    auto add_sweep = [&](const char* name, const char* what) {
        auto* sc = app.add_subcommand(name, what);
        sc->add_option("--config", cfg_path, "flat TOML config")->required();
        sc->add_option("--out", out_dir, "output directory override");
        sc->add_option("--seed", seed_override, "seed override");
        sc->add_option("--jobs", jobs, "parallel grid workers");
        sc->add_option("--slack", slack_override, "slack threshold override");
        sc->add_flag("--recheck", recheck, "recount 5% of rows with permuted enumeration");
        return sc;
    };
    auto* sweep_inv = add_sweep("sweep-inverse", "Kloosterman inverse-energy sweep");
    auto* sweep_sqrt = add_sweep("sweep-sqrt", "modular square-root energy sweep");
    auto* sweep_curve = add_sweep("sweep-curve", "curve point-count sweep");

    // coppersmith
    long long cs_q = 3, cs_f = 1, cs_r = 0, cs_m = 1, cs_h = -1;
    uint64_t cs_seed = 1;
    std::string cs_modulus, cs_poly;
    auto* cs = app.add_subcommand("coppersmith", "small modular roots of Q(x) mod F");
    cs->add_option("--q", cs_q, "field size p (prime) or p with --f");
    cs->add_option("--f", cs_f, "extension degree");
    cs->add_option("--modulus", cs_modulus, "modulus polynomial (omit to sample)");
    cs->add_option("--r", cs_r, "degree for a sampled modulus");
    cs->add_option("--modseed", cs_seed, "seed for the sampled modulus");
    cs->add_option("--poly", cs_poly, "Q as ';'-separated coefficients by x power")->required();
    cs->add_option("--m", cs_m, "root size bound: deg x0 < m")->required();
    cs->add_option("--h-param", cs_h, "multiplicity parameter (default: auto)");

    // minima
    long long mn_q = 3, mn_f = 1;
    std::string mn_A, mn_U;
    uint64_t mn_cap = 100000;
    auto* mn = app.add_subcommand("minima", "one-shot lattice / body queries");
    mn->add_option("--q", mn_q, "field size");
    mn->add_option("--f", mn_f, "extension degree");
    mn->add_option("--A", mn_A, "lattice basis as a JSON matrix of RatFun strings")->required();
    mn->add_option("--U", mn_U, "body shape as a JSON matrix of RatFun strings")->required();
    mn->add_option("--enumerate-cap", mn_cap, "point cap for enumeration (0 = skip)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            auto results = run_verify(sel, seed, inject_fault);
            bool all_pass = true;
            for (const auto& r : results) {
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
                if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
                std::cout << "\n";
                all_pass = all_pass && r.pass;
            }
            if (!json_out.empty()) write_file(json_out, verify_summary_json(results));
            return all_pass ? 0 : 1;
        }
        if (*sweep_inv)
            return do_sweep("inverse", config_for(cfg_path, out_dir, seed_override, slack_override),
                            jobs, recheck);
        if (*sweep_sqrt)
            return do_sweep("sqrt", config_for(cfg_path, out_dir, seed_override, slack_override),
                            jobs, recheck);
        if (*sweep_curve)
            return do_sweep("curve", config_for(cfg_path, out_dir, seed_override, slack_override),
                            jobs, recheck);
        if (*cs) {
            auto Fq = field_from(cs_q, cs_f, cs_seed);
            Poly F = cs_modulus.empty() ? random_irreducible(Fq, (int)cs_r, cs_seed)
                                        : parse_poly(Fq, cs_modulus);
            std::vector<Poly> coeffs;
            std::string cur;
            for (char c : cs_poly + ";") {
                if (c == ';') {
                    if (!cur.empty()) coeffs.push_back(parse_poly(Fq, cur));
                    cur.clear();
                } else
                    cur.push_back(c);
            }
            auto res = coppersmith_small_roots(BivarPoly(Fq, coeffs), F, (int)cs_m, (int)cs_h);
            nlohmann::json j;
            j["modulus"] = F.to_string();
            j["h"] = res.h;
            j["roots"] = nlohmann::json::array();
            for (const auto& root : res.roots) j["roots"].push_back(root.to_string());
            j["g"] = res.g.to_string();
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (*mn) {
            auto Fq = field_from(mn_q, mn_f, 1);
            Lattice L(parse_matrix_json(Fq, mn_A));
            ConvexBody B(parse_matrix_json(Fq, mn_U));
            auto sm = successive_minima(L, B);
            nlohmann::json j;
            j["det_log"] = det_log(L).e;
            j["vol_log"] = vol_log(B).e;
            j["minima_exponents"] = sm.exps;
            j["A"] = matrix_to_json(L.basis());
            nlohmann::json vecs = nlohmann::json::array();
            for (const auto& v : sm.vecs) vecs.push_back(ratvec_to_string(v));
            j["attaining_vectors"] = vecs;
            j["intersection_count"] = intersection_count(sm, Fq->q());
            if (mn_cap > 0 && intersection_count(sm, Fq->q()) <= mn_cap) {
                auto pts = enumerate_points(L, B, mn_cap);
                j["points"] = nlohmann::json::array();
                for (const auto& point : pts) j["points"].push_back(ratvec_to_string(point));
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
