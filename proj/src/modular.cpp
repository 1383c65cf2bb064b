#include "fflat/modular.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace ffl {

Lattice build_modular_lattice(const ModularSpec& spec) {
    size_t d = spec.dim();
    if (d < 1) throw ConfigError("modular lattice needs d >= 1");
    if (spec.F.deg() < 1) throw ConfigError("modulus must have degree >= 1");
    const auto& F = spec.F.field();
    Poly a1_inv = mod_inverse(spec.a[0], spec.F); // throws NotInvertible
    PolyMat A(d, std::vector<Poly>(d, Poly::zero(F)));
    A[0][0] = spec.F;
    for (size_t j = 1; j < d; ++j) {
        A[0][j] = -((a1_inv * spec.a[j]) % spec.F);
        A[j][j] = Poly::one(F);
    }
    return Lattice(rat_from_poly(A));
}

bool modular_congruence_holds(const ModularSpec& spec, const std::vector<Poly>& x) {
    Poly acc = Poly::zero(spec.F.field());
    for (size_t i = 0; i < spec.dim(); ++i) acc = acc + spec.a[i] * x[i];
    return (acc % spec.F).is_zero();
}

std::optional<Poly> modular_dual_witness(const ModularSpec& spec, const RatVec& y) {
    const auto& F = spec.F.field();
    size_t d = spec.dim();
    if (y.size() != d) throw ConfigError("dual witness: dimension mismatch");
    RatFun Fr(spec.F);
    std::vector<Poly> z(d, Poly::zero(F));
    for (size_t i = 0; i < d; ++i) {
        RatFun zi = y[i] * Fr;
        if (!zi.is_poly()) return std::nullopt; // not in (1/F) F_q[T]^d
        z[i] = zi.num();
    }
    // w = abar_i z_i for the first a_i invertible; then check all congruences
    Poly w = Poly::zero(F);
    bool found = false;
    for (size_t i = 0; i < d && !found; ++i) {
        Poly g = poly_gcd(spec.a[i], spec.F);
        if (g.deg() == 0) {
            w = (mod_inverse(spec.a[i], spec.F) * z[i]) % spec.F;
            found = true;
        }
    }
    if (!found) throw NotInvertible("no a_i coprime to F");
    for (size_t i = 0; i < d; ++i)
        if (!((spec.a[i] * w - z[i]) % spec.F).is_zero()) return std::nullopt;
    return w;
}

ModularSpec power_spec(const Poly& s, const Poly& F, int d) {
    if (d < 1) throw ConfigError("power lattice needs d >= 1");
    const auto& Fq = F.field();
    ModularSpec spec;
    spec.F = F;
    Poly cur = Poly::one(Fq);
    for (int i = 0; i < d; ++i) {
        spec.a.push_back(cur);
        cur = (cur * s) % F;
    }
    return spec;
}

Lattice power_lattice(const Poly& s, const Poly& F, int d) {
    return build_modular_lattice(power_spec(s, F, d));
}

// ---- Coppersmith ----

CoppersmithResult coppersmith_small_roots(const BivarPoly& Q, const Poly& F, int m,
                                          int h_request, uint64_t cap) {
    const auto& Fq = F.field();
    int dQ = Q.deg_x();
    int r = F.deg();
    if (dQ < 1) throw DegreeTooLow("coppersmith: deg_x Q >= 1 required");
    if (r < 1 || m < 1) throw ConfigError("coppersmith: need r >= 1, m >= 1");
    if (poly_gcd(Q.lc(), F).deg() != 0)
        throw NotInvertible("coppersmith: leading coefficient shares a factor with F");

    // monicize modulo F: root set mod F is unchanged
    Poly lci = mod_inverse(Q.lc(), F);
    std::vector<Poly> qc(dQ + 1, Poly::zero(Fq));
    for (int j = 0; j < dQ; ++j) qc[(size_t)j] = (lci * Q.coeff(j)) % F;
    qc[(size_t)dQ] = Poly::one(Fq);
    BivarPoly Qm(Fq, qc);

    // m (h d + d - 1) < r h makes the box big enough for a short vector
    int h = h_request;
    if (h < 0) {
        for (int cand = 1; cand <= 16; ++cand)
            if ((long long)m * ((long long)cand * dQ + dQ - 1) < (long long)r * cand) {
                h = cand;
                break;
            }
        if (h < 0) throw ConditionViolated("coppersmith: no h <= 16 satisfies the range condition");
    } else if (!((long long)m * ((long long)h * dQ + dQ - 1) < (long long)r * h)) {
        throw ConditionViolated("coppersmith: requested h violates the range condition");
    }

    int D = dQ * (h + 1);
    PolyMat A((size_t)D, std::vector<Poly>((size_t)D, Poly::zero(Fq)));
    BivarPoly qpow(Fq, {Poly::one(Fq)});
    for (int v = 0; v <= h; ++v) {
        Poly fpow = poly_pow(F, (uint32_t)(h - v));
        for (int u = 0; u < dQ; ++u) {
            BivarPoly col = (qpow * fpow) * bivar_pow(BivarPoly::x(Fq), (uint32_t)u);
            size_t j = (size_t)(v * dQ + u);
            for (int i = 0; i <= col.deg_x(); ++i) A[(size_t)i][j] = col.coeff(i);
        }
        qpow = qpow * Qm;
    }
    Lattice L(rat_from_poly(A));
    std::vector<long long> exps((size_t)D);
    for (int i = 0; i < D; ++i) exps[(size_t)i] = (long long)r * h - (long long)i * m;
    ConvexBody B = ConvexBody::box_strict(Fq, exps);

    auto sm = successive_minima(L, B);
    if (sm.exps[0] > 0)
        throw ConditionViolated("coppersmith: lattice has no nonzero vector in the body");
    std::vector<Poly> gc((size_t)D, Poly::zero(Fq));
    for (int i = 0; i < D; ++i) {
        const RatFun& c = sm.vecs[0][(size_t)i];
        if (!c.is_poly()) throw Error("coppersmith: non-polynomial short vector");
        gc[(size_t)i] = c.num();
    }
    BivarPoly g(Fq, std::move(gc));
    if (g.is_zero()) throw Error("coppersmith: extracted polynomial is zero");

    // roots of g among deg < m, filtered by the original congruence; the
    // construction guarantees every small modular root of Q is a root of g
    uint64_t total = 1;
    for (int i = 0; i < m; ++i) {
        total *= Fq->q();
        if (total > cap) throw CapExceeded("coppersmith root scan");
    }
    CoppersmithResult out;
    out.h = h;
    for (const auto& x0 : enumerate_interval(Fq, m, Poly::zero(Fq), cap)) {
        bool qroot = Q.eval_mod(x0, F).is_zero();
        if (qroot && !g.eval(x0).is_zero())
            throw Error("coppersmith: a modular root of Q escaped g");
        if (qroot) out.roots.push_back(x0);
    }
    out.g = std::move(g);
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

// ---- recursive descent ----

namespace {

LogAbs rat_exp_cap(const Rat& bound) {
    // |x| <= q^bound with integer |x| exponents means deg x <= floor(bound)
    return LogAbs::of(bound.floor());
}

void require(bool cond, const std::string& what) {
    if (!cond) throw HypothesisFailed(what);
}

} // namespace

std::pair<Poly, Poly> recursive_descent(const std::vector<Poly>& u, const Poly& s,
                                        const Poly& F, long long ell, const Rat& beta) {
    const auto& Fq = F.field();
    int d = (int)u.size();
    long long r = F.deg();
    require(d >= 2, "recursive descent needs d >= 2");
    require(poly_gcd(s, F).deg() == 0, "gcd(s, F) != 1");
    bool all_zero = true;
    for (const auto& ui : u)
        if (!(ui % F).is_zero()) all_zero = false;
    require(!all_zero, "u is zero modulo F");

    // size profile |u_j| <= q^{ell((d^2-(2 beta+1)d+2)/2 + j) + d}
    Rat base = (Rat(d) * d - (beta * 2 + 1) * d + 2) / 2;
    for (int j = 0; j < d; ++j) {
        Rat bound = Rat(ell) * (base + j) + d;
        require(u[(size_t)j].log_abs() <= rat_exp_cap(bound),
                "size bound fails at u_" + std::to_string(j));
    }
    // ell < (r - 3d/2) / (d^2 - (2 beta + 1) d + 5)
    Rat denom = Rat(d) * d - (beta * 2 + 1) * d + 5;
    require(denom > Rat(0), "degenerate parameter gate");
    require(Rat(ell) < (Rat(r) - Rat(3 * d, 2)) / denom, "parameter gate (alphaconds) fails");
    // congruences u_0 s^j = u_j
    Poly spow = Poly::one(Fq);
    for (int j = 0; j < d; ++j) {
        require(((u[0] * spow - u[(size_t)j]) % F).is_zero(),
                "congruence u_0 s^j = u_j fails at j = " + std::to_string(j));
        spow = (spow * s) % F;
    }

    if (d == 2) {
        require(!(u[0] % F).is_zero() && !(u[1] % F).is_zero(), "degenerate pair is zero mod F");
        return {u[1], u[0]};
    }

    require(!u[0].is_zero(), "u_0 = 0");
    // base step: u_0 u_2 = u_1^2 exactly, so u_1/u_0 = a/b in lowest terms
    require(u[0] * u[2] == u[1] * u[1], "u_0 u_2 != u_1^2");
    Poly g = poly_gcd(u[0], u[1]);
    Poly b = poly_div_exact(u[0], g);
    Poly a = poly_div_exact(u[1], g);
    {
        uint32_t lb = b.lc(); // normalize b monic; fold the unit into a's side
        if (lb != 1) {
            b = b * Fq->inv(lb);
            a = a * Fq->inv(lb);
        }
    }
    auto [rj, rem] = poly_divmod(u[0], b * b);
    require(rem.is_zero(), "b^2 does not divide u_0");
    // inductive steps: r_{k+1} = r_k / b and u_{k+1} b = r_k a^{k+1}
    Poly apow = a * a;
    for (int k = 2; k <= d - 2; ++k) {
        apow = apow * a; // a^{k+1}
        require(u[(size_t)(k + 1)] * b == rj * apow,
                "recursion breaks at step " + std::to_string(k));
        auto [rn, rrem] = poly_divmod(rj, b);
        require(rrem.is_zero(), "b does not divide r_k");
        rj = rn;
    }

    require(!(a % F).is_zero(), "a = 0 mod F");
    require(!(b % F).is_zero(), "b = 0 mod F");
    require(((b * s - a) % F).is_zero(), "b s != a mod F");
    Rat abound = Rat(ell) * Rat((long long)d * (d + 1), 2 * d - 2) -
                 Rat(ell) * beta * Rat(d, d - 1) + Rat(d, d - 1);
    Rat bbound = Rat(ell) * ((Rat(d) * d - (beta * 2 + 1) * d + 2) / Rat(2 * d - 2)) + Rat(d, d - 1);
    require(a.log_abs() <= rat_exp_cap(abound), "|a| exceeds the stated bound");
    require(b.log_abs() <= rat_exp_cap(bbound), "|b| exceeds the stated bound");
    return {a, b};
}

// ---- small annihilator dichotomy ----

std::string AnnihilatorWitness::to_json() const {
    nlohmann::json j;
    j["case"] = (kind == SHORT_POLY) ? "short_poly" : "full_poly";
    j["t"] = t;
    j["verified"] = verified;
    j["coeffs"] = nlohmann::json::array();
    for (const auto& c : coeffs) j["coeffs"].push_back(c.to_list_string());
    j["bound_exps"] = nlohmann::json::array();
    for (const auto& b : bound_exps) j["bound_exps"].push_back(b.to_string());
    return j.dump();
}

namespace {

AnnihilatorWitness make_witness(AnnihilatorWitness::Case kind, std::vector<Poly> coeffs,
                                std::vector<Rat> bounds, int t, const Poly& s, const Poly& F) {
    AnnihilatorWitness w;
    w.kind = kind;
    w.coeffs = std::move(coeffs);
    w.bound_exps = std::move(bounds);
    w.t = t;
    // self-validation: congruence, nonvanishing mod F, per-coefficient bounds
    const auto& Fq = F.field();
    Poly acc = Poly::zero(Fq);
    Poly spow = Poly::one(Fq);
    bool all_zero = true;
    for (size_t j = 0; j < w.coeffs.size(); ++j) {
        acc = (acc + w.coeffs[j] * spow) % F;
        if (!(w.coeffs[j] % F).is_zero()) all_zero = false;
        spow = (spow * s) % F;
    }
    bool ok = acc.is_zero() && !all_zero;
    for (size_t j = 0; j < w.coeffs.size() && ok; ++j)
        ok = w.coeffs[j].log_abs() <= rat_exp_cap(w.bound_exps[j]);
    w.verified = ok;
    if (!ok) throw Error("annihilator witness failed its own certificate");
    return w;
}

std::vector<Rat> case1_bounds(int v, int d, long long ell, const Rat& beta) {
    // |u_j| <= q^{ell (v - j - (beta d - 1)/(d - 2))}
    std::vector<Rat> out;
    Rat shift = (beta * d - 1) / Rat(d - 2);
    for (int j = 0; j < v; ++j) out.push_back(Rat(ell) * (Rat(v - j) - shift));
    return out;
}

std::vector<Rat> case2_bounds(int d, long long ell, const Rat& beta) {
    // |u_j| <= q^{ell (d - j - (beta d - 1)/2) + d}
    std::vector<Rat> out;
    Rat shift = (beta * d - 1) / 2;
    for (int j = 0; j < d; ++j) out.push_back(Rat(ell) * (Rat(d - j) - shift) + d);
    return out;
}

} // namespace

AnnihilatorWitness find_small_annihilator(const Poly& s, const Poly& F, int d,
                                          long long ell, const Rat& beta, uint64_t cap) {
    const auto& Fq = F.field();
    long long r = F.deg();
    require(d > 2, "dichotomy needs d > 2");
    require(ell >= 1, "ell >= 1 required");
    require(beta > Rat(0) && beta <= Rat(1), "beta must lie in (0, 1]");
    require(beta * d > Rat(1), "beta d <= 1 makes the count lower bound vacuous");
    require(is_irreducible(F), "F is not irreducible");

    // parameter gate (lfconds)
    Rat g1 = (Rat(r) - Rat(3 * d, 2)) / (Rat(d) * d - (beta * 2 + 1) * d + 5);
    Rat g2 = Rat(d - 2, d - 1) * Rat(r) / (Rat(d) * d - (beta + 1) * d - 1);
    require(Rat(ell) < g1 && Rat(ell) < g2, "parameter gate (lfconds) fails");

    Lattice L = power_lattice(s, F, d);
    std::vector<long long> body_exps;
    for (int j = 0; j < d; ++j) body_exps.push_back(ell * (long long)(d - j));
    ConvexBody B = ConvexBody::box_strict(Fq, body_exps);
    auto sm = successive_minima(L, B);
    // |L cap B| = q^C
    long long C = 0;
    int t = 0;
    for (auto e : sm.exps) {
        if (e <= 0) {
            C += 1 - e;
            ++t;
        }
    }
    require(Rat(C) >= Rat(ell) * (beta * d - 1), "count lower bound (lowerboundassumption) fails");

    if (t == d)
        throw Error("t = d is impossible under the verified gates");

    if (t == d - 1) {
        // dual route: u_j = F * (dual shortest vector)_j, then descend
        auto [Ld, Bd] = dualize(L, B);
        auto smd = successive_minima(Ld, Bd);
        RatFun Fr(F);
        std::vector<Poly> u(d);
        for (int j = 0; j < d; ++j) {
            RatFun zj = smd.vecs[0][(size_t)j] * Fr;
            if (!zj.is_poly()) throw Error("dual vector not in (1/F) F_q[T]^d");
            u[(size_t)j] = zj.num();
        }
        auto [a, b] = recursive_descent(u, s, F, ell, beta);
        std::vector<Poly> coeffs(d, Poly::zero(Fq));
        coeffs[0] = -a;
        coeffs[1] = b;
        return make_witness(AnnihilatorWitness::FULL_POLY, std::move(coeffs),
                            case2_bounds(d, ell, beta), t, s, F);
    }

    if (t >= 2) { // 2 <= t <= d-2: primal vector, then an irreducible factor
        std::vector<Poly> v(d);
        for (int j = 0; j < d; ++j) {
            if (!sm.vecs[0][(size_t)j].is_poly()) throw Error("short vector not polynomial");
            v[(size_t)j] = sm.vecs[0][(size_t)j].num();
        }
        BivarPoly Pprime(Fq, v);
        if (!Pprime.eval_mod(s, F).is_zero()) throw Error("short vector congruence failed");
        auto fac = factor_bivar(Pprime, cap);
        const BivarPoly* best = nullptr;
        for (const auto& [f, mult] : fac.factors) {
            (void)mult;
            if (!f.eval_mod(s, F).is_zero()) continue;
            if (!best || f.deg_x() < best->deg_x()) best = &f;
        }
        if (!best) throw Error("no irreducible factor vanishes at s");
        int v_count = best->deg_x() + 1;
        if (v_count <= d - 1) {
            std::vector<Poly> coeffs;
            for (int j = 0; j < v_count; ++j) coeffs.push_back(best->coeff(j));
            return make_witness(AnnihilatorWitness::SHORT_POLY, std::move(coeffs),
                                case1_bounds(v_count, d, ell, beta), t, s, F);
        }
        // the full shortest vector still certifies the weaker full-size case
        return make_witness(AnnihilatorWitness::FULL_POLY, std::move(v),
                            case2_bounds(d, ell, beta), t, s, F);
    }

    // t = 1: the shortest vector itself satisfies the full-size bounds
    std::vector<Poly> v(d);
    for (int j = 0; j < d; ++j) {
        if (!sm.vecs[0][(size_t)j].is_poly()) throw Error("short vector not polynomial");
        v[(size_t)j] = sm.vecs[0][(size_t)j].num();
    }
    return make_witness(AnnihilatorWitness::FULL_POLY, std::move(v),
                        case2_bounds(d, ell, beta), t, s, F);
}

// ---- d = 3 trichotomy ----

std::string ThreeCaseResult::to_json() const {
    nlohmann::json j;
    j["case"] = tag == CASE_A ? "A" : (tag == CASE_B ? "B" : "C");
    j["count"] = count;
    if (tag == CASE_C) {
        j["w"] = w.to_list_string();
        j["x"] = {x[0].to_list_string(), x[1].to_list_string(), x[2].to_list_string()};
        j["measured_exp"] = {measured_exp[0], measured_exp[1], measured_exp[2]};
    }
    return j.dump();
}

ThreeCaseResult three_case_analysis(const Poly& a1, const Poly& a2, const Poly& a3,
                                    const Poly& F, long long n, long long m, long long l,
                                    uint64_t cap) {
    (void)cap;
    const auto& Fq = F.field();
    for (const Poly* a : {&a1, &a2, &a3})
        if (poly_gcd(*a, F).deg() != 0) throw NotInvertible("a_i not coprime to F");
    ModularSpec spec{{a1, a2, a3}, F};
    Lattice L = build_modular_lattice(spec);
    ConvexBody B = ConvexBody::box_closed(Fq, {n, m, l});
    auto sm = successive_minima(L, B);
    long long r = F.deg();
    long long C = 0;
    for (auto e : sm.exps)
        if (e <= 0) C += 1 - e;

    ThreeCaseResult out;
    out.count = intersection_count(sm, Fq->q());
    long long caseA_exp = n + m + l + 3 - r;
    if (C <= std::max(caseA_exp, 0ll)) {
        out.tag = ThreeCaseResult::CASE_A;
        return out;
    }
    if (sm.exps[0] <= 0 && sm.exps[1] > 0) {
        out.tag = ThreeCaseResult::CASE_B;
        return out;
    }
    if (!(sm.exps[1] <= 0 && sm.exps[2] > 0))
        throw Error("trichotomy: impossible minima profile");

    auto [Ld, Bd] = dualize(L, B);
    auto smd = successive_minima(Ld, Bd);
    RatFun Fr(F);
    std::array<Poly, 3> x;
    for (int i = 0; i < 3; ++i) {
        RatFun zi = smd.vecs[0][(size_t)i] * Fr;
        if (!zi.is_poly()) throw Error("trichotomy: dual vector not in (1/F) F_q[T]^3");
        x[(size_t)i] = zi.num();
    }
    auto w = modular_dual_witness(spec, smd.vecs[0]);
    if (!w) throw Error("trichotomy: dual membership without witness");
    if (poly_gcd(*w, F).deg() != 0) throw Error("trichotomy: witness shares a factor with F");
    out.tag = ThreeCaseResult::CASE_C;
    out.w = *w;
    out.x = x;
    // measured constants against |x_1| <= const * M L / |L cap B| etc.
    std::array<long long, 3> others = {m + l, n + l, n + m};
    for (int i = 0; i < 3; ++i) {
        if (x[(size_t)i].is_zero()) {
            out.measured_exp[(size_t)i] = 0; // |0| trivially within any bound
            continue;
        }
        out.measured_exp[(size_t)i] = x[(size_t)i].deg() - (others[(size_t)i] - C);
    }
    return out;
}

} // namespace ffl
