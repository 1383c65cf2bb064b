#include "doctest.h"

#include <set>

#include "fflat/counts.hpp"
#include "fflat/modular.hpp"

using namespace ffl;

namespace {
Poly P(const FieldPtr& F, std::vector<uint32_t> c) { return Poly(F, std::move(c)); }

OpBudget fresh(uint64_t cap = 100000000ull) { return OpBudget{cap, 0}; }
} // namespace

TEST_CASE("residue ring matches the polynomial ring") {
    auto F3 = Field::prime(3);
    Poly F = random_irreducible(F3, 4, 17);
    ResidueRing ring(F);
    CHECK(ring.size() == 81);
    Rng rng(60);
    for (int it = 0; it < 300; ++it) {
        Poly a = random_poly(F3, 6, rng), b = random_poly(F3, 6, rng);
        uint64_t ca = ring.code_of(a), cb = ring.code_of(b);
        CHECK(ring.add(ca, cb) == ring.code_of(a + b));
        CHECK(ring.sub(ca, cb) == ring.code_of(a - b));
        CHECK(ring.mul(ca, cb) == ring.code_of((a * b) % F));
        CHECK(ring.poly_of(ca) == a % F);
        CHECK(ring.deg(ca) == (a % F).deg());
    }
    // codes of I_m are [0, q^m)
    for (uint64_t c = 0; c < 27; ++c) CHECK(ring.deg(c) < 3);
    // inverses round trip
    for (uint64_t c = 1; c < ring.size(); ++c) {
        if (!ring.invertible(c)) continue;
        CHECK(ring.mul(c, ring.inv(c)) == ring.code_of(Poly::one(F3)));
    }
    // extension field coefficients work too
    auto F4 = Field::extension(2, 2, {1, 1, 1});
    Poly F4mod = random_irreducible(F4, 3, 5);
    ResidueRing ring4(F4mod);
    for (int it = 0; it < 100; ++it) {
        Poly a = random_poly(F4, 4, rng), b = random_poly(F4, 4, rng);
        CHECK(ring4.mul(ring4.code_of(a), ring4.code_of(b)) == ring4.code_of((a * b) % F4mod));
    }
}

TEST_CASE("convolution and norms") {
    auto F2 = Field::prime(2);
    ResidueRing ring(random_irreducible(F2, 3, 1));
    auto budget = fresh();
    // S = {0, 1}: S^(2)(1) = 2
    WeightMap f = WeightMap::indicator({ring.code_of(Poly::zero(F2)), ring.code_of(Poly::one(F2))});
    WeightMap g = convolve_pow(f, 2, ring, budget);
    CHECK(g.at(ring.code_of(Poly::one(F2))) == 2);

    // || 1_m ||_1 = q^m
    auto F3 = Field::prime(3);
    ResidueRing ring3(random_irreducible(F3, 3, 2));
    std::vector<uint64_t> ball;
    for (uint64_t c = 0; c < ring3.interval_size(2); ++c) ball.push_back(c);
    WeightMap onem = WeightMap::indicator(ball);
    CHECK(norm_l1(onem) == 9);
    CHECK(norm_linf(onem) == 1);
    CHECK(lp_norm(onem, 1.0) == doctest::Approx(9.0));

    // S = I_1 over F_3: S^(2)(0) = 3
    std::vector<uint64_t> i1;
    for (uint64_t c = 0; c < 3; ++c) i1.push_back(c);
    auto g2 = convolve_pow(WeightMap::indicator(i1), 2, ring3, budget);
    CHECK(g2.at(0) == 3);
}

TEST_CASE("curve point counts") {
    auto F3 = Field::prime(3);
    Poly F = P(F3, {1, 0, 1});
    ResidueRing ring(F);
    auto budget = fresh();

    // y - x: q^m points
    CurveSpec line = CurveSpec::poly_minus_y({Poly::zero(F3), Poly::one(F3)});
    CHECK(count_curve_points(ring, line, 1, Poly::zero(F3), Poly::zero(F3), budget) == 3);
    CHECK(count_curve_points(ring, line, 2, Poly::zero(F3), Poly::zero(F3), budget) == 9);

    // y - x^2 with m = 1: all three constants square to constants
    CurveSpec parab = CurveSpec::poly_minus_y({Poly::zero(F3), Poly::zero(F3), Poly::one(F3)});
    CHECK(count_curve_points(ring, parab, 1, Poly::zero(F3), Poly::zero(F3), budget) == 3);

    // y^2 - x^3 at m = 0: only the origin
    CurveSpec ell = CurveSpec::cubic_minus_y2(
        {Poly::zero(F3), Poly::zero(F3), Poly::zero(F3), Poly::one(F3)});
    CHECK(count_curve_points(ring, ell, 0, Poly::zero(F3), Poly::zero(F3), budget) == 1);

    // shifted centers and permuted enumeration agree with a direct scan
    Rng rng(61);
    for (int it = 0; it < 5; ++it) {
        Poly s1 = random_poly(F3, 2, rng), s2 = random_poly(F3, 2, rng);
        CurveSpec c = CurveSpec::poly_minus_y({random_poly(F3, 2, rng), random_poly(F3, 2, rng),
                                               random_poly(F3, 2, rng)});
        unsigned long long direct = 0;
        for (const auto& x : enumerate_interval(F3, 2, s1, 1000))
            for (const auto& y : enumerate_interval(F3, 2, s2, 1000)) {
                Poly phi = Poly::zero(F3);
                for (const auto& t : c.terms)
                    phi = phi + t.c * poly_pow(x, (uint32_t)t.i) * poly_pow(y, (uint32_t)t.j);
                if ((phi % F).is_zero()) ++direct;
            }
        CHECK(count_curve_points(ring, c, 2, s1, s2, budget) == direct);
        CHECK(count_curve_points(ring, c, 2, s1, s2, budget, true) == direct);
    }
}

TEST_CASE("inverse energy") {
    auto F3 = Field::prime(3);
    Poly F = P(F3, {1, 0, 1});
    ResidueRing ring(F);
    auto budget = fresh();

    CHECK(inverse_energy(ring, 1, 1, Poly::zero(F3), budget) == 2);
    CHECK(inverse_energy(ring, 1, 1, Poly::t(F3), budget) == 3); // T, T+1, T+2 all invertible

    // diagonal lower bound: E >= (#admissible)^k
    Rng rng(62);
    for (int it = 0; it < 6; ++it) {
        Poly Fr = random_irreducible(F3, 3, rng.next());
        ResidueRing rr(Fr);
        Poly s = random_poly(F3, 3, rng);
        int m = 1 + (int)rng.below(2);
        unsigned long long adm = 0;
        for (const auto& z : enumerate_interval(F3, m, s, 1000))
            if (poly_gcd(z, Fr).deg() == 0 && !(z % Fr).is_zero()) ++adm;
        int k = 2;
        unsigned long long e = inverse_energy(rr, k, m, s, budget);
        unsigned long long diag = adm * adm; // (#adm)^k with k = 2
        CHECK(e >= diag);
        // brute-force double check over 2k-tuples
        unsigned long long brute = 0;
        std::vector<Poly> adm_inv;
        for (const auto& z : enumerate_interval(F3, m, s, 1000))
            if (poly_gcd(z, Fr).deg() == 0 && !(z % Fr).is_zero())
                adm_inv.push_back(mod_inverse(z, Fr));
        for (const auto& a : adm_inv)
            for (const auto& b : adm_inv)
                for (const auto& c : adm_inv)
                    for (const auto& d : adm_inv)
                        if (((a + b - c - d) % Fr).is_zero()) ++brute;
        CHECK(e == brute);
        // permuted enumeration determinism
        CHECK(inverse_energy(rr, k, m, s, budget, true) == e);
    }

    // partition identity: sum over lambda of f^(k) = (#admissible)^k
    Poly Fr = random_irreducible(F3, 4, 99);
    ResidueRing rr(Fr);
    WeightMap dist = inverse_sum_distribution(rr, 2, 2, Poly::zero(F3), budget);
    BigInt total = 0;
    unsigned long long adm = 0;
    for (const auto& z : enumerate_interval(F3, 2, Poly::zero(F3), 1000))
        if (poly_gcd(z, Fr).deg() == 0 && !(z % Fr).is_zero()) ++adm;
    for (const auto& [c, v] : dist.w) total += v;
    CHECK(total == (BigInt)adm * adm);
}

TEST_CASE("sqrt energy and Q/J") {
    auto F3 = Field::prime(3);
    Poly F = random_irreducible(F3, 2, 3);
    ResidueRing ring(F);
    auto budget = fresh();

    // closed form at m = r: E = q^{3r}
    CHECK(sqrt_energy_ones(ring, 2, 2, budget) == (BigInt)729);
    // direct 4-fold enumeration oracle at m = 1
    for (int m : {1, 2}) {
        BigInt direct = 0;
        uint64_t n = ring.size();
        for (uint64_t x1 = 0; x1 < n; ++x1)
            for (uint64_t x2 = 0; x2 < n; ++x2)
                for (uint64_t x3 = 0; x3 < n; ++x3)
                    for (uint64_t x4 = 0; x4 < n; ++x4) {
                        if (ring.add(x1, x2) != ring.add(x3, x4)) continue;
                        bool ok = true;
                        for (uint64_t x : {x1, x2, x3, x4})
                            if (ring.deg(ring.mul(x, x)) >= m) ok = false;
                        if (ok) ++direct;
                    }
        CHECK(sqrt_energy_ones(ring, 2, m, budget) == direct);
        CHECK(sqrt_energy_ones(ring, 2, m, budget, true) == direct);
    }

    // alpha = 0 weights
    std::map<uint64_t, std::complex<double>> empty;
    CHECK(std::abs(sqrt_energy_weighted(ring, 2, empty, budget)) == doctest::Approx(0.0));

    // alpha = 1_m as complex weights reproduces the exact integer energy
    for (int m : {1, 2}) {
        std::map<uint64_t, std::complex<double>> ones;
        for (uint64_t c = 0; c < ring.interval_size(m); ++c) ones[c] = 1.0;
        auto ew = sqrt_energy_weighted(ring, 2, ones, budget);
        CHECK(ew.real() == doctest::Approx((double)(long long)sqrt_energy_ones(ring, 2, m, budget)));
        CHECK(ew.imag() == doctest::Approx(0.0));
    }

    // Q at m = r is q^r for every lambda; symmetry Q_l = Q_{-l}
    auto table = q_lambda_table(ring, 2, budget);
    for (uint64_t l = 0; l < ring.size(); ++l) {
        CHECK(table[l] == 9);
    }
    auto t1 = q_lambda_table(ring, 1, budget);
    for (uint64_t l = 1; l < ring.size(); ++l) CHECK(t1[l] == t1[ring.neg(l)]);
    // single-lambda matches the table and a direct pair scan
    for (uint64_t l = 0; l < ring.size(); ++l) {
        CHECK(q_lambda_ones(ring, l, 1, budget) == (unsigned long long)t1[l]);
    }

    // E^sqrt_{F,2}(1_m) = sum_lambda Q^2 exactly
    for (int m : {1, 2}) {
        auto tm = q_lambda_table(ring, m, budget);
        BigInt sum = 0;
        for (long long v : tm) sum += (BigInt)v * v;
        CHECK(sqrt_energy_ones(ring, 2, m, budget) == sum);
    }

    // E^sqrt_{F,4}(1_m) <= |S|^4 E^sqrt_{F,2}(1_m): fixing the four outer
    // variables and applying Cauchy-Schwarz to the shifted pair count.  The
    // support S has at most 2 q^m elements (two roots per square), so the
    // q^{4m}-coefficient form holds with constant 16, not 1.
    for (int m : {1, 2}) {
        BigInt e2 = sqrt_energy_ones(ring, 2, m, budget);
        BigInt e4 = sqrt_energy_ones(ring, 4, m, budget);
        BigInt s4 = 1;
        BigInt ssize = (BigInt)sqrt_support(ring, m, budget).size();
        for (int i = 0; i < 4; ++i) s4 *= ssize;
        CHECK(e4 <= s4 * e2);
        BigInt q4m16 = 16;
        for (int i = 0; i < 4 * m; ++i) q4m16 *= 3;
        CHECK(e4 <= q4m16 * e2);
    }

    // J oracle
    Rng rng(63);
    Poly F5m = random_irreducible(Field::prime(5), 3, 4);
    ResidueRing r5(F5m);
    for (int it = 0; it < 10; ++it) {
        uint64_t l = 1 + rng.below(r5.size() - 1);
        int m = 1 + (int)rng.below(3);
        unsigned long long direct = 0;
        auto F5 = F5m.field();
        Poly lp = r5.poly_of(l);
        for (const auto& x : enumerate_interval(F5, m, Poly::zero(F5), 10000))
            for (const auto& y : enumerate_interval(F5, m, Poly::zero(F5), 10000)) {
                Poly lhs = x * x + poly_pow(lp, 4);
                Poly rhs = Poly::constant(F5, 2) * lp * lp * y;
                if (((lhs - rhs) % F5m).is_zero()) ++direct;
            }
        CHECK(j_lambda(r5, l, m, budget) == direct);
        CHECK(j_lambda(r5, l, m, budget, true) == direct);
    }

    // q even is rejected for sqrt counts
    auto F4 = Field::extension(2, 2, {1, 1, 1});
    ResidueRing r4(random_irreducible(F4, 2, 8));
    CHECK_THROWS_AS(sqrt_energy_ones(r4, 2, 1, budget), ConfigError);

    // the worked instance F = T^2+1, m = 1, lambda = 1, against a direct
    // double loop over I_2^2
    ResidueRing rw(P(F3, {1, 0, 1}));
    unsigned long long direct = 0;
    for (const auto& u : enumerate_interval(F3, 2, Poly::zero(F3), 100))
        for (const auto& v : enumerate_interval(F3, 2, Poly::zero(F3), 100)) {
            if (!((u - v - Poly::one(F3)) % rw.modulus()).is_zero()) continue;
            if (((u * u) % rw.modulus()).deg() < 1 && ((v * v) % rw.modulus()).deg() < 1) ++direct;
        }
    CHECK(q_lambda_ones(rw, rw.code_of(Poly::one(F3)), 1, budget) == direct);
}

TEST_CASE("dyadic pigeonhole from the Q table") {
    auto F3 = Field::prime(3);
    Poly F = random_irreducible(F3, 4, 13);
    ResidueRing ring(F);
    auto budget = fresh();
    for (int m : {1, 2, 3}) {
        auto table = q_lambda_table(ring, m, budget);
        auto dp = dyadic_pigeonhole(ring, table, budget);
        if (dp.d_class.empty()) continue;
        // class membership matches its dyadic window
        for (uint64_t l : dp.d_class) {
            CHECK(table[l] >= dp.delta);
            CHECK(table[l] < 2 * dp.delta);
            CHECK(l != 0);
        }
        // the chosen level dominates every other dyadic level of Q
        std::map<int, long long> sizes;
        for (uint64_t l = 1; l < ring.size(); ++l) {
            if (table[l] <= 0) continue;
            int nu = 0;
            while ((1ll << (nu + 1)) <= table[l]) ++nu;
            sizes[nu] += 1;
        }
        double best = (double)dp.d_class.size() * std::pow((double)dp.delta, 4);
        for (const auto& [nu, cnt] : sizes) {
            double score = (double)cnt * std::pow(2.0, 4.0 * nu);
            CHECK(best >= score);
        }
        // F-class members live in the stated window of (D * D)
        std::vector<long long> conv(ring.size(), 0);
        for (uint64_t a : dp.d_class)
            for (uint64_t b : dp.d_class) conv[ring.sub(a, b)] += 1;
        for (uint64_t l : dp.f_class) {
            CHECK(conv[l] >= dp.k / 2);
            CHECK(conv[l] < dp.k);
        }
    }
}

TEST_CASE("vinogradov counts") {
    auto F3 = Field::prime(3);
    std::vector<Poly> S;
    for (const auto& x : enumerate_interval(F3, 1, Poly::zero(F3), 100)) S.push_back(x);
    auto budget = fresh();
    CHECK(vinogradov_count({Poly::zero(F3)}, 1, 1, S, budget) == 3);
    // unreachable lambda
    CHECK(vinogradov_count({Poly::monomial(F3, 1, 9)}, 1, 1, S, budget) == 0);
    // partition: sum over all achievable lambda = |S|^{2s}
    std::map<std::string, unsigned long long> hist;
    std::vector<Poly> S2;
    for (const auto& x : enumerate_interval(F3, 1, Poly::zero(F3), 100)) S2.push_back(x);
    unsigned long long total = 0;
    for (const auto& a : S2)
        for (const auto& b : S2)
            for (const auto& c : S2)
                for (const auto& d : S2) {
                    Poly l1 = a + b + c + d;
                    Poly l2 = a * a + b * b + c * c + d * d;
                    hist[l1.to_list_string() + "|" + l2.to_list_string()]++;
                    ++total;
                }
    unsigned long long sum = 0;
    std::set<std::string> seen;
    for (const auto& a : S2)
        for (const auto& b : S2)
            for (const auto& c : S2)
                for (const auto& d : S2) {
                    Poly l1 = a + b + c + d;
                    Poly l2 = a * a + b * b + c * c + d * d;
                    std::string key = l1.to_list_string() + "|" + l2.to_list_string();
                    if (seen.insert(key).second)
                        sum += vinogradov_count({l1, l2}, 2, 2, S2, budget);
                }
    CHECK(sum == total);
}

TEST_CASE("family lemma checkers on the inverse-energy family") {
    // the Kloosterman-proof family: L_lambda = {(x, y) : lambda x = y mod F}
    auto F3 = Field::prime(3);
    int r = 4, k = 2, m = 1;
    Poly F = random_irreducible(F3, r, 21);
    ResidueRing ring(F);
    auto budget = fresh();

    // S = multiset {(x1 x2, x1 + x2)} over invertible x_i in I_m
    std::vector<Poly> adm;
    for (const auto& z : enumerate_interval(F3, m, Poly::zero(F3), 100))
        if (!z.is_zero()) adm.push_back(z);
    std::vector<PolyVec> S;
    for (const auto& x1 : adm)
        for (const auto& x2 : adm) S.push_back({x1 * x2, x1 + x2});

    ConvexBody B = ConvexBody::box_closed(F3, {(long long)m * k, (long long)m * (k - 1)});

    // Omega: lambda with at least one representation xbar_1 + xbar_2 = lambda
    WeightMap dist = inverse_sum_distribution(ring, k, m, Poly::zero(F3), budget);
    std::vector<Lattice> fam_first, fam_firstlast;
    for (const auto& [lc, cnt] : dist.w) {
        if (!cnt) continue;
        Poly lambda = ring.poly_of(lc);
        if (lambda.is_zero()) continue;
        ModularSpec spec{{lambda, -Poly::one(F3)}, F};
        Lattice L = build_modular_lattice(spec);
        auto sm = successive_minima(L, B);
        if (sm.exps[0] <= 0 && sm.exps[1] > 0) fam_first.push_back(L);
        else if (sm.exps[1] <= 0) fam_firstlast.push_back(L);
    }
    REQUIRE(!fam_first.empty());
    auto res = family_check_first(fam_first, B, S, budget);
    CHECK(res.hypotheses_ok);
    CHECK(res.holds);

    if (!fam_firstlast.empty()) {
        auto res2 = family_check_first_last(fam_firstlast, B, S, LogAbs::of(r), budget);
        CHECK(res2.hypotheses_ok);
        CHECK(res2.holds);
    }

    // single-point sanity: one lattice, S = one lattice point in B
    std::vector<PolyVec> S1 = {{Poly::one(F3), Poly::zero(F3)}};
    Lattice Lint = Lattice::integral(F3, 2);
    auto sm1 = successive_minima(Lint, ConvexBody::unit(F3, 2));
    auto res3 = family_check_last(Lint, ConvexBody::unit(F3, 2), S1, 1, BetaParam::Inf, budget);
    CHECK(res3.holds);
    CHECK(res3.lhs == "1");
}

TEST_CASE("family last-lemma reduces to counting for box sets") {
    auto F3 = Field::prime(3);
    Rng rng(64);
    auto budget = fresh();
    for (int it = 0; it < 10; ++it) {
        size_t d = 1 + rng.below(2);
        Lattice L(random_nonsingular_poly_matrix(F3, d, 2, rng));
        ConvexBody B(random_nonsingular_poly_matrix(F3, d, 1, rng));
        if (intersection_count(L, B) > 3000) continue;
        // S = all integral points of a small box
        std::vector<PolyVec> S;
        for (const auto& v : enumerate_ball(2, std::vector<Poly>(d, Poly::zero(F3)), 100000))
            S.push_back(v);
        auto res = family_check_last(L, B, S, 1, BetaParam::Inf, budget);
        CHECK(res.holds); // |L cap S cap B| <= 1 * |L cap B|
        auto res2 = family_check_last(L, B, S, 2, BetaParam::Two, budget);
        CHECK(res2.holds);
    }
}

TEST_CASE("small point corollary") {
    auto F3 = Field::prime(3);
    Rng rng(65);
    auto budget = fresh(1000000000ull);
    int done = 0;
    while (done < 10) {
        Lattice L(random_nonsingular_poly_matrix(F3, 2, 2, rng));
        ConvexBody B(random_nonsingular_poly_matrix(F3, 2, 1, rng));
        auto sm = successive_minima(L, B);
        if (sm.exps[0] > 0) continue;
        std::vector<PolyVec> S;
        for (const auto& v : enumerate_ball(2, {Poly::zero(F3), Poly::zero(F3)}, 100000))
            S.push_back(v);
        bool any = false;
        for (const auto& s : S) {
            RatVec rv = rat_vec_from_poly(s);
            bool zero = s[0].is_zero() && s[1].is_zero();
            if (!zero && L.contains(rv) && body_norm(B, rv) <= LogAbs::of(0)) any = true;
        }
        if (!any) continue;
        auto res = family_small_point(L, B, S, 1, BetaParam::Inf, budget);
        CHECK(res.valid);
        auto res2 = family_small_point(L, B, S, 1, BetaParam::Two, budget);
        CHECK(res2.valid);
        ++done;
    }
}

TEST_CASE("theorem RHS evaluation") {
    TheoremParams p;
    p.q = 3;
    p.r = 8;
    p.m = 2;
    p.k = 2;
    auto rep = theorem_rhs("2.3", p, 0.0);
    REQUIRE(rep.branches.size() == 2);
    CHECK(rep.branches[0].second == doctest::Approx(4.0)); // km
    CHECK(rep.branches[1].second == doctest::Approx(2.0)); // m(3k-1) - r
    CHECK_FALSE(rep.trivial_range);
    CHECK(rep.log_q_value == doctest::Approx(4.0 + std::log(1 + 1.0 / 9) / std::log(3.0)));

    // trivial range branch
    p.m = 5;
    auto rep2 = theorem_rhs("inverse_energy", p, 0.0);
    CHECK(rep2.trivial_range);

    // the 1_m specialization of the weighted energy bound has the
    // q^{7m/2 - r/2} + q^{7m/3} shape
    p.m = 3;
    p.r = 6;
    auto rep3 = theorem_rhs("2.5_1m", p, 0.0);
    CHECK(rep3.branches[0].second == doctest::Approx(3.5 * 3 - 3.0));
    CHECK(rep3.branches[1].second == doctest::Approx(7.0));

    // gates
    TheoremParams bad;
    bad.q = 3;
    bad.r = 10;
    bad.m = 9;
    bad.k = 2;
    CHECK_THROWS_AS(theorem_rhs("2.4", bad, 0.0), RangeGateFailed);
    TheoremParams c2;
    c2.q = 3; // char 3 not > 3
    c2.r = 10;
    c2.m = 2;
    CHECK_THROWS_AS(theorem_rhs("2.2", c2, 0.0), RangeGateFailed);
    c2.q = 5;
    CHECK_NOTHROW(theorem_rhs("2.2", c2, 0.0));
    CHECK_THROWS_AS(theorem_rhs("nonsense", p, 0.0), ConfigError);
}
