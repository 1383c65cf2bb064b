#include "doctest.h"

#include <set>

#include "fflat/poly.hpp"

using namespace ffl;

namespace {
Poly P(const FieldPtr& F, std::vector<uint32_t> c) { return Poly(F, std::move(c)); }
}

TEST_CASE("divmod") {
    auto F3 = Field::prime(3);
    auto [q, r] = poly_divmod(P(F3, {1, 0, 1}), Poly::t(F3)); // (T^2+1) / T
    CHECK(q == Poly::t(F3));
    CHECK(r == Poly::one(F3));

    Poly a = P(F3, {2, 1, 0, 2});
    auto [q2, r2] = poly_divmod(a, a);
    CHECK(q2 == Poly::one(F3));
    CHECK(r2.is_zero());

    auto F2 = Field::prime(2);
    Poly num = P(F2, {1, 1, 0, 1}); // T^3+T+1
    Poly den = P(F2, {1, 1});       // T+1
    auto [q3, r3] = poly_divmod(num, den);
    CHECK(q3 == P(F2, {0, 1, 1})); // T^2+T
    CHECK(r3 == Poly::one(F2));
    CHECK(q3 * den + r3 == num); // re-multiplication oracle

    CHECK_THROWS_AS(poly_divmod(num, Poly::zero(F2)), DivisionByZero);
}

TEST_CASE("xgcd") {
    auto F3 = Field::prime(3);
    Poly F = P(F3, {1, 0, 1}); // T^2+1 irreducible over F_3
    auto e = poly_xgcd(F, Poly::t(F3));
    CHECK(e.g == Poly::one(F3));
    CHECK(e.u * F + e.v * Poly::t(F3) == e.g);

    Poly a = P(F3, {0, 2, 1});
    auto e2 = poly_xgcd(a, Poly::zero(F3));
    CHECK(e2.g == a.monic());
    CHECK(e2.u * a == e2.g);

    auto F2 = Field::prime(2);
    auto e3 = poly_xgcd(P(F2, {0, 1, 1}), Poly::t(F2)); // gcd(T^2+T, T) = T
    CHECK(e3.g == Poly::t(F2));
}

TEST_CASE("mod_inverse") {
    auto F3 = Field::prime(3);
    Poly F = P(F3, {1, 0, 1});
    Poly ti = mod_inverse(Poly::t(F3), F);
    CHECK(ti == P(F3, {0, 2})); // 2T, since T*2T = 2T^2 = -2 = 1 mod F
    CHECK(mod_inverse(Poly::one(F3), F) == Poly::one(F3));
    Poly x = P(F3, {1, 1});
    Poly xi = mod_inverse(x, F);
    CHECK(poly_mulmod(x, xi, F) == Poly::one(F3));
    CHECK(xi == P(F3, {2, 1})); // xgcd oracle: (T+1)(T+2) = T^2+2 = 1 mod F
    CHECK_THROWS_AS(mod_inverse(Poly::zero(F3), F), NotInvertible);

    // round trip on every invertible residue
    for (uint64_t code = 1; code < 9; ++code) {
        Poly z(F3, {(uint32_t)(code % 3), (uint32_t)(code / 3)});
        Poly g = poly_gcd(z, F);
        if (g.deg() != 0) continue;
        CHECK(poly_mulmod(z, mod_inverse(z, F), F) == Poly::one(F3));
    }
}

TEST_CASE("deg_f") {
    auto F3 = Field::prime(3);
    Poly F = P(F3, {1, 0, 1});
    CHECK(deg_f(P(F3, {0, 0, 1}), F) == LogAbs::of(0));  // T^2 = 2 mod F
    CHECK(deg_f(Poly::zero(F3), F).is_zero());
    // oracle: T^3 mod F by divmod
    Poly t3 = P(F3, {0, 0, 0, 1});
    CHECK((t3 % F) == P(F3, {0, 2}));
    CHECK(deg_f(t3, F) == LogAbs::of(1));
}

TEST_CASE("irreducibility") {
    auto F3 = Field::prime(3);
    CHECK(is_irreducible(P(F3, {1, 0, 1})));
    CHECK_FALSE(is_irreducible(P(F3, {0, 0, 1})));
    auto F2 = Field::prime(2);
    Poly f = P(F2, {1, 1, 0, 1});
    // oracle: no roots and no monic quadratic divisors
    CHECK(f.eval(0) != 0);
    CHECK(f.eval(1) != 0);
    bool has_quad = false;
    for (uint32_t c0 = 0; c0 < 2; ++c0)
        for (uint32_t c1 = 0; c1 < 2; ++c1)
            if (poly_divides(P(F2, {c0, c1, 1}), f)) has_quad = true;
    CHECK_FALSE(has_quad);
    CHECK(is_irreducible(f));

    // degree-1 always irreducible
    CHECK(is_irreducible(P(F3, {2, 1})));
}

TEST_CASE("random_irreducible postconditions") {
    auto F3 = Field::prime(3);
    for (uint64_t seed : {1ull, 2ull, 99ull}) {
        Poly f = random_irreducible(F3, 2, seed);
        CHECK(f.deg() == 2);
        CHECK(f.is_monic());
        CHECK(is_irreducible(f));
        CHECK(random_irreducible(F3, 2, seed) == f); // deterministic
    }
    Poly g = random_irreducible(F3, 9, 5);
    CHECK(g.deg() == 9);
    CHECK(is_irreducible(g));
}

TEST_CASE("factorize") {
    auto F3 = Field::prime(3);
    auto f1 = factorize(P(F3, {0, 0, 1})); // T^2
    REQUIRE(f1.factors.size() == 1);
    CHECK(f1.factors[0].first == Poly::t(F3));
    CHECK(f1.factors[0].second == 2);
    CHECK(f1.unit == 1);

    auto f2 = factorize(P(F3, {1, 0, 1}));
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0].second == 1);

    auto F2 = Field::prime(2);
    Poly x = P(F2, {0, 1, 0, 1}); // T^3+T = T(T+1)^2 over F_2
    // oracle: expand T*(T+1)^2
    Poly t = Poly::t(F2), t1 = P(F2, {1, 1});
    CHECK(t * t1 * t1 == x);
    auto f3 = factorize(x);
    REQUIRE(f3.factors.size() == 2);
    CHECK(f3.factors[0].first == t);
    CHECK(f3.factors[0].second == 1);
    CHECK(f3.factors[1].first == t1);
    CHECK(f3.factors[1].second == 2);

    CHECK_THROWS_AS(factorize(Poly::zero(F2)), DivisionByZero);
}

TEST_CASE("factorize round trip on random inputs") {
    for (uint32_t q : {2u, 3u, 5u}) {
        auto F = Field::prime(q);
        Rng rng(1000 + q);
        for (int it = 0; it < 60; ++it) {
            Poly x = random_nonzero_poly(F, 13, rng);
            CHECK(factorize(x).product(F) == x);
        }
    }
}

TEST_CASE("divisors") {
    auto F3 = Field::prime(3);
    CHECK(divisor_count(P(F3, {0, 0, 1})) == 3);
    CHECK(divisor_count(Poly::one(F3)) == 1);
    auto F2 = Field::prime(2);
    Poly x = P(F2, {0, 1, 0, 1});
    CHECK(divisor_count(x) == 6); // (1+1)(2+1) from T (T+1)^2
    auto ds = divisors(x);
    CHECK(ds.size() == 6);
    for (const auto& d : ds) CHECK(poly_divides(d, x));
    std::set<std::string> uniq;
    for (const auto& d : ds) uniq.insert(d.to_list_string());
    CHECK(uniq.size() == 6);
}

TEST_CASE("enumerate_ball") {
    auto F3 = Field::prime(3);
    auto pts = enumerate_ball(1, {Poly::zero(F3)});
    REQUIRE(pts.size() == 3);
    CHECK(pts[0][0].is_zero());
    CHECK(pts[2][0] == Poly::constant(F3, 2));

    auto shifted = enumerate_ball(1, {Poly::t(F3)});
    REQUIRE(shifted.size() == 3);
    for (const auto& v : shifted) CHECK((v[0] - Poly::t(F3)).deg() < 1);

    auto F2 = Field::prime(2);
    auto pts2 = enumerate_ball(1, {Poly::zero(F2), Poly::zero(F2)});
    CHECK(pts2.size() == 4);
    for (const auto& v : pts2)
        for (const auto& c : v) CHECK(c.deg() <= 0);

    // translation property: ball(m, s) = s + ball(m, 0) as sets
    auto base = enumerate_ball(2, {Poly::zero(F3)});
    auto moved = enumerate_ball(2, {P(F3, {0, 0, 1})});
    std::set<std::string> lhs, rhs;
    for (const auto& v : moved) lhs.insert(v[0].to_list_string());
    for (const auto& v : base) rhs.insert((v[0] + P(F3, {0, 0, 1})).to_list_string());
    CHECK(lhs == rhs);

    CHECK_THROWS_AS(enumerate_ball(30, {Poly::zero(F3)}), CapExceeded);
}

TEST_CASE("log_abs ultrametric") {
    auto F5 = Field::prime(5);
    Rng rng(77);
    for (int it = 0; it < 200; ++it) {
        Poly a = random_poly(F5, 7, rng);
        Poly b = random_poly(F5, 7, rng);
        CHECK((a * b).log_abs() == a.log_abs() * b.log_abs());
        LogAbs s = (a + b).log_abs();
        CHECK(s <= LogAbs::max(a.log_abs(), b.log_abs()));
        if (a.log_abs() != b.log_abs())
            CHECK(s == LogAbs::max(a.log_abs(), b.log_abs()));
    }
}

TEST_CASE("poly parsing round trip") {
    auto F3 = Field::prime(3);
    CHECK(parse_poly(F3, "2*T^2+1") == P(F3, {1, 0, 2}));
    CHECK(parse_poly(F3, "[1,0,2]") == P(F3, {1, 0, 2}));
    CHECK(parse_poly(F3, "T") == Poly::t(F3));
    CHECK(parse_poly(F3, "0").is_zero());
    CHECK(parse_poly(F3, "T^2-1") == P(F3, {2, 0, 1}));
    Rng rng(5);
    for (int it = 0; it < 50; ++it) {
        Poly x = random_poly(F3, 6, rng);
        CHECK(parse_poly(F3, x.to_string()) == x);
        CHECK(parse_poly(F3, x.to_list_string()) == x);
    }
}
