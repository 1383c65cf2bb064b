#include "doctest.h"

#include <algorithm>

#include "fflat/matrix.hpp"

using namespace ffl;

namespace {
Poly P(const FieldPtr& F, std::vector<uint32_t> c) { return Poly(F, std::move(c)); }

PolyMat random_nonsingular(const FieldPtr& F, size_t d, int degbound, Rng& rng) {
    for (;;) {
        PolyMat m(d, std::vector<Poly>(d, Poly::zero(F)));
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                m[i][j] = random_poly(F, 1 + (int)rng.below(degbound + 1), rng);
        if (!det_bareiss(m).is_zero()) return m;
    }
}

// naive cofactor determinant as the oracle
Poly det_cofactor(const PolyMat& m) {
    size_t n = m.size();
    const auto& F = m[0][0].field();
    if (n == 1) return m[0][0];
    Poly acc = Poly::zero(F);
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        PolyMat sub(n - 1, std::vector<Poly>(n - 1, Poly::zero(F)));
        for (size_t i = 1; i < n; ++i) {
            size_t cc = 0;
            for (size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                sub[i - 1][cc++] = m[i][k];
            }
        }
        Poly term = m[0][j] * det_cofactor(sub);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}
} // namespace

TEST_CASE("bareiss matches cofactor expansion") {
    auto F3 = Field::prime(3);
    Rng rng(21);
    for (int it = 0; it < 30; ++it) {
        size_t d = 2 + rng.below(3);
        PolyMat m(d, std::vector<Poly>(d, Poly::zero(F3)));
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) m[i][j] = random_poly(F3, 4, rng);
        CHECK(det_bareiss(m) == det_cofactor(m));
    }
}

TEST_CASE("rat inverse round trip") {
    auto F3 = Field::prime(3);
    Rng rng(22);
    for (int it = 0; it < 20; ++it) {
        size_t d = 1 + rng.below(4);
        RatMat m = rat_from_poly(random_nonsingular(F3, d, 3, rng));
        // sprinkle denominators
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                m[i][j] = m[i][j] / RatFun(random_nonzero_poly(F3, 3, rng));
        RatMat inv = rat_inverse(m);
        RatMat prod = rat_mul(m, inv);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                CHECK(prod[i][j] == (i == j ? RatFun::one(F3) : RatFun::zero(F3)));
    }
    RatMat sing = rat_from_poly({{Poly::one(F3), Poly::one(F3)},
                                 {Poly::one(F3), Poly::one(F3)}});
    CHECK_THROWS_AS(rat_inverse(sing), SingularMatrix);
}

TEST_CASE("rat_det_log") {
    auto F3 = Field::prime(3);
    RatMat m = rat_identity(F3, 3);
    CHECK(rat_det_log(m) == LogAbs::of(0));
    m[0][0] = RatFun(Poly::one(F3), P(F3, {0, 0, 1})); // 1/T^2
    CHECK(rat_det_log(m) == LogAbs::of(-2));
    m[1][1] = RatFun(P(F3, {0, 0, 0, 1})); // T^3
    CHECK(rat_det_log(m) == LogAbs::of(1));
}

TEST_CASE("column_reduce basics") {
    auto F3 = Field::prime(3);
    // already reduced: identity
    auto idr = column_reduce(poly_identity(F3, 3));
    CHECK(idr.coldeg == std::vector<int>{0, 0, 0});
    CHECK(idr.R == poly_identity(F3, 3));

    // diagonal T^a stays put
    PolyMat diag = poly_identity(F3, 2);
    diag[0][0] = P(F3, {0, 0, 1});
    diag[1][1] = P(F3, {0, 0, 0, 1});
    auto dr = column_reduce(diag);
    CHECK(dr.R == diag);

    // the worked modular matrix [[T^2+1, -T], [0, 1]]
    PolyMat m = {{P(F3, {1, 0, 1}), P(F3, {0, 2})}, {Poly::zero(F3), Poly::one(F3)}};
    auto r = column_reduce(m);
    std::vector<int> degs = r.coldeg;
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<int>{1, 1});
}

TEST_CASE("column_reduce invariants on random matrices") {
    auto F3 = Field::prime(3);
    auto F2 = Field::prime(2);
    Rng rng(23);
    for (auto& F : {F3, F2}) {
        for (int it = 0; it < 25; ++it) {
            size_t d = 2 + rng.below(3);
            PolyMat m = random_nonsingular(F, d, 4, rng);
            auto r = column_reduce(m);
            // transform is unimodular: det in F_q^*
            Poly dt = det_bareiss(r.T);
            CHECK(dt.deg() == 0);
            // R = m * T
            RatMat prod = rat_mul(rat_from_poly(m), rat_from_poly(r.T));
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j)
                    CHECK(prod[i][j] == RatFun(r.R[i][j]));
            // leading coefficient matrix nonsingular: sum of column degrees
            // equals deg det (the hallmark of a reduced basis)
            int sumdeg = 0;
            for (int cd : r.coldeg) sumdeg += cd;
            CHECK(sumdeg == det_bareiss(m).deg());
        }
    }
}
