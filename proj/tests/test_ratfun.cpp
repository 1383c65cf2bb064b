#include "doctest.h"

#include "fflat/ratfun.hpp"

using namespace ffl;

namespace {
Poly P(const FieldPtr& F, std::vector<uint32_t> c) { return Poly(F, std::move(c)); }

// long-division oracle: expansion coefficients of num/den from the top index
// down to -upto_neg, peeling one leading term per step on num*T^k
std::vector<uint32_t> expand_oracle(const RatFun& x, int upto_neg) {
    const auto& F = x.field();
    std::vector<uint32_t> out;
    if (x.is_zero()) return std::vector<uint32_t>((size_t)upto_neg + 1, 0);
    Poly num = x.num().shifted(upto_neg); // now expanding num/den down to index 0
    const Poly& den = x.den();
    int top = num.deg() - den.deg();
    for (int i = top; i >= 0; --i) {
        uint32_t c = 0;
        if (!num.is_zero() && num.deg() - den.deg() == i) {
            c = F->div(num.lc(), den.lc());
            num = num - Poly::monomial(F, c, i) * den;
        }
        out.push_back(c);
    }
    return out; // out[k] = coefficient at index top-upto_neg-k of x
}
} // namespace

TEST_CASE("ratfun normalization and arithmetic") {
    auto F3 = Field::prime(3);
    RatFun x(P(F3, {0, 0, 2}), P(F3, {0, 2})); // 2T^2 / 2T = T
    CHECK(x.num() == Poly::t(F3));
    CHECK(x.den() == Poly::one(F3));
    RatFun y(P(F3, {1}), P(F3, {0, 2})); // 1/(2T) -> 2/T after monic den
    CHECK(y.den() == Poly::t(F3));
    CHECK(y.num() == Poly::constant(F3, 2));
    CHECK((y * RatFun(Poly::t(F3))) == RatFun(Poly::constant(F3, 2)));
    CHECK_THROWS_AS(RatFun(Poly::one(F3), Poly::zero(F3)), DivisionByZero);
    CHECK((x - x).is_zero());
    CHECK((x / x) == RatFun::one(F3));
}

TEST_CASE("ratfun_abs") {
    auto F3 = Field::prime(3);
    RatFun a(P(F3, {0, 0, 1}), P(F3, {1, 0, 0, 1})); // T^2/(T^3+1)
    CHECK(a.log_abs() == LogAbs::of(-1));
    CHECK(RatFun::zero(F3).log_abs().is_zero());
    RatFun b(P(F3, {1, 1}), P(F3, {2, 1}));
    CHECK(b.log_abs() == LogAbs::of(0));
}

TEST_CASE("laurent expansion") {
    auto F3 = Field::prime(3);
    RatFun invT(Poly::one(F3), Poly::t(F3));
    auto e = laurent_expand(invT, 4);
    CHECK(e.coeff(-1) == 1);
    CHECK(e.coeff(-2) == 0);
    CHECK(e.coeff(0) == 0);

    RatFun tp1(P(F3, {1, 1}));
    auto e2 = laurent_expand(tp1, 2);
    CHECK(e2.coeff(1) == 1);
    CHECK(e2.coeff(0) == 1);
    CHECK(e2.coeff(-1) == 0);

    // 1/(T-1) = 1/T + 1/T^2 + ... (geometric series over F_3)
    RatFun g(Poly::one(F3), P(F3, {2, 1}));
    auto e3 = laurent_expand(g, 3);
    CHECK(e3.coeff(-1) == 1);
    CHECK(e3.coeff(-2) == 1);
    CHECK(e3.coeff(-3) == 1);
    // oracle: (T-1) * (T^{-1} + T^{-2} + T^{-3}) = 1 - T^{-3}
    // so the truncation error has absolute value q^{-3}

    // truncation stability: N' > N agrees on shared indices
    auto eN = laurent_expand(g, 2);
    auto eM = laurent_expand(g, 6);
    for (int i = 1; i >= -2; --i) CHECK(eN.coeff(i) == eM.coeff(i));

    // long-division oracle agreement on random fractions
    Rng rng(9);
    for (int it = 0; it < 40; ++it) {
        RatFun x(random_poly(F3, 5, rng), random_nonzero_poly(F3, 5, rng));
        if (x.is_zero()) continue;
        int N = 5;
        auto got = laurent_expand(x, N);
        auto want = expand_oracle(x, N);
        int top = x.num().deg() - x.den().deg();
        for (int k = 0; k < (int)want.size(); ++k)
            CHECK(got.coeff(top - k) == want[(size_t)k]);
    }
}

TEST_CASE("residue coefficient") {
    auto F3 = Field::prime(3);
    CHECK(residue_coeff(RatFun(Poly::one(F3), Poly::t(F3))) == 1);
    CHECK(residue_coeff(RatFun(Poly::t(F3))) == 0);
    // (T^2+1)/T^3 = 1/T + 1/T^3, so the T^{-1} coefficient is 1
    RatFun x(P(F3, {1, 0, 1}), P(F3, {0, 0, 0, 1}));
    auto e = laurent_expand(x, 4);
    CHECK(e.coeff(-1) == 1);
    CHECK(e.coeff(-2) == 0);
    CHECK(e.coeff(-3) == 1);
    CHECK(residue_coeff(x) == e.coeff(-1));
}

TEST_CASE("additive character") {
    auto F3 = Field::prime(3);
    CHECK(char_e(RatFun(Poly::one(F3), Poly::t(F3))).t == 1);
    CHECK(char_e(RatFun(P(F3, {2, 1, 2}))).t == 0); // polynomials have no T^{-1} term
    auto F4 = Field::extension(2, 2, {1, 1, 1});
    RatFun uoT(Poly::constant(F4, 2), Poly::t(F4));
    CHECK(char_e(uoT).t == F4->trace(2));
    CHECK(char_e(uoT).t == 1);

    // e(x+y) = e(x) e(y): exponents add mod p
    Rng rng(3);
    for (int it = 0; it < 100; ++it) {
        RatFun x(random_poly(F3, 4, rng), random_nonzero_poly(F3, 4, rng));
        RatFun y(random_poly(F3, 4, rng), random_nonzero_poly(F3, 4, rng));
        CHECK(char_e(x + y).t == (char_e(x).t + char_e(y).t) % 3);
    }
}

TEST_CASE("haar character integral") {
    auto F3 = Field::prime(3);
    CHECK(haar_character_integral(RatFun::zero(F3)) == 1);
    CHECK(haar_character_integral(RatFun(Poly::t(F3))) == 0);
    RatFun small(Poly::one(F3), P(F3, {0, 0, 1}));
    CHECK(haar_character_integral(small) == 1);

    // orthogonality: 1 iff |x| < 1, over several fields including q = 4
    for (auto Fq : {Field::prime(3), Field::extension(2, 2, {1, 1, 1}), Field::prime(5)}) {
        Rng rng(17 + Fq->q());
        int checked = 0;
        while (checked < 70) {
            RatFun x(random_poly(Fq, 7, rng), random_nonzero_poly(Fq, 7, rng));
            if (!x.is_zero() && (x.log_abs().e > 6 || x.log_abs().e < -6)) continue;
            int v = haar_character_integral(x);
            bool lt1 = x.log_abs() < LogAbs::of(0);
            CHECK(v == (lt1 ? 1 : 0));
            ++checked;
        }
    }
}
