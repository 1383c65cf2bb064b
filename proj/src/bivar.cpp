#include "fflat/bivar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ffl {

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
    const auto& F = F_ ? F_ : o.F_;
    std::vector<Poly> out(std::max(c_.size(), o.c_.size()), Poly::zero(F));
    for (size_t j = 0; j < out.size(); ++j) out[j] = coeff((int)j) + o.coeff((int)j);
    return BivarPoly(F, std::move(out));
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const {
    const auto& F = F_ ? F_ : o.F_;
    std::vector<Poly> out(std::max(c_.size(), o.c_.size()), Poly::zero(F));
    for (size_t j = 0; j < out.size(); ++j) out[j] = coeff((int)j) - o.coeff((int)j);
    return BivarPoly(F, std::move(out));
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
    const auto& F = F_ ? F_ : o.F_;
    if (is_zero() || o.is_zero()) return BivarPoly(F);
    std::vector<Poly> out(c_.size() + o.c_.size() - 1, Poly::zero(F));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            out[i + j] = out[i + j] + c_[i] * o.c_[j];
    }
    return BivarPoly(F, std::move(out));
}

BivarPoly BivarPoly::operator*(const Poly& s) const {
    std::vector<Poly> out(c_);
    for (auto& c : out) c = c * s;
    return BivarPoly(F_, std::move(out));
}

Poly BivarPoly::eval(const Poly& point) const {
    Poly acc = Poly::zero(F_);
    for (size_t j = c_.size(); j-- > 0;) acc = acc * point + c_[j];
    return acc;
}

RatFun BivarPoly::eval(const RatFun& point) const {
    RatFun acc = RatFun::zero(F_);
    for (size_t j = c_.size(); j-- > 0;) acc = acc * point + RatFun(c_[j]);
    return acc;
}

Poly BivarPoly::eval_mod(const Poly& point, const Poly& F) const {
    Poly acc = Poly::zero(F_);
    Poly pt = point % F;
    for (size_t j = c_.size(); j-- > 0;) acc = (acc * pt + c_[j]) % F;
    return acc;
}

std::string BivarPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t j = c_.size(); j-- > 0;) {
        if (c_[j].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[j].to_string() << ")";
        if (j == 1) os << "*x";
        else if (j > 1) os << "*x^" << j;
    }
    return os.str();
}

BivarPoly bivar_pow(const BivarPoly& p, uint32_t e) {
    BivarPoly acc = BivarPoly(p.field(), {Poly::one(p.field())});
    BivarPoly base = p;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

int height(const BivarPoly& p) {
    if (p.is_zero()) throw ZeroPolynomial("height of zero polynomial");
    int h = 0;
    for (const auto& c : p.coeffs()) h = std::max(h, c.deg());
    return h;
}

PolyMat sylvester(const BivarPoly& P, const BivarPoly& Q) {
    int d = P.deg_x(), e = Q.deg_x();
    if (d < 1 || e < 1) throw DegreeTooLow("sylvester needs both degrees >= 1");
    const auto& F = P.field();
    size_t n = (size_t)(d + e);
    PolyMat S(n, std::vector<Poly>(n, Poly::zero(F)));
    for (int r = 0; r < e; ++r)
        for (int j = 0; j <= d; ++j)
            S[(size_t)r][(size_t)(r + j)] = P.coeff(d - j);
    for (int r = 0; r < d; ++r)
        for (int j = 0; j <= e; ++j)
            S[(size_t)(e + r)][(size_t)(r + j)] = Q.coeff(e - j);
    return S;
}

Poly resultant(const BivarPoly& P, const BivarPoly& Q) {
    return det_bareiss(sylvester(P, Q));
}

namespace {

using RatBivar = std::vector<RatFun>; // coeff of x^j at index j

RatBivar to_rat(const BivarPoly& p) {
    RatBivar out;
    for (const auto& c : p.coeffs()) out.push_back(RatFun(c));
    return out;
}

void rb_trim(RatBivar& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

RatBivar rb_divmod(RatBivar a, const RatBivar& b, RatBivar* quot) {
    rb_trim(a);
    const RatFun& lead = b.back();
    if (quot) quot->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0,
                           RatFun::zero(lead.field()));
    while (a.size() >= b.size()) {
        RatFun c = a.back() / lead;
        size_t shift = a.size() - b.size();
        if (quot) (*quot)[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = a[shift + i] - c * b[i];
        a.pop_back();
        rb_trim(a);
    }
    return a;
}

} // namespace

BivarPoly bivar_gcd_fraction_field(const BivarPoly& P, const BivarPoly& Q) {
    const auto& F = P.field();
    RatBivar a = to_rat(P), b = to_rat(Q);
    rb_trim(a);
    rb_trim(b);
    while (!b.empty()) {
        RatBivar r = rb_divmod(a, b, nullptr);
        a = b;
        b = r;
    }
    if (a.empty()) return BivarPoly::zero(F);
    // clear denominators, take the primitive part, normalize the lc monic
    Poly l = Poly::one(F);
    for (const auto& c : a) {
        Poly g = poly_gcd(l, c.den());
        l = l * poly_div_exact(c.den(), g);
    }
    std::vector<Poly> coeffs;
    for (const auto& c : a) coeffs.push_back(c.num() * poly_div_exact(l, c.den()));
    Poly content = Poly::zero(F);
    for (const auto& c : coeffs) content = poly_gcd(content, c);
    if (content.deg() > 0)
        for (auto& c : coeffs) c = poly_div_exact(c, content);
    uint32_t u = coeffs.back().lc();
    if (u != 1) {
        uint32_t ui = F->inv(u);
        for (auto& c : coeffs) c = c * ui;
    }
    return BivarPoly(F, std::move(coeffs));
}

long long resultant_degree_bound(long long e, long long d, long long ell,
                                 long long a, long long b) {
    return ((e + a) * (d + b) - (a + 1) * (b + 1)) * ell;
}

LogAbs resultant_profile_check(const BivarPoly& P, const BivarPoly& Q,
                               long long e, long long d,
                               long long ell, long long a, long long b) {
    if (e < 2 || d < 2) throw DegreeTooLow("profile check needs e, d >= 2");
    if (P.deg_x() > e - 1 || Q.deg_x() > d - 1)
        throw ProfileViolated("declared slot count below the actual degree");
    for (int j = 0; j < (int)e; ++j)
        if (P.coeff(j).log_abs() > LogAbs::of((e - j + a) * ell))
            throw ProfileViolated("P coefficient " + std::to_string(j));
    for (int j = 0; j < (int)d; ++j)
        if (Q.coeff(j).log_abs() > LogAbs::of((d - j + b) * ell))
            throw ProfileViolated("Q coefficient " + std::to_string(j));
    // Sylvester on declared shapes (degrees e-1 and d-1, leading zeros kept)
    const auto& F = P.field();
    size_t dP = (size_t)(e - 1), dQ = (size_t)(d - 1);
    size_t n = dP + dQ;
    PolyMat S(n, std::vector<Poly>(n, Poly::zero(F)));
    for (size_t r = 0; r < dQ; ++r)
        for (size_t j = 0; j <= dP; ++j)
            S[r][r + j] = P.coeff((int)(dP - j));
    for (size_t r = 0; r < dP; ++r)
        for (size_t j = 0; j <= dQ; ++j)
            S[dQ + r][r + j] = Q.coeff((int)(dQ - j));
    Poly res = det_bareiss(S);
    long long bound = resultant_degree_bound(e, d, ell, a, b);
    if (!(res.log_abs() <= LogAbs::of(bound)))
        throw Error("resultant exceeds the profile bound");
    return res.log_abs();
}

bool circulant_permutation_check(int m, int n, long long sigma, long long theta) {
    if (m < 2 || n < 2) throw ConfigError("circulant check needs m, n >= 2");
    int N = m + n - 2;
    if (N > 9) throw CapExceeded("circulant check is exhaustive up to m+n-2 = 9");
    // X(m, n) = [A(m,n,sigma); A(n,m,theta)] with marked bands of widths m, n
    std::vector<std::vector<long long>> X((size_t)N, std::vector<long long>((size_t)N, 0));
    std::vector<std::vector<bool>> marked((size_t)N, std::vector<bool>((size_t)N, false));
    for (int i = 0; i < n - 1; ++i)
        for (int j = i; j <= i + m - 1 && j < N; ++j) {
            X[(size_t)i][(size_t)j] = sigma + (j - i);
            marked[(size_t)i][(size_t)j] = true;
        }
    for (int i = 0; i < m - 1; ++i)
        for (int j = i; j <= i + n - 1 && j < N; ++j) {
            X[(size_t)(n - 1 + i)][(size_t)j] = theta + (j - i);
            marked[(size_t)(n - 1 + i)][(size_t)j] = true;
        }
    long long target = (long long)(m - 1 + sigma) * (n - 1 + theta) - sigma * theta;
    std::vector<int> perm((size_t)N);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool all_marked = true;
        long long sum = 0;
        for (int j = 0; j < N && all_marked; ++j) {
            if (!marked[(size_t)j][(size_t)perm[(size_t)j]]) all_marked = false;
            else sum += X[(size_t)j][(size_t)perm[(size_t)j]];
        }
        if (all_marked && sum != target) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

BivarPoly kloosterman_poly(const std::vector<Poly>& xs) {
    if (xs.empty() || xs.size() % 2 != 0) throw ConfigError("kloosterman_poly needs 2k points");
    size_t k = xs.size() / 2;
    const auto& F = xs[0].field();
    BivarPoly acc = BivarPoly::zero(F);
    for (size_t s = 0; s < 2 * k; ++s) {
        BivarPoly prod(F, {Poly::one(F)});
        for (size_t j = 0; j < 2 * k; ++j) {
            if (j == s) continue;
            prod = prod * BivarPoly(F, {xs[j], Poly::one(F)});
        }
        acc = (s < k) ? acc + prod : acc - prod;
    }
    return acc;
}

bool bivar_divides(const BivarPoly& d, const BivarPoly& p) {
    return bivar_div_exact(p, d).has_value();
}

std::optional<BivarPoly> bivar_div_exact(const BivarPoly& p, const BivarPoly& d) {
    if (d.is_zero()) return std::nullopt;
    const auto& F = p.field() ? p.field() : d.field();
    if (p.is_zero()) return BivarPoly::zero(F);
    if (d.deg_x() > p.deg_x()) {
        // constant-in-x divisor: must divide every coefficient
        if (d.deg_x() > 0) return std::nullopt;
    }
    if (d.deg_x() == 0) {
        std::vector<Poly> out;
        for (const auto& c : p.coeffs()) {
            auto [q, r] = poly_divmod(c, d.coeff(0));
            if (!r.is_zero()) return std::nullopt;
            out.push_back(q);
        }
        return BivarPoly(F, std::move(out));
    }
    RatBivar quot;
    RatBivar rem = rb_divmod(to_rat(p), to_rat(d), &quot);
    if (!rem.empty()) return std::nullopt;
    std::vector<Poly> out;
    for (const auto& c : quot) {
        if (!c.is_poly()) return std::nullopt;
        out.push_back(c.num());
    }
    return BivarPoly(F, std::move(out));
}

namespace {

// linear factors den*x - s*num from the rational root theorem
std::vector<BivarPoly> linear_factor_candidates(const BivarPoly& P, uint64_t cap) {
    const auto& F = P.field();
    std::vector<BivarPoly> out;
    Poly c0 = P.coeff(0);
    Poly lead = P.lc();
    auto nums = divisors(c0, cap);
    auto dens = divisors(lead, cap);
    for (const auto& den : dens)
        for (const auto& num : nums) {
            if (poly_gcd(num, den).deg() != 0) continue;
            for (uint32_t s = 1; s < F->q(); ++s)
                out.push_back(BivarPoly(F, {num * F->neg(s), den}));
        }
    return out;
}

BivarPoly primitive_and_unit(BivarPoly P, Poly* content_out, uint32_t* unit_out) {
    const auto& F = P.field();
    Poly content = Poly::zero(F);
    for (const auto& c : P.coeffs()) content = poly_gcd(content, c);
    std::vector<Poly> coeffs = P.coeffs();
    if (content.deg() > 0)
        for (auto& c : coeffs) c = poly_div_exact(c, content);
    uint32_t u = 1;
    if (!coeffs.empty() && coeffs.back().lc() != 1) {
        u = coeffs.back().lc();
        uint32_t ui = F->inv(u);
        for (auto& c : coeffs) c = c * ui;
    }
    *content_out = content.is_zero() ? Poly::one(F) : content;
    *unit_out = u;
    return BivarPoly(F, std::move(coeffs));
}

// 2+2 split of a quartic without rational roots, via divisor pairs of the
// outer coefficients plus Cramer for the inner ones
std::optional<std::pair<BivarPoly, BivarPoly>> split_quartic(const BivarPoly& G, uint64_t cap) {
    const auto& F = G.field();
    Poly c4 = G.coeff(4), c3 = G.coeff(3), c2 = G.coeff(2), c1 = G.coeff(1), c0 = G.coeff(0);
    auto a2s = divisors(c4, cap);
    auto a0s = divisors(c0, cap);
    for (const auto& A2 : a2s) {
        Poly B2 = poly_div_exact(c4, A2);
        for (const auto& a0m : a0s)
            for (uint32_t s = 1; s < F->q(); ++s) {
                Poly A0 = a0m * s;
                Poly B0 = poly_div_exact(c0 * F->inv(s), a0m);
                // B2 A1 + A2 B1 = c3 ; B0 A1 + A0 B1 = c1
                Poly D = B2 * A0 - A2 * B0;
                if (D.is_zero()) continue;
                Poly n1 = c3 * A0 - A2 * c1;
                Poly n2 = B2 * c1 - c3 * B0;
                auto [A1, r1] = poly_divmod(n1, D);
                auto [B1, r2] = poly_divmod(n2, D);
                if (!r1.is_zero() || !r2.is_zero()) continue;
                if (A2 * B0 + A1 * B1 + A0 * B2 != c2) continue;
                BivarPoly f1(F, {A0, A1, A2});
                BivarPoly f2(F, {B0, B1, B2});
                if (f1 * f2 == G) return std::make_pair(f1, f2);
            }
    }
    return std::nullopt;
}

} // namespace

BivarPoly BivarFactorization::product() const {
    const auto& F = content.field();
    BivarPoly acc(F, {content * unit});
    for (const auto& [f, m] : factors)
        for (int i = 0; i < m; ++i) acc = acc * f;
    return acc;
}

BivarFactorization factor_bivar(const BivarPoly& P, uint64_t cap) {
    if (P.is_zero()) throw ZeroPolynomial("factor_bivar(0)");
    const auto& F = P.field();
    BivarFactorization out;
    BivarPoly cur = primitive_and_unit(P, &out.content, &out.unit);

    auto push = [&](const BivarPoly& f) {
        for (auto& [g, m] : out.factors)
            if (g == f) { ++m; return; }
        out.factors.push_back({f, 1});
    };

    // powers of x
    while (!cur.is_zero() && cur.coeff(0).is_zero() && cur.deg_x() >= 1) {
        std::vector<Poly> shifted(cur.coeffs().begin() + 1, cur.coeffs().end());
        push(BivarPoly::x(F));
        cur = BivarPoly(F, std::move(shifted));
    }
    // linear factors by rational roots, with multiplicity
    bool progress = true;
    while (cur.deg_x() >= 1 && progress) {
        progress = false;
        for (const auto& cand : linear_factor_candidates(cur, cap)) {
            for (;;) {
                auto q = bivar_div_exact(cur, cand);
                if (!q) break;
                Poly cont; uint32_t u;
                BivarPoly candp = primitive_and_unit(cand, &cont, &u);
                // candidate is primitive by construction; fold units anyway
                out.unit = F->mul(out.unit, u);
                out.content = out.content * cont;
                push(candp);
                cur = *q;
                progress = true;
            }
            if (cur.deg_x() < 1) break;
        }
    }
    if (cur.deg_x() >= 4) {
        if (cur.deg_x() > 4)
            throw CapExceeded("factor_bivar: irreducibility test beyond quartics without roots");
        // primitive quartic with monic lc and no rational roots: any split is
        // 2+2 into primitive monic-lc quadratics
        auto split = split_quartic(cur, cap);
        if (split) {
            push(split->first);
            push(split->second);
            cur = BivarPoly(F, {Poly::one(F)});
        }
    }
    if (cur.deg_x() >= 1) push(cur); // degree 2 or 3 with no roots, or unsplit quartic
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) {
                  if (a.first.deg_x() != b.first.deg_x()) return a.first.deg_x() < b.first.deg_x();
                  return a.first.to_string() < b.first.to_string();
              });
    if (out.product() != P) throw Error("factor_bivar: product check failed");
    return out;
}

bool factorisation_bound_check(const BivarPoly& P, long long ell, long long a, uint64_t cap) {
    int d = P.deg_x();
    if (d < 1) throw DegreeTooLow("factorisation_bound_check");
    for (int j = 0; j <= d; ++j)
        if (P.coeff(j).log_abs() > LogAbs::of(((long long)d - j + a) * ell))
            throw ProfileViolated("input coefficient " + std::to_string(j));
    auto fac = factor_bivar(P, cap);
    auto content_divs = divisors(fac.content, cap);
    // enumerate all divisors P1 = (content divisor) * (subset of factors)
    std::vector<BivarPoly> divs{BivarPoly(P.field(), {Poly::one(P.field())})};
    for (const auto& [f, m] : fac.factors) {
        std::vector<BivarPoly> next;
        BivarPoly fk(P.field(), {Poly::one(P.field())});
        for (int k = 0; k <= m; ++k) {
            for (const auto& g : divs) next.push_back(g * fk);
            if (k < m) fk = fk * f;
        }
        if (next.size() > 4096) throw CapExceeded("factorisation_bound_check divisors");
        divs = std::move(next);
    }
    for (const auto& cdiv : content_divs)
        for (const auto& g : divs) {
            BivarPoly P1 = g * cdiv;
            if (P1.is_zero() || P1.deg_x() < 0) continue;
            int e = P1.deg_x();
            for (int j = 0; j <= e; ++j)
                if (P1.coeff(j).log_abs() > LogAbs::of(((long long)e - j + a) * ell))
                    return false;
        }
    return true;
}

} // namespace ffl
