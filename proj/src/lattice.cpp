#include "fflat/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ffl {

Lattice::Lattice(RatMat A) : A_(std::move(A)) {
    if (A_.empty() || A_.size() != A_[0].size()) throw ConfigError("lattice basis must be square");
    Ainv_ = rat_inverse(A_); // throws SingularMatrix when det = 0
}

Lattice Lattice::integral(const FieldPtr& F, size_t d) {
    return Lattice(rat_identity(F, d));
}

bool Lattice::contains(const RatVec& x) const {
    RatVec a = rat_matvec(Ainv_, x);
    for (const auto& c : a)
        if (!c.is_poly()) return false;
    return true;
}

ConvexBody::ConvexBody(RatMat U) : U_(std::move(U)) {
    if (U_.empty() || U_.size() != U_[0].size()) throw ConfigError("body shape must be square");
    Uinv_ = rat_inverse(U_);
}

ConvexBody ConvexBody::unit(const FieldPtr& F, size_t d) {
    return ConvexBody(rat_identity(F, d));
}

ConvexBody ConvexBody::box_closed(const FieldPtr& F, const std::vector<long long>& exps) {
    size_t d = exps.size();
    RatMat U = rat_identity(F, d);
    for (size_t i = 0; i < d; ++i) {
        long long e = exps[i];
        if (e >= 0)
            U[i][i] = RatFun(Poly::monomial(F, 1, (int)e));
        else
            U[i][i] = RatFun(Poly::one(F), Poly::monomial(F, 1, (int)(-e)));
    }
    return ConvexBody(std::move(U));
}

ConvexBody ConvexBody::box_strict(const FieldPtr& F, const std::vector<long long>& exps) {
    std::vector<long long> closed(exps);
    for (auto& e : closed) e -= 1;
    return box_closed(F, closed);
}

LogAbs det_log(const Lattice& L) { return rat_det_log(L.basis()); }
LogAbs vol_log(const ConvexBody& B) { return rat_det_log(B.shape()); }

LogAbs body_norm(const ConvexBody& B, const RatVec& x) {
    RatVec y = rat_matvec(B.shape_inv(), x);
    LogAbs n = LogAbs::neg_inf();
    for (const auto& c : y) n = LogAbs::max(n, c.log_abs());
    return n;
}

SuccessiveMinima successive_minima(const Lattice& L, const ConvexBody& B) {
    const auto& F = L.field();
    size_t d = L.dim();
    if (B.dim() != d) throw ConfigError("dimension mismatch");
    // M = U^{-1} A over F_q(T); clear denominators by the monic lcm c
    RatMat M = rat_mul(B.shape_inv(), L.basis());
    Poly c = Poly::one(F);
    for (const auto& row : M)
        for (const auto& e : row) {
            Poly g = poly_gcd(c, e.den());
            c = c * poly_div_exact(e.den(), g);
        }
    PolyMat P(d, std::vector<Poly>(d, Poly::zero(F)));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            P[i][j] = M[i][j].num() * poly_div_exact(c, M[i][j].den());
    auto red = column_reduce(P);

    std::vector<size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return red.coldeg[a] < red.coldeg[b]; });

    SuccessiveMinima sm;
    RatMat A_T = rat_mul(L.basis(), rat_from_poly(red.T));
    for (size_t k = 0; k < d; ++k) {
        size_t j = order[k];
        sm.exps.push_back(red.coldeg[j] - c.deg());
        RatVec v(d);
        for (size_t i = 0; i < d; ++i) v[i] = A_T[i][j];
        sm.vecs.push_back(std::move(v));
    }
    return sm;
}

unsigned long long intersection_count(const SuccessiveMinima& sm, uint64_t q) {
    unsigned __int128 acc = 1;
    for (long long e : sm.exps) {
        if (e >= 1) continue; // ceil(q/sigma) = 1
        long long k = 1 - e;  // factor q^{1-e}
        for (long long i = 0; i < k; ++i) {
            acc *= q;
            if (acc > (unsigned __int128)1 << 62) throw Overflow("intersection_count");
        }
    }
    return (unsigned long long)acc;
}

unsigned long long intersection_count(const Lattice& L, const ConvexBody& B) {
    return intersection_count(successive_minima(L, B), L.field()->q());
}

std::string ratvec_to_string(const RatVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i].to_string();
    }
    os << ")";
    return os.str();
}

namespace {

// minima-span enumeration: { sum a_i vecs[i] : deg a_i <= -e_i }
std::vector<RatVec> enumerate_by_minima(const Lattice& L, const ConvexBody& B,
                                        const SuccessiveMinima& sm, uint64_t cap) {
    const auto& F = L.field();
    size_t d = L.dim();
    uint64_t q = F->q();
    unsigned __int128 total = 1;
    std::vector<int> width(d, 0); // number of free coefficients of a_i
    for (size_t i = 0; i < d; ++i) {
        long long e = sm.exps[i];
        width[i] = e <= 0 ? (int)(1 - e) : 0;
        for (int k = 0; k < width[i]; ++k) {
            total *= q;
            if (total > cap) throw CapExceeded("enumerate_points (minima span)");
        }
    }
    std::vector<std::vector<Poly>> coeff_choices(d);
    for (size_t i = 0; i < d; ++i)
        coeff_choices[i] = enumerate_interval(F, width[i], Poly::zero(F), cap);
    std::vector<RatVec> out;
    std::vector<size_t> idx(d, 0);
    for (;;) {
        RatVec x(d, RatFun::zero(F));
        for (size_t i = 0; i < d; ++i) {
            if (coeff_choices[i][idx[i]].is_zero()) continue;
            RatFun a(coeff_choices[i][idx[i]]);
            for (size_t r = 0; r < d; ++r) x[r] = x[r] + a * sm.vecs[i][r];
        }
        if (!(body_norm(B, x) <= LogAbs::of(0)))
            throw Error("enumerate_points: minima-span point escaped the body");
        out.push_back(std::move(x));
        size_t k = 0;
        while (k < d && ++idx[k] == coeff_choices[k].size()) idx[k++] = 0;
        if (k == d) break;
    }
    return out;
}

// raw-box enumeration: coefficient bounds from A^{-1} row sizes and the body
std::vector<RatVec> enumerate_by_box(const Lattice& L, const ConvexBody& B, uint64_t cap) {
    const auto& F = L.field();
    size_t d = L.dim();
    // |x_j| <= max_k |U_{jk}| for x in B
    std::vector<LogAbs> xbound(d, LogAbs::neg_inf());
    for (size_t j = 0; j < d; ++j)
        for (size_t k = 0; k < d; ++k)
            xbound[j] = LogAbs::max(xbound[j], B.shape()[j][k].log_abs());
    // |a_i| <= max_j |A^{-1}_{ij}| |x_j|
    std::vector<int> width(d, 0);
    unsigned __int128 total = 1;
    for (size_t i = 0; i < d; ++i) {
        LogAbs bound = LogAbs::neg_inf();
        for (size_t j = 0; j < d; ++j)
            bound = LogAbs::max(bound, L.basis_inv()[i][j].log_abs() * xbound[j]);
        width[i] = bound.is_zero() ? 0 : (int)std::max<long long>(0, bound.e + 1);
        for (int k = 0; k < width[i]; ++k) {
            total *= F->q();
            if (total > cap) throw CapExceeded("enumerate_points (raw box)");
        }
    }
    std::vector<std::vector<Poly>> coeff_choices(d);
    for (size_t i = 0; i < d; ++i)
        coeff_choices[i] = enumerate_interval(F, width[i], Poly::zero(F), cap);
    std::vector<RatVec> out;
    std::vector<size_t> idx(d, 0);
    for (;;) {
        RatVec a(d);
        for (size_t i = 0; i < d; ++i) a[i] = RatFun(coeff_choices[i][idx[i]]);
        RatVec x = rat_matvec(L.basis(), a);
        if (body_norm(B, x) <= LogAbs::of(0)) out.push_back(std::move(x));
        size_t k = 0;
        while (k < d && ++idx[k] == coeff_choices[k].size()) idx[k++] = 0;
        if (k == d) break;
    }
    return out;
}

std::set<std::string> canon(const std::vector<RatVec>& pts) {
    std::set<std::string> s;
    for (const auto& p : pts) s.insert(ratvec_to_string(p));
    return s;
}

} // namespace

std::vector<RatVec> enumerate_points(const Lattice& L, const ConvexBody& B, uint64_t cap) {
    SuccessiveMinima sm = successive_minima(L, B);
    unsigned long long predicted = intersection_count(sm, L.field()->q());
    if (predicted > cap) throw CapExceeded("enumerate_points: predicted count above cap");
    auto a = enumerate_by_minima(L, B, sm, cap);
    auto b = enumerate_by_box(L, B, cap);
    if (canon(a) != canon(b))
        throw Error("enumerate_points: the two enumeration strategies disagree");
    if (a.size() != predicted)
        throw Error("enumerate_points: count does not match the minima formula");
    return a;
}

std::pair<Lattice, ConvexBody> dualize(const Lattice& L, const ConvexBody& B) {
    return {Lattice(rat_transpose(L.basis_inv())), ConvexBody(rat_transpose(B.shape_inv()))};
}

RatVec shortest_vector(const Lattice& L, const ConvexBody& B) {
    return successive_minima(L, B).vecs[0];
}

RatMat random_nonsingular_poly_matrix(const FieldPtr& F, size_t d, int degbound, Rng& rng) {
    for (;;) {
        PolyMat m(d, std::vector<Poly>(d, Poly::zero(F)));
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                m[i][j] = random_poly(F, 1 + (int)rng.below((uint64_t)degbound + 1), rng);
        if (!det_bareiss(m).is_zero()) return rat_from_poly(m);
    }
}

RatMat random_nonsingular_rat_matrix(const FieldPtr& F, size_t d, int degbound, Rng& rng) {
    for (;;) {
        RatMat m = random_nonsingular_poly_matrix(F, d, degbound, rng);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                if (rng.below(3) == 0)
                    m[i][j] = m[i][j] /
                              RatFun(random_nonzero_poly(F, 1 + (int)rng.below((uint64_t)degbound + 1), rng));
        // entry-wise denominators can cancel the determinant
        try {
            rat_det_log(m);
            return m;
        } catch (const SingularMatrix&) {
        }
    }
}

} // namespace ffl
