#include "fflat/matrix.hpp"

#include <algorithm>

namespace ffl {

PolyMat poly_identity(const FieldPtr& F, size_t d) {
    PolyMat m(d, std::vector<Poly>(d, Poly::zero(F)));
    for (size_t i = 0; i < d; ++i) m[i][i] = Poly::one(F);
    return m;
}

RatMat rat_identity(const FieldPtr& F, size_t d) {
    RatMat m(d, RatVec(d, RatFun::zero(F)));
    for (size_t i = 0; i < d; ++i) m[i][i] = RatFun::one(F);
    return m;
}

RatMat rat_from_poly(const PolyMat& m) {
    RatMat out(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (const auto& e : m[i]) out[i].push_back(RatFun(e));
    return out;
}

RatMat rat_transpose(const RatMat& m) {
    size_t r = m.size(), c = m.empty() ? 0 : m[0].size();
    RatMat out(c, RatVec(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) out[j][i] = m[i][j];
    return out;
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    const FieldPtr& F = a[0][0].field();
    RatMat out(n, RatVec(m, RatFun::zero(F)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                out[i][j] = out[i][j] + a[i][l] * b[l][j];
        }
    return out;
}

RatVec rat_matvec(const RatMat& a, const RatVec& x) {
    const FieldPtr& F = x.empty() ? a[0][0].field() : x[0].field();
    RatVec out(a.size(), RatFun::zero(F));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (!a[i][j].is_zero() && !x[j].is_zero())
                out[i] = out[i] + a[i][j] * x[j];
    return out;
}

RatVec rat_vec_from_poly(const PolyVec& v) {
    RatVec out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back(RatFun(p));
    return out;
}

Poly det_bareiss(const PolyMat& m) {
    size_t n = m.size();
    if (n == 0) throw ConfigError("det of empty matrix");
    const FieldPtr& F = m[0][0].field();
    PolyMat a = m;
    Poly prev = Poly::one(F);
    uint32_t sign = 1; // multiplied into unit at the end: 1 or q-1 (= -1)
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t piv = k + 1;
            while (piv < n && a[piv][k].is_zero()) ++piv;
            if (piv == n) return Poly::zero(F); // column is zero below: det 0
            std::swap(a[k], a[piv]);
            sign = F->neg(sign);
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Poly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = poly_div_exact(num, prev);
            }
            a[i][k] = Poly::zero(F);
        }
        prev = a[k][k];
    }
    return a[n - 1][n - 1] * sign;
}

LogAbs rat_det_log(const RatMat& m) {
    size_t n = m.size();
    const FieldPtr& F = m[0][0].field();
    // scale each row by the lcm of its denominators, then Bareiss
    PolyMat p(n, std::vector<Poly>(n, Poly::zero(F)));
    long long scale = 0;
    for (size_t i = 0; i < n; ++i) {
        Poly l = Poly::one(F);
        for (size_t j = 0; j < n; ++j) {
            const Poly& den = m[i][j].den();
            Poly g = poly_gcd(l, den);
            l = l * poly_div_exact(den, g);
        }
        scale += l.deg();
        for (size_t j = 0; j < n; ++j)
            p[i][j] = m[i][j].num() * poly_div_exact(l, m[i][j].den());
    }
    Poly det = det_bareiss(p);
    if (det.is_zero()) throw SingularMatrix("rat_det_log");
    return LogAbs::of(det.deg() - scale);
}

RatMat rat_inverse(const RatMat& m) {
    size_t n = m.size();
    const FieldPtr& F = m[0][0].field();
    RatMat a = m;
    RatMat inv = rat_identity(F, n);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && a[piv][k].is_zero()) ++piv;
        if (piv == n) throw SingularMatrix("rat_inverse");
        std::swap(a[k], a[piv]);
        std::swap(inv[k], inv[piv]);
        RatFun d = a[k][k];
        for (size_t j = 0; j < n; ++j) {
            a[k][j] = a[k][j] / d;
            inv[k][j] = inv[k][j] / d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k].is_zero()) continue;
            RatFun c = a[i][k];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] = a[i][j] - c * a[k][j];
                inv[i][j] = inv[i][j] - c * inv[k][j];
            }
        }
    }
    return inv;
}

int poly_col_degree(const PolyMat& m, size_t j) {
    int d = -1;
    for (size_t i = 0; i < m.size(); ++i) d = std::max(d, m[i][j].deg());
    return d;
}

ColReduced column_reduce(const PolyMat& m) {
    size_t n = m.size();
    const FieldPtr& F = m[0][0].field();
    ColReduced out;
    out.R = m;
    out.T = poly_identity(F, n);
    auto& R = out.R;
    auto& T = out.T;

    for (;;) {
        std::vector<int> cdeg(n);
        for (size_t j = 0; j < n; ++j) {
            cdeg[j] = poly_col_degree(R, j);
            if (cdeg[j] < 0) throw SingularMatrix("column_reduce: zero column");
        }
        // leading coefficient matrix over F_q
        std::vector<std::vector<uint32_t>> lc(n, std::vector<uint32_t>(n, 0));
        for (size_t j = 0; j < n; ++j)
            for (size_t i = 0; i < n; ++i)
                lc[i][j] = R[i][j].coeff(cdeg[j]);
        // find v != 0 with lc * v = 0 (reduced row echelon, free column)
        std::vector<std::vector<uint32_t>> a = lc;
        std::vector<uint32_t> v(n, 0);
        std::vector<bool> row_used(n, false);
        std::vector<int> col_pivot_row(n, -1);
        int free_col = -1;
        for (size_t j = 0; j < n; ++j) {
            size_t i = 0;
            while (i < n && (row_used[i] || a[i][j] == 0)) ++i;
            if (i == n) {
                if (free_col < 0) free_col = (int)j;
                continue;
            }
            col_pivot_row[j] = (int)i;
            row_used[i] = true;
            uint32_t di = F->inv(a[i][j]);
            for (size_t jj = 0; jj < n; ++jj) a[i][jj] = F->mul(a[i][jj], di);
            for (size_t ii = 0; ii < n; ++ii) {
                if (ii == i || a[ii][j] == 0) continue;
                uint32_t c = a[ii][j];
                for (size_t jj = 0; jj < n; ++jj)
                    a[ii][jj] = F->sub(a[ii][jj], F->mul(c, a[i][jj]));
            }
        }
        if (free_col < 0) break; // leading-coefficient matrix nonsingular
        v[(size_t)free_col] = 1;
        for (size_t j = 0; j < n; ++j)
            if (col_pivot_row[j] >= 0)
                v[j] = F->neg(a[(size_t)col_pivot_row[j]][(size_t)free_col]);
        // pivot: among support columns of maximal degree, the largest index
        int maxdeg = -1;
        for (size_t j = 0; j < n; ++j)
            if (v[j] != 0) maxdeg = std::max(maxdeg, cdeg[j]);
        size_t target = 0;
        for (size_t j = 0; j < n; ++j)
            if (v[j] != 0 && cdeg[j] == maxdeg) target = j;
        // column op: R_target <- sum_j v_j T^{maxdeg - cdeg_j} R_j
        std::vector<Poly> newcol(n, Poly::zero(F)), newtcol(n, Poly::zero(F));
        for (size_t j = 0; j < n; ++j) {
            if (v[j] == 0) continue;
            int shift = maxdeg - cdeg[j];
            for (size_t i = 0; i < n; ++i) {
                newcol[i] = newcol[i] + (R[i][j] * v[j]).shifted(shift);
                newtcol[i] = newtcol[i] + (T[i][j] * v[j]).shifted(shift);
            }
        }
        for (size_t i = 0; i < n; ++i) {
            R[i][target] = newcol[i];
            T[i][target] = newtcol[i];
        }
    }
    out.coldeg.resize(n);
    for (size_t j = 0; j < n; ++j) out.coldeg[j] = poly_col_degree(R, j);
    return out;
}

} // namespace ffl
