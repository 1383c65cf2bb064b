#ifndef FFLAT_MATRIX_HPP
#define FFLAT_MATRIX_HPP

#include <vector>

#include "fflat/poly.hpp"
#include "fflat/ratfun.hpp"

namespace ffl {

using PolyMat = std::vector<std::vector<Poly>>;
using RatMat = std::vector<std::vector<RatFun>>;
using RatVec = std::vector<RatFun>;
using PolyVec = std::vector<Poly>;

PolyMat poly_identity(const FieldPtr& F, size_t d);
RatMat rat_identity(const FieldPtr& F, size_t d);
RatMat rat_from_poly(const PolyMat& m);
RatMat rat_transpose(const RatMat& m);
RatMat rat_mul(const RatMat& a, const RatMat& b);
RatVec rat_matvec(const RatMat& a, const RatVec& x);
RatVec rat_vec_from_poly(const PolyVec& v);

// Fraction-free (Bareiss) determinant over F_q[T]; stays in the ring.
Poly det_bareiss(const PolyMat& m);

// Exact |det| of a matrix over F_q(T), via row scaling + Bareiss.
LogAbs rat_det_log(const RatMat& m); // throws SingularMatrix on det = 0

RatMat rat_inverse(const RatMat& m); // throws SingularMatrix

// Column reduction of a nonsingular polynomial matrix: returns R = M*T with
// T unimodular over F_q[T] and the leading-coefficient matrix of R
// nonsingular over F_q.  Among candidate pivot columns of maximal degree the
// one with the largest index is eliminated into (deterministic output).
struct ColReduced {
    PolyMat R;
    PolyMat T;
    std::vector<int> coldeg; // column degrees of R
};
ColReduced column_reduce(const PolyMat& m);

int poly_col_degree(const PolyMat& m, size_t j); // -1 for zero column

} // namespace ffl

#endif
