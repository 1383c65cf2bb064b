#ifndef FFLAT_LATTICE_HPP
#define FFLAT_LATTICE_HPP

#include <string>
#include <utility>
#include <vector>

#include "fflat/matrix.hpp"

namespace ffl {

// L = A * F_q[T]^d for invertible A over F_q(T)_inf (here: over F_q(T)).
class Lattice {
public:
    explicit Lattice(RatMat A);
    static Lattice integral(const FieldPtr& F, size_t d); // F_q[T]^d

    size_t dim() const { return A_.size(); }
    const RatMat& basis() const { return A_; }
    const RatMat& basis_inv() const { return Ainv_; }
    const FieldPtr& field() const { return A_[0][0].field(); }

    bool contains(const RatVec& x) const; // A^{-1} x polynomial in every entry

private:
    RatMat A_, Ainv_;
};

// B = U * B_1^d; membership is N_B(x) <= 1.
class ConvexBody {
public:
    explicit ConvexBody(RatMat U);
    static ConvexBody unit(const FieldPtr& F, size_t d); // B_1^d
    // |x_i| <= q^{e_i}  (U = diag(T^{e_i}), e_i may be negative)
    static ConvexBody box_closed(const FieldPtr& F, const std::vector<long long>& exps);
    // |x_i| < q^{e_i}, i.e. closed at e_i - 1
    static ConvexBody box_strict(const FieldPtr& F, const std::vector<long long>& exps);

    size_t dim() const { return U_.size(); }
    const RatMat& shape() const { return U_; }
    const RatMat& shape_inv() const { return Uinv_; }
    const FieldPtr& field() const { return U_[0][0].field(); }

private:
    RatMat U_, Uinv_;
};

LogAbs det_log(const Lattice& L);
LogAbs vol_log(const ConvexBody& B);

// N_B(x) = || U^{-1} x || as a LogAbs (power of q; -inf for x = 0)
LogAbs body_norm(const ConvexBody& B, const RatVec& x);

struct SuccessiveMinima {
    std::vector<long long> exps;   // sorted ascending; sigma_i = q^{exps[i]}
    std::vector<RatVec> vecs;      // attaining lattice vectors, same order
};

// Exact successive minima via denominator clearing + column reduction.
SuccessiveMinima successive_minima(const Lattice& L, const ConvexBody& B);

// prod ceil(q / sigma_i), exactly; throws Overflow past the integer budget
unsigned long long intersection_count(const Lattice& L, const ConvexBody& B);
unsigned long long intersection_count(const SuccessiveMinima& sm, uint64_t q);

// All points of L cap B, computed twice (minima span and raw coefficient
// box); the two enumerations must agree or this throws.
std::vector<RatVec> enumerate_points(const Lattice& L, const ConvexBody& B,
                                     uint64_t cap = 100000000ull);

std::pair<Lattice, ConvexBody> dualize(const Lattice& L, const ConvexBody& B);

RatVec shortest_vector(const Lattice& L, const ConvexBody& B);

std::string ratvec_to_string(const RatVec& v);

// Uniformly random d x d nonsingular matrices for harness instances.
RatMat random_nonsingular_poly_matrix(const FieldPtr& F, size_t d, int degbound, Rng& rng);
RatMat random_nonsingular_rat_matrix(const FieldPtr& F, size_t d, int degbound, Rng& rng);

} // namespace ffl

#endif
