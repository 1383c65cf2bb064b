#ifndef FFLAT_RESIDUE_HPP
#define FFLAT_RESIDUE_HPP

#include <array>
#include <cstdint>

#include "fflat/poly.hpp"

namespace ffl {

// Flat arithmetic in F_q[T]/<F> for the counting layer.  Residues are
// integer codes in [0, q^r): base-q digits are the coefficients of the
// canonical representative (deg < r).  Codes of I_m are exactly [0, q^m).
class ResidueRing {
public:
    static constexpr int kMaxR = 32;

    ResidueRing(const Poly& modulus);

    const Poly& modulus() const { return F_; }
    const FieldPtr& field() const { return Fq_; }
    int r() const { return r_; }
    uint64_t q() const { return q_; }
    uint64_t size() const { return total_; } // q^r
    uint64_t interval_size(int m) const;     // q^m, m <= r

    uint64_t code_of(const Poly& x) const;   // reduces mod F first
    Poly poly_of(uint64_t code) const;

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;          // throws NotInvertible
    bool invertible(uint64_t a) const;
    int deg(uint64_t a) const;               // -1 for zero

    // Split-table fast path for the counting loops: codes are cut at q^{h}
    // into independent halves (digit addition never carries across), so a
    // sum is two table lookups.  Available when the tables fit.
    bool has_fast() const { return fast_; }
    uint64_t lo_size() const { return lo_size_; }
    uint64_t fast_add(uint64_t alo, uint64_t ahi, uint64_t blo, uint64_t bhi) const {
        return lo_sum_[alo * lo_size_ + blo] + hi_sum_[ahi * hi_size_ + bhi];
    }
    uint64_t fast_sub(uint64_t alo, uint64_t ahi, uint64_t blo, uint64_t bhi) const {
        return lo_diff_[alo * lo_size_ + blo] + hi_diff_[ahi * hi_size_ + bhi];
    }

private:
    void unpack(uint64_t code, uint8_t* d) const;
    uint64_t pack(const uint8_t* d) const;
    void build_fast_tables();

    FieldPtr Fq_;
    Poly F_;
    int r_;
    uint64_t q_;
    uint64_t total_;
    // T^{r+i} mod F as digit rows, i in [0, r-1)
    std::array<std::array<uint8_t, kMaxR>, kMaxR> red_{};

    bool fast_ = false;
    uint64_t lo_size_ = 1, hi_size_ = 1;
    std::vector<uint64_t> lo_sum_, hi_sum_, lo_diff_, hi_diff_; // hi tables premultiplied
};

} // namespace ffl

#endif
