#ifndef FFLAT_FIELD_HPP
#define FFLAT_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fflat/errors.hpp"

namespace ffl {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_q with q = p^f.  Elements are encoded as integers in [0, q): the
// base-p digits of the code are the coordinates in the power basis
// 1, u, ..., u^{f-1} of F_p[u]/(modulus).  For f = 1 the code is the
// residue itself.
class Field {
public:
    static FieldPtr prime(uint32_t p);
    // modulus: degree-f monic irreducible over F_p, coefficients low..high,
    // length f+1.  Throws ConfigError if not monic/irreducible or p not prime.
    static FieldPtr extension(uint32_t p, uint32_t f, const std::vector<uint32_t>& modulus);
    // Rejection-sample a monic irreducible modulus of degree f over F_p.
    static FieldPtr extension_random(uint32_t p, uint32_t f, uint64_t seed);
    // Parse "q = p^f": make(p, f, seed) picks a modulus deterministically.
    static FieldPtr make(uint32_t p, uint32_t f, uint64_t seed = 1);

    uint32_t p() const { return p_; }
    uint32_t f() const { return f_; }
    uint64_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    uint32_t zero() const { return 0; }
    uint32_t one() const { return 1 % q_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;           // throws DivisionByZero on 0
    uint32_t div(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, uint64_t e) const;

    // Absolute trace Tr(a) = sum a^{p^i}, i < f, as a residue mod p.
    uint32_t trace(uint32_t a) const;

    // Constant embedding of an integer (mod p).
    uint32_t from_int(int64_t v) const;

    // All q elements in code order 0..q-1 (constant coordinate varies
    // fastest, matching the canonical power-basis enumeration).
    std::vector<uint32_t> enumerate(uint64_t cap = 1ull << 16) const;

    // Power-basis coordinates, length f.
    std::vector<uint32_t> rep(uint32_t a) const;
    uint32_t from_rep(const std::vector<uint32_t>& digits) const;

    std::string to_string(uint32_t a) const;   // element code as decimal

    bool same(const Field& other) const {
        return p_ == other.p_ && f_ == other.f_ && modulus_ == other.modulus_;
    }

private:
    Field(uint32_t p, uint32_t f, std::vector<uint32_t> modulus);
    void build_tables();
    uint32_t mul_generic(uint32_t a, uint32_t b) const;

    uint32_t p_ = 0;
    uint32_t f_ = 1;
    uint64_t q_ = 0;
    std::vector<uint32_t> modulus_;   // empty when f == 1

    // q <= kTableMax: full operation tables.
    static constexpr uint64_t kTableMax = 512;
    bool tabled_ = false;
    std::vector<uint32_t> add_tab_, mul_tab_, inv_tab_;
};

// Helpers over F_p digit vectors (used for modulus validation and trace
// computations before a Field exists).
namespace fpimpl {
bool is_prime_u32(uint32_t n);
// irreducibility of a monic polynomial over F_p by Rabin's criterion
bool is_irreducible_fp(const std::vector<uint32_t>& poly, uint32_t p);
} // namespace fpimpl

} // namespace ffl

#endif
