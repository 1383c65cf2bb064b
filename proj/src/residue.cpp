#include "fflat/residue.hpp"

namespace ffl {

ResidueRing::ResidueRing(const Poly& modulus) : Fq_(modulus.field()), F_(modulus) {
    r_ = F_.deg();
    q_ = Fq_->q();
    if (r_ < 1) throw ConfigError("ResidueRing: modulus degree must be >= 1");
    if (r_ > kMaxR) throw CapExceeded("ResidueRing: degree above the flat-width limit");
    if (q_ > 255) throw CapExceeded("ResidueRing: q above the flat-width limit");
    total_ = 1;
    for (int i = 0; i < r_; ++i) {
        if (total_ > (1ull << 62) / q_) throw CapExceeded("ResidueRing: q^r too large");
        total_ *= q_;
    }
    // rows for T^{r+i}, i = 0 .. r-2 (products reach degree 2r-2)
    Poly tp = Poly::monomial(Fq_, 1, r_);
    for (int i = 0; i <= r_ - 2; ++i) {
        Poly red = tp % F_;
        for (int j = 0; j < r_; ++j) red_[(size_t)i][(size_t)j] = (uint8_t)red.coeff(j);
        tp = tp.shifted(1);
    }
    build_fast_tables();
}

void ResidueRing::build_fast_tables() {
    int h1 = r_ / 2, h2 = r_ - h1;
    uint64_t lo = 1, hi = 1;
    for (int i = 0; i < h1; ++i) lo *= q_;
    for (int i = 0; i < h2; ++i) hi *= q_;
    if (lo * lo + hi * hi > (1ull << 21)) return; // keep the tables small
    lo_size_ = lo;
    hi_size_ = hi;
    auto digit_add = [&](uint64_t a, uint64_t b, int width, bool subtract) {
        uint64_t out = 0, mult = 1;
        for (int i = 0; i < width; ++i) {
            uint32_t da = (uint32_t)(a % q_), db = (uint32_t)(b % q_);
            a /= q_;
            b /= q_;
            out += (uint64_t)(subtract ? Fq_->sub(da, db) : Fq_->add(da, db)) * mult;
            mult *= q_;
        }
        return out;
    };
    lo_sum_.resize(lo * lo);
    lo_diff_.resize(lo * lo);
    for (uint64_t a = 0; a < lo; ++a)
        for (uint64_t b = 0; b < lo; ++b) {
            lo_sum_[a * lo + b] = digit_add(a, b, h1, false);
            lo_diff_[a * lo + b] = digit_add(a, b, h1, true);
        }
    hi_sum_.resize(hi * hi);
    hi_diff_.resize(hi * hi);
    for (uint64_t a = 0; a < hi; ++a)
        for (uint64_t b = 0; b < hi; ++b) {
            hi_sum_[a * hi + b] = digit_add(a, b, h2, false) * lo;
            hi_diff_[a * hi + b] = digit_add(a, b, h2, true) * lo;
        }
    fast_ = true;
}

uint64_t ResidueRing::interval_size(int m) const {
    if (m < 0 || m > r_) throw ConfigError("interval_size: need 0 <= m <= r");
    uint64_t n = 1;
    for (int i = 0; i < m; ++i) n *= q_;
    return n;
}

void ResidueRing::unpack(uint64_t code, uint8_t* d) const {
    for (int i = 0; i < r_; ++i) {
        d[i] = (uint8_t)(code % q_);
        code /= q_;
    }
}

uint64_t ResidueRing::pack(const uint8_t* d) const {
    uint64_t code = 0;
    for (int i = r_; i-- > 0;) code = code * q_ + d[i];
    return code;
}

uint64_t ResidueRing::code_of(const Poly& x) const {
    Poly red = x % F_;
    uint64_t code = 0;
    for (int i = r_; i-- > 0;) code = code * q_ + red.coeff(i);
    return code;
}

Poly ResidueRing::poly_of(uint64_t code) const {
    std::vector<uint32_t> c((size_t)r_, 0);
    for (int i = 0; i < r_; ++i) {
        c[(size_t)i] = (uint32_t)(code % q_);
        code /= q_;
    }
    return Poly(Fq_, std::move(c));
}

uint64_t ResidueRing::add(uint64_t a, uint64_t b) const {
    if (fast_) return fast_add(a % lo_size_, a / lo_size_, b % lo_size_, b / lo_size_);
    uint8_t da[kMaxR], db[kMaxR];
    unpack(a, da);
    unpack(b, db);
    for (int i = 0; i < r_; ++i) da[i] = (uint8_t)Fq_->add(da[i], db[i]);
    return pack(da);
}

uint64_t ResidueRing::sub(uint64_t a, uint64_t b) const {
    if (fast_) return fast_sub(a % lo_size_, a / lo_size_, b % lo_size_, b / lo_size_);
    uint8_t da[kMaxR], db[kMaxR];
    unpack(a, da);
    unpack(b, db);
    for (int i = 0; i < r_; ++i) da[i] = (uint8_t)Fq_->sub(da[i], db[i]);
    return pack(da);
}

uint64_t ResidueRing::neg(uint64_t a) const {
    uint8_t da[kMaxR];
    unpack(a, da);
    for (int i = 0; i < r_; ++i) da[i] = (uint8_t)Fq_->neg(da[i]);
    return pack(da);
}

uint64_t ResidueRing::mul(uint64_t a, uint64_t b) const {
    uint8_t da[kMaxR], db[kMaxR];
    unpack(a, da);
    unpack(b, db);
    uint32_t prod[2 * kMaxR] = {0};
    for (int i = 0; i < r_; ++i) {
        if (!da[i]) continue;
        for (int j = 0; j < r_; ++j)
            if (db[j]) prod[i + j] = Fq_->add(prod[i + j], Fq_->mul(da[i], db[j]));
    }
    uint8_t out[kMaxR];
    for (int i = 0; i < r_; ++i) out[i] = (uint8_t)prod[i];
    for (int k = r_; k <= 2 * (r_ - 1); ++k) {
        uint32_t c = prod[k];
        if (!c) continue;
        const auto& row = red_[(size_t)(k - r_)];
        for (int j = 0; j < r_; ++j)
            if (row[(size_t)j]) out[j] = (uint8_t)Fq_->add(out[j], Fq_->mul(c, row[(size_t)j]));
    }
    return pack(out);
}

bool ResidueRing::invertible(uint64_t a) const {
    if (a == 0) return false;
    return poly_gcd(poly_of(a), F_).deg() == 0;
}

uint64_t ResidueRing::inv(uint64_t a) const {
    return code_of(mod_inverse(poly_of(a), F_));
}

int ResidueRing::deg(uint64_t a) const {
    int d = -1;
    for (int i = 0; a; ++i) {
        if (a % q_) d = i;
        a /= q_;
    }
    return d;
}

} // namespace ffl
