#include "fflat/field.hpp"

#include <algorithm>

#include "fflat/rng.hpp"

namespace ffl {

namespace fpimpl {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using FpPoly = std::vector<uint32_t>; // coeffs low..high, trimmed

static void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

static FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + (uint64_t)a[i] * b[j]) % p;
    }
    fp_trim(out);
    return out;
}

static FpPoly fp_mod(FpPoly a, const FpPoly& m, uint32_t p) {
    fp_trim(a);
    uint32_t lc_inv = 1;
    {
        // m monic expected; tolerate general by scaling
        uint32_t lc = m.back();
        for (uint32_t x = 1; x < p; ++x)
            if ((uint64_t)lc * x % p == 1) { lc_inv = x; break; }
    }
    while (a.size() >= m.size()) {
        uint32_t c = (uint32_t)((uint64_t)a.back() * lc_inv % p);
        size_t shift = a.size() - m.size();
        if (c) {
            for (size_t i = 0; i < m.size(); ++i) {
                uint64_t t = (uint64_t)c * m[i] % p;
                a[shift + i] = (uint32_t)((a[shift + i] + p - t) % p);
            }
        }
        a.pop_back();
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

static FpPoly fp_frob_pow(const FpPoly& a, uint64_t e, const FpPoly& m, uint32_t p) {
    FpPoly base = a, acc = {1};
    uint64_t k = e;
    while (k) {
        if (k & 1) acc = fp_mod(fp_mul(acc, base, p), m, p);
        base = fp_mod(fp_mul(base, base, p), m, p);
        k >>= 1;
    }
    return acc;
}

static FpPoly fp_gcd(FpPoly a, FpPoly b, uint32_t p) {
    fp_trim(a); fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

bool is_irreducible_fp(const FpPoly& poly, uint32_t p) {
    FpPoly f = poly;
    fp_trim(f);
    if (f.size() < 2) return false;
    size_t n = f.size() - 1;
    if (f.back() != 1) return false; // callers pass monic
    // Rabin: x^{p^n} == x mod f, and gcd(x^{p^{n/l}} - x, f) = 1 for prime l | n
    // powers p^k computed by iterating the p-power map k times
    auto x_pk = [&](size_t k) {
        FpPoly cur = fp_mod({0, 1}, f, p);
        for (size_t i = 0; i < k; ++i) cur = fp_frob_pow(cur, p, f, p);
        return cur;
    };
    FpPoly xq = x_pk(n);
    FpPoly x = fp_mod({0, 1}, f, p);
    if (xq != x) return false;
    for (size_t l = 2; l <= n; ++l) {
        if (n % l) continue;
        bool isprime = true;
        for (size_t d = 2; d * d <= l; ++d)
            if (l % d == 0) { isprime = false; break; }
        if (!isprime) continue;
        FpPoly h = x_pk(n / l);
        // h - x
        FpPoly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(diff);
        FpPoly g = fp_gcd(f, diff, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace fpimpl

Field::Field(uint32_t p, uint32_t f, std::vector<uint32_t> modulus)
    : p_(p), f_(f), modulus_(std::move(modulus)) {
    q_ = 1;
    for (uint32_t i = 0; i < f_; ++i) {
        q_ *= p_;
        if (q_ > (1ull << 31)) throw ConfigError("q exceeds machine word budget");
    }
    build_tables();
}

FieldPtr Field::prime(uint32_t p) {
    if (!fpimpl::is_prime_u32(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
    return FieldPtr(new Field(p, 1, {}));
}

FieldPtr Field::extension(uint32_t p, uint32_t f, const std::vector<uint32_t>& modulus) {
    if (!fpimpl::is_prime_u32(p)) throw ConfigError("p is not prime");
    if (f < 2) throw ConfigError("extension degree must be >= 2");
    std::vector<uint32_t> m = modulus;
    for (auto& c : m) c %= p;
    while (!m.empty() && m.back() == 0) m.pop_back();
    if (m.size() != f + 1 || m.back() != 1) throw ConfigError("modulus must be monic of degree f");
    if (!fpimpl::is_irreducible_fp(m, p)) throw ConfigError("modulus is not irreducible over F_p");
    return FieldPtr(new Field(p, f, m));
}

FieldPtr Field::extension_random(uint32_t p, uint32_t f, uint64_t seed) {
    if (!fpimpl::is_prime_u32(p)) throw ConfigError("p is not prime");
    if (f < 2) throw ConfigError("extension degree must be >= 2");
    Rng rng(seed);
    for (int tries = 0; tries < 100000; ++tries) {
        std::vector<uint32_t> m(f + 1, 0);
        m[f] = 1;
        for (uint32_t i = 0; i < f; ++i) m[i] = (uint32_t)rng.below(p);
        if (fpimpl::is_irreducible_fp(m, p)) return FieldPtr(new Field(p, f, m));
    }
    throw ConfigError("failed to sample an irreducible modulus");
}

FieldPtr Field::make(uint32_t p, uint32_t f, uint64_t seed) {
    return f == 1 ? prime(p) : extension_random(p, f, seed);
}

std::vector<uint32_t> Field::rep(uint32_t a) const {
    std::vector<uint32_t> d(f_);
    for (uint32_t i = 0; i < f_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

uint32_t Field::from_rep(const std::vector<uint32_t>& digits) const {
    uint32_t a = 0;
    for (size_t i = digits.size(); i-- > 0;) a = a * p_ + (digits[i] % p_);
    return a;
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
    if (tabled_) return add_tab_[a * q_ + b];
    if (f_ == 1) {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint32_t out = 0, mult = 1;
    for (uint32_t i = 0; i < f_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        a /= p_; b /= p_;
        uint32_t s = da + db;
        if (s >= p_) s -= p_;
        out += s * mult;
        mult *= p_;
    }
    return out;
}

uint32_t Field::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t Field::neg(uint32_t a) const {
    if (f_ == 1) return a == 0 ? 0 : p_ - a;
    uint32_t out = 0, mult = 1;
    for (uint32_t i = 0; i < f_; ++i) {
        uint32_t d = a % p_;
        a /= p_;
        out += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
    }
    return out;
}

uint32_t Field::mul_generic(uint32_t a, uint32_t b) const {
    if (f_ == 1) return (uint32_t)((uint64_t)a * b % p_);
    // schoolbook product of digit vectors, reduced by the modulus
    std::vector<uint32_t> da = rep(a), db = rep(b);
    std::vector<uint32_t> prod(2 * f_ - 1, 0);
    for (uint32_t i = 0; i < f_; ++i) {
        if (!da[i]) continue;
        for (uint32_t j = 0; j < f_; ++j)
            prod[i + j] = (uint32_t)((prod[i + j] + (uint64_t)da[i] * db[j]) % p_);
    }
    for (size_t k = prod.size(); k-- > f_;) {
        uint32_t c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        // u^k = u^{k-f} * (u^f) with u^f = -modulus[0..f-1]
        for (uint32_t i = 0; i < f_; ++i) {
            uint64_t t = (uint64_t)c * modulus_[i] % p_;
            prod[k - f_ + i] = (uint32_t)((prod[k - f_ + i] + p_ - t) % p_);
        }
    }
    prod.resize(f_);
    uint32_t out = 0;
    for (size_t i = f_; i-- > 0;) out = out * p_ + prod[i];
    return out;
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
    if (tabled_) return mul_tab_[a * q_ + b];
    return mul_generic(a, b);
}

uint32_t Field::pow(uint32_t a, uint64_t e) const {
    uint32_t acc = one(), base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

uint32_t Field::inv(uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of 0 in F_q");
    if (tabled_) return inv_tab_[a];
    return pow(a, q_ - 2);
}

uint32_t Field::div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

uint32_t Field::trace(uint32_t a) const {
    uint32_t acc = 0, cur = a;
    for (uint32_t i = 0; i < f_; ++i) {
        acc = add(acc, cur);
        cur = pow(cur, p_);
    }
    // acc lies in the prime subfield: only the constant digit is set
    return acc % p_;
}

uint32_t Field::from_int(int64_t v) const {
    int64_t r = v % (int64_t)p_;
    if (r < 0) r += p_;
    return (uint32_t)r;
}

std::vector<uint32_t> Field::enumerate(uint64_t cap) const {
    if (q_ > cap) throw CapExceeded("field enumeration: q = " + std::to_string(q_));
    std::vector<uint32_t> out(q_);
    for (uint64_t i = 0; i < q_; ++i) out[i] = (uint32_t)i;
    return out;
}

std::string Field::to_string(uint32_t a) const { return std::to_string(a); }

void Field::build_tables() {
    if (q_ > kTableMax) return;
    tabled_ = false;  // use generic paths while building
    add_tab_.resize(q_ * q_);
    mul_tab_.resize(q_ * q_);
    inv_tab_.assign(q_, 0);
    for (uint64_t a = 0; a < q_; ++a)
        for (uint64_t b = 0; b < q_; ++b) {
            add_tab_[a * q_ + b] = add((uint32_t)a, (uint32_t)b);
            mul_tab_[a * q_ + b] = mul_generic((uint32_t)a, (uint32_t)b);
        }
    for (uint64_t a = 1; a < q_; ++a) inv_tab_[a] = pow((uint32_t)a, q_ - 2);
    tabled_ = true;
}

} // namespace ffl
