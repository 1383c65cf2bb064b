#ifndef FFLAT_LOGABS_HPP
#define FFLAT_LOGABS_HPP

#include <cstdint>
#include <string>

namespace ffl {

// Exponent arithmetic for the absolute value |x| = q^e, with |0| = 0
// carried as a -infinity sentinel (the deg 0 = -inf convention).
struct LogAbs {
    bool finite = false;
    long long e = 0;

    static LogAbs neg_inf() { return LogAbs{false, 0}; }
    static LogAbs of(long long exp) { return LogAbs{true, exp}; }

    bool is_zero() const { return !finite; }

    // |x*y| = |x|*|y|
    LogAbs operator*(const LogAbs& o) const {
        if (!finite || !o.finite) return neg_inf();
        return of(e + o.e);
    }
    LogAbs operator/(const LogAbs& o) const;

    bool operator==(const LogAbs& o) const {
        return finite == o.finite && (!finite || e == o.e);
    }
    bool operator!=(const LogAbs& o) const { return !(*this == o); }
    bool operator<(const LogAbs& o) const {
        if (!finite) return o.finite;
        if (!o.finite) return false;
        return e < o.e;
    }
    bool operator<=(const LogAbs& o) const { return *this < o || *this == o; }
    bool operator>(const LogAbs& o) const { return o < *this; }
    bool operator>=(const LogAbs& o) const { return o <= *this; }

    static LogAbs max(const LogAbs& a, const LogAbs& b) { return a < b ? b : a; }

    std::string to_string() const {
        return finite ? std::to_string(e) : std::string("-inf");
    }
};

inline LogAbs LogAbs::operator/(const LogAbs& o) const {
    if (!o.finite) return neg_inf(); // undefined; callers guard
    if (!finite) return neg_inf();
    return of(e - o.e);
}

} // namespace ffl

#endif
