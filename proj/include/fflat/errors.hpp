#ifndef FFLAT_ERRORS_HPP
#define FFLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffl {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define FFLAT_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                               \
        explicit Name(const std::string& what = #Name) : Error(std::string(#Name) + ": " + what) {} \
    }

FFLAT_DEFINE_ERROR(DivisionByZero);
FFLAT_DEFINE_ERROR(NotInvertible);
FFLAT_DEFINE_ERROR(CapExceeded);
FFLAT_DEFINE_ERROR(SingularMatrix);
FFLAT_DEFINE_ERROR(Overflow);
FFLAT_DEFINE_ERROR(ZeroPolynomial);
FFLAT_DEFINE_ERROR(DegreeTooLow);
FFLAT_DEFINE_ERROR(ProfileViolated);
FFLAT_DEFINE_ERROR(ConditionViolated);
FFLAT_DEFINE_ERROR(HypothesisFailed);
FFLAT_DEFINE_ERROR(RangeGateFailed);
FFLAT_DEFINE_ERROR(ConfigError);
FFLAT_DEFINE_ERROR(IoError);
FFLAT_DEFINE_ERROR(ParseError);

#undef FFLAT_DEFINE_ERROR

} // namespace ffl

#endif
