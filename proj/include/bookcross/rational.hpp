#ifndef BOOKCROSS_RATIONAL_HPP
#define BOOKCROSS_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "bookcross/error.hpp"

namespace bookcross {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(std::int64_t num, std::int64_t den = 1) {
    return Rational(Integer(num), Integer(den));
}

inline bool is_integral(const Rational& r) {
    return boost::multiprecision::denominator(r) == 1;
}

/// Converts an integral rational to int64; throws InvariantError otherwise.
inline std::int64_t to_int64(const Rational& r, const char* what) {
    if (!is_integral(r))
        throw InvariantError(std::string(what) + ": expected an integer, got " + r.str());
    return boost::multiprecision::numerator(r).convert_to<std::int64_t>();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace bookcross

#endif  // BOOKCROSS_RATIONAL_HPP
