#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cms {

// Exact arbitrary-precision rational. All LP arithmetic uses this type;
// floating point never touches a solver decision.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// Floor/ceil toward integers; denominator is always positive for cpp_rational.
inline BigInt rat_floor(const Rat& q) {
    BigInt n = rat_num(q), d = rat_den(q);
    BigInt t = n / d;
    if (n < 0 && n % d != 0) --t;
    return t;
}

inline BigInt rat_ceil(const Rat& q) {
    BigInt n = rat_num(q), d = rat_den(q);
    BigInt t = n / d;
    if (n > 0 && n % d != 0) ++t;
    return t;
}

inline long long to_ll(const BigInt& v) { return v.convert_to<long long>(); }
inline long long floor_ll(const Rat& q) { return to_ll(rat_floor(q)); }
inline long long ceil_ll(const Rat& q) { return to_ll(rat_ceil(q)); }
inline double to_double(const Rat& q) { return q.convert_to<double>(); }

std::string rat_to_string(const Rat& q);

// Parses "3", "-4/7" or a decimal like "0.25" into an exact rational.
// Throws std::invalid_argument on malformed input.
Rat rat_from_string(const std::string& text);

}  // namespace cms
