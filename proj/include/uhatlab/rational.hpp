#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "uhatlab/errors.hpp"

namespace uhatlab {

// Arbitrary-precision integers and rationals. cpp_rational keeps values in
// lowest terms with a positive denominator, which is exactly the canonical
// form the IR relies on for decidable equality.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline Int int_pow(const Int& base, const Int& exp) {
    if (exp < 0) fail(ErrorKind::NegativeExponent, "integer power with negative exponent");
    Int result = 1;
    Int b = base;
    Int e = exp;
    while (e > 0) {
        if ((e & 1) != 0) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

// r^e for a non-negative integer exponent e.
inline Rat rat_pow(const Rat& base, const Int& exp) {
    if (exp < 0) fail(ErrorKind::NegativeExponent, "pow with negative exponent");
    return Rat(int_pow(rat_num(base), exp), int_pow(rat_den(base), exp));
}

inline std::string rat_to_string(const Rat& r) {
    if (is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

// Parses "p" or "p/q"; returns nullopt on malformed input.
std::optional<Rat> rat_from_string(const std::string& s);

// Largest integer <= r.
inline Int rat_floor(const Rat& r) {
    Int q = rat_num(r) / rat_den(r);
    if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) q -= 1;
    return q;
}

} // namespace uhatlab
