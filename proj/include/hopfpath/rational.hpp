#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hopfpath {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline double to_double(const Rational& q) { return q.get_d(); }

// Accepts "3", "-3/4". Throws ParseError.
Rational parse_rational(std::string_view text);

}  // namespace hopfpath
