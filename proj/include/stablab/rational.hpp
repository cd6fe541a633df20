#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace stablab {

// Connectivity levels and slope bounds are rational (e.g. (n-3)/2); comparisons
// against integer connectivity always go through floor_int.
using Rat = boost::rational<std::int64_t>;

inline std::int64_t floor_int(const Rat& q) {
    std::int64_t n = q.numerator(), d = q.denominator();  // d > 0 by boost invariant
    std::int64_t f = n / d;
    if (n % d != 0 && n < 0) --f;
    return f;
}

inline std::string to_string(const Rat& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace stablab
