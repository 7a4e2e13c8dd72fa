#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <string>

namespace posvote {

// Exact integer score type.  Scoring vectors may grow geometrically (the
// lexicographic rule reaches 2^m), so every externally visible score,
// target and lambda is arbitrary precision.  Hot loops may drop to int64
// after an explicit range check (see oracle.cpp).
using Score = boost::multiprecision::cpp_int;

inline bool fits_int64(const Score& v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

inline std::string to_string(const Score& v) { return v.str(); }

} // namespace posvote
