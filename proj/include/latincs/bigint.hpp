#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace latincs {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a non-negative exact integer; -inf for zero. The top 53
/// bits are converted exactly, so the error is a few ulps of the result.
inline double log_of(const BigInt& value) {
    if (value <= 0) return -std::numeric_limits<double>::infinity();
    const std::size_t msb = boost::multiprecision::msb(value);
    if (msb < 53) return std::log(value.convert_to<double>());
    const std::size_t shift = msb - 52;
    const BigInt top = value >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace latincs
