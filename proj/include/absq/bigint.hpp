#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>

namespace absq {

// Exact nonnegative counts. Never rounded, never wraps.
using BigCount = boost::multiprecision::cpp_int;

/// Natural log of a positive big integer, accurate to ~1e-15 relative.
/// Uses the top 64 bits plus the bit length, so it never overflows.
inline double log_big(const BigCount& v) {
    if (v <= 0) throw std::domain_error("log_big: argument must be positive");
    const unsigned bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 63) return std::log(static_cast<double>(static_cast<std::uint64_t>(v)));
    const unsigned shift = bits - 63;
    const auto top = static_cast<std::uint64_t>(v >> shift);
    return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace absq
