#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bicount {

// Exact non-negative counts. Biclique counts overflow 64 bits quickly on dense inputs.
using BigCount = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigCount& value) { return value.str(); }

// C(n, k); zero when k < 0, k > n or n < 0.
BigCount binomial(std::int64_t n, std::int64_t k);

}  // namespace bicount
