#pragma once

#include "holoweyl/weyl.hpp"

#include <chrono>
#include <cstddef>

namespace holoweyl {

/// Resource limits for one Groebner computation.
struct Budget {
  std::size_t max_terms = kDefaultTermLimit;  // per intermediate operator
  std::size_t max_basis = 20'000;             // basis elements before giving up
  std::chrono::milliseconds wall_clock = std::chrono::minutes(10);
};

}  // namespace holoweyl
