#pragma once

#include <cstddef>
#include <span>

namespace gi {

/// Pairwise summation with a fixed tree shape (depends only on the length),
/// so reductions are reproducible and stable for long frame series.
double pairwise_sum(std::span<const double> v);

inline double mean_of(std::span<const double> v) {
  return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}

}  // namespace gi
