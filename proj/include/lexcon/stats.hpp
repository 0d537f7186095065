#pragma once

#include <cstdint>
#include <vector>

namespace lexcon {

/// Least-squares slope of y over x = 0..n-1. Requires n >= 2.
double least_squares_slope(const std::vector<double>& y);

struct TrendTest {
  double slope = 0.0;
  double p_negative = 1.0;  // one-sided permutation p for a negative trend
  double p_positive = 1.0;  // one-sided permutation p for a positive trend
};

/// Permutation test of the positional trend: under the no-bias null the
/// per-position rates are exchangeable, so the slope's null distribution is
/// sampled by shuffling the rate vector. p = (1 + #{at least as extreme}) /
/// (rounds + 1).
TrendTest positional_trend(const std::vector<double>& rates, int rounds,
                           uint64_t seed);

}  // namespace lexcon
