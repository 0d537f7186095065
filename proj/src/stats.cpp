#include "lexcon/stats.hpp"

#include "lexcon/rng.hpp"

#include <stdexcept>

namespace lexcon {

double least_squares_slope(const std::vector<double>& y) {
  const size_t n = y.size();
  if (n < 2) {
    throw std::invalid_argument("least_squares_slope: need at least 2 points");
  }
  const double x_mean = static_cast<double>(n - 1) / 2.0;
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= static_cast<double>(n);

  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - x_mean;
    num += dx * (y[i] - y_mean);
    den += dx * dx;
  }
  return num / den;
}

TrendTest positional_trend(const std::vector<double>& rates, int rounds,
                           uint64_t seed) {
  if (rounds < 1) {
    throw std::invalid_argument("positional_trend: rounds must be >= 1");
  }
  TrendTest t;
  t.slope = least_squares_slope(rates);

  std::vector<double> shuffled = rates;
  rng::SplitMix gen(rng::keyed({seed, 0x7472656e64ULL}));  // "trend"
  int at_most = 0, at_least = 0;
  for (int r = 0; r < rounds; ++r) {
    gen.shuffle(shuffled);
    const double s = least_squares_slope(shuffled);
    if (s <= t.slope) ++at_most;
    if (s >= t.slope) ++at_least;
  }
  t.p_negative = static_cast<double>(1 + at_most) / static_cast<double>(rounds + 1);
  t.p_positive = static_cast<double>(1 + at_least) / static_cast<double>(rounds + 1);
  return t;
}

}  // namespace lexcon
