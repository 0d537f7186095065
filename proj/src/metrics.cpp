#include "lexcon/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lexcon {

int instance_success(const KeywordSet& X, const TokenizedText& text) {
  return missing_keywords(X, text).empty() ? 1 : 0;
}

double keyword_coverage(const KeywordSet& X, const TokenizedText& text) {
  if (X.empty()) {
    throw std::invalid_argument("keyword_coverage: empty keyword set");
  }
  size_t satisfied = 0;
  for (const Keyword& kw : X.keywords) {
    if (contains_keyword(text, kw, X.policy)) ++satisfied;
  }
  return static_cast<double>(satisfied) / static_cast<double>(X.size());
}

TrialMetrics score_trial(const KeywordSet& X, const TokenizedText& text) {
  if (X.empty()) {
    throw std::invalid_argument("score_trial: empty keyword set");
  }
  TrialMetrics m;
  m.total = static_cast<int>(X.size());
  m.per_keyword.reserve(X.size());
  int position = 0;
  for (const Keyword& kw : X.keywords) {
    bool sat = contains_keyword(text, kw, X.policy);
    if (sat) ++m.satisfied_count;
    m.per_keyword.push_back({kw.surface, sat, position++});
  }
  m.keyword_coverage =
      static_cast<double>(m.satisfied_count) / static_cast<double>(m.total);
  m.instance_success = (m.satisfied_count == m.total) ? 1 : 0;
  return m;
}

std::vector<double> positional_coverage(const std::vector<TrialMetrics>& trials,
                                        size_t m) {
  if (trials.empty()) {
    throw std::invalid_argument("positional_coverage: no trials");
  }
  if (m == 0) {
    throw std::invalid_argument("positional_coverage: m must be positive");
  }
  std::vector<size_t> satisfied(m, 0);
  for (const TrialMetrics& t : trials) {
    if (t.per_keyword.size() != m) {
      throw std::invalid_argument(
          "positional_coverage: trial keyword count does not match m");
    }
    std::vector<bool> seen(m, false);
    for (const KeywordOutcome& k : t.per_keyword) {
      if (k.position < 0 || static_cast<size_t>(k.position) >= m ||
          seen[static_cast<size_t>(k.position)]) {
        throw std::invalid_argument(
            "positional_coverage: positions are not a permutation of 0..m-1");
      }
      seen[static_cast<size_t>(k.position)] = true;
      if (k.satisfied) ++satisfied[static_cast<size_t>(k.position)];
    }
  }
  std::vector<double> rates(m);
  for (size_t j = 0; j < m; ++j) {
    rates[j] = static_cast<double>(satisfied[j]) / static_cast<double>(trials.size());
  }
  return rates;
}

AggregateSummary aggregate(const std::vector<TrialMetrics>& trials) {
  if (trials.empty()) {
    throw std::invalid_argument("aggregate: no trials");
  }
  AggregateSummary s;
  s.n_trials = trials.size();
  double success_sum = 0.0, coverage_sum = 0.0;
  for (const TrialMetrics& t : trials) {
    success_sum += t.instance_success;
    coverage_sum += t.keyword_coverage;
  }
  const double n = static_cast<double>(trials.size());
  s.mean_instance_success = success_sum / n;
  s.mean_keyword_coverage = coverage_sum / n;
  s.error_rate = 1.0 - s.mean_instance_success;

  const double p = s.mean_instance_success;
  const double z = 1.959963984540054;  // 97.5th percentile of N(0,1)
  const double half = z * std::sqrt(p * (1.0 - p) / n) + 0.5 / n;
  s.ci_low = std::max(0.0, p - half);
  s.ci_high = std::min(1.0, p + half);
  return s;
}

}  // namespace lexcon
