#pragma once

#include "lexcon/text.hpp"

#include <string>
#include <vector>

namespace lexcon {

struct KeywordOutcome {
  std::string keyword;  // surface form
  bool satisfied = false;
  int position = 0;  // 0-based position in the prompt's keyword list
};

/// Scores for one trial. keyword_coverage is the exact rational
/// satisfied_count/total, also exposed as a decimal.
struct TrialMetrics {
  int instance_success = 0;  // 1 iff every keyword satisfied
  int satisfied_count = 0;
  int total = 0;
  double keyword_coverage = 0.0;
  std::vector<KeywordOutcome> per_keyword;
};

struct AggregateSummary {
  size_t n_trials = 0;
  double mean_instance_success = 0.0;
  double mean_keyword_coverage = 0.0;
  double error_rate = 0.0;  // 1 - mean_instance_success
  double ci_low = 0.0;      // binomial 95% interval for mean_instance_success
  double ci_high = 0.0;
};

/// 1 iff missing_keywords(X, text) is empty. Empty X is vacuously satisfied.
int instance_success(const KeywordSet& X, const TokenizedText& text);

/// Fraction of X's keywords contained in text.
/// Throws std::invalid_argument for empty X (0/0 is undefined).
double keyword_coverage(const KeywordSet& X, const TokenizedText& text);

/// Per-keyword satisfaction flags with prompt positions, plus the two rates.
/// Throws std::invalid_argument for empty X.
TrialMetrics score_trial(const KeywordSet& X, const TokenizedText& text);

/// Entry j = fraction of trials whose position-j keyword was satisfied.
/// Every trial must carry exactly m keywords with positions forming a
/// permutation of 0..m-1; throws std::invalid_argument otherwise (also for
/// zero trials or m == 0).
std::vector<double> positional_coverage(const std::vector<TrialMetrics>& trials,
                                        size_t m);

/// Summary over >= 1 trials. The 95% interval uses the normal approximation
/// with a 0.5/n continuity guard so it stays non-degenerate at 0 and 1.
AggregateSummary aggregate(const std::vector<TrialMetrics>& trials);

}  // namespace lexcon
