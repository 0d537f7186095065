#pragma once

#include "lexcon/backend.hpp"
#include "lexcon/metrics.hpp"
#include "lexcon/strategies.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace lexcon {

inline constexpr int kRecordSchemaVersion = 1;

/// One persisted experiment trial. Self-contained: metrics can be recomputed
/// offline from the stored keywords, policy, and final text.
struct TrialRecord {
  std::string experiment_id;
  int trial_index = 0;
  std::vector<std::string> keywords;  // prompt order; position j = index j
  MatchPolicy policy;
  std::string strategy_id;
  DecodingParams params;
  std::string backend_id;
  StrategyOutcome outcome;
  TrialMetrics metrics;
  double wall_time_ms = 0.0;
  int schema_version = kRecordSchemaVersion;
};

using TrialKey = std::pair<std::string, int>;  // (experiment_id, trial_index)

std::string record_to_jsonl(const TrialRecord& record);
TrialRecord record_from_jsonl(const std::string& line);

/// All records of a JSONL file. A missing file yields an empty vector;
/// malformed lines throw ConfigError naming the line.
std::vector<TrialRecord> read_records(const std::string& path);

/// Append-only JSONL writer. One line per record, flushed per line, safe to
/// call from multiple worker threads.
class JsonlWriter {
 public:
  /// Opens for append; throws ConfigError if the file cannot be opened.
  explicit JsonlWriter(const std::string& path);
  ~JsonlWriter();

  JsonlWriter(const JsonlWriter&) = delete;
  JsonlWriter& operator=(const JsonlWriter&) = delete;

  void append(const TrialRecord& record);
  size_t appended() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lexcon
