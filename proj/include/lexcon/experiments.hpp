#pragma once

#include "lexcon/backend.hpp"
#include "lexcon/metrics.hpp"
#include "lexcon/records.hpp"
#include "lexcon/sources.hpp"
#include "lexcon/stats.hpp"
#include "lexcon/strategies.hpp"
#include "lexcon/synthetic.hpp"
#include "lexcon/templates.hpp"

#include <atomic>
#include <optional>
#include <string>
#include <vector>

namespace lexcon {

/// Shared wiring for a batch run. Experiment definitions are immutable once
/// started; per-trial randomness derives from `seed` and the trial identity,
/// never from execution order.
struct RunnerConfig {
  BackendPtr backend;
  StrategyKind strategy = StrategyKind::vanilla;
  int K = 0;
  MergeMode merge_mode = MergeMode::concat;
  PromptTemplate tpl;
  std::optional<PromptTemplate> rewrite_tpl;
  DecodingParams params;
  std::string model_id;
  MatchPolicy policy;
  uint64_t seed = 42;
  int parallelism = 1;
  std::string records_path;  // empty: keep records in memory only

  // Cooperative stop: workers finish the trial in hand, nothing is truncated.
  std::atomic<bool>* stop = nullptr;
  // Test hook: stop after this many new trials (-1 = unlimited).
  long long stop_after_new = -1;

  // Set when the backend is the synthetic model; lets summary CSVs carry the
  // closed-form oracle column.
  std::optional<SyntheticModelConfig> synthetic_oracle;
};

struct PlannedTrial {
  std::string experiment_id;
  int trial_index = 0;
  std::vector<std::string> keywords;  // prompt order
  StrategyKind strategy = StrategyKind::vanilla;
  int K = 0;
  uint64_t trial_seed = 0;
  std::optional<DecodingParams> params_override;  // decoding sweep cells
  const PromptTemplate* tpl_override = nullptr;
};

struct RunOutcome {
  std::vector<TrialRecord> records;  // planned order; only completed trials
  size_t newly_run = 0;
  size_t skipped_existing = 0;
  bool complete = false;
};

/// Executes the missing trials of the plan on a bounded worker pool,
/// appending each finished record to records_path. Trials already present
/// in the file are skipped untouched (resume semantics).
RunOutcome execute_trials(const RunnerConfig& cfg,
                          const std::vector<PlannedTrial>& plan);

TrialRecord run_single_trial(const RunnerConfig& cfg, const PlannedTrial& trial);

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

struct SummaryRow {
  std::string experiment_id;
  std::string group_key;
  AggregateSummary summary;
  std::optional<double> implied_success;  // synthetic oracle, when defined
};

/// One row per experiment_id, in first-seen order.
std::vector<SummaryRow> summarize_by_experiment(
    const std::vector<TrialRecord>& records);

std::string summary_csv(const std::vector<SummaryRow>& rows);
void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows);

// ---------------------------------------------------------------------------
// Constraint scaling
// ---------------------------------------------------------------------------

struct ScalingParams {
  std::string name = "constraint_scaling";
  std::vector<int> n_list{3, 5, 7, 10, 15, 20};
  int sets_per_n = 100;
  KeywordSource source;
};

struct ScalingResult {
  std::vector<SummaryRow> rows;  // one per n
  RunOutcome run;
};

ScalingResult run_constraint_scaling(const RunnerConfig& cfg,
                                     const ScalingParams& params);

// ---------------------------------------------------------------------------
// Position bias
// ---------------------------------------------------------------------------

struct PositionBiasParams {
  std::string name = "position_bias";
  std::vector<int> n_list{3, 5, 7, 10, 15, 20};
  int sets_per_n = 100;
  int shuffles = 20;  // must be >= 2; one shuffle cannot separate word
                      // identity from position
  int permutation_rounds = 999;
  KeywordSource source;
};

struct PositionBiasGroup {
  int n = 0;
  size_t n_trials = 0;
  std::vector<double> positional;  // coverage rate per prompt position
  TrendTest trend;
};

struct PositionBiasResult {
  std::vector<PositionBiasGroup> groups;
  RunOutcome run;
};

PositionBiasResult run_position_bias(const RunnerConfig& cfg,
                                     const PositionBiasParams& params);

std::string positional_csv(const std::string& name,
                           const std::vector<PositionBiasGroup>& groups);
void write_positional_csv(const std::string& path, const std::string& name,
                          const std::vector<PositionBiasGroup>& groups);

// ---------------------------------------------------------------------------
// Compound words
// ---------------------------------------------------------------------------

struct CompoundParams {
  std::string name = "compound";
  std::string compound_file;  // word TAB part1 TAB part2
  std::string control_file;   // one word per line
  int group_size = 5;
  int rounds = 5;  // reshuffle-and-partition passes over the mixed pool
};

struct CompoundResult {
  size_t compound_instances = 0;
  size_t control_instances = 0;
  size_t compound_satisfied = 0;
  size_t control_satisfied = 0;
  size_t compound_unsatisfied = 0;
  size_t splits_detected = 0;

  double compound_coverage = 0.0;
  double control_coverage = 0.0;
  // Among compounds emitted in any form (intact or split): fraction split.
  // This is the estimator that recovers the underlying split propensity.
  double split_rate = 0.0;
  // Among unsatisfied compounds: fraction where detect_compound_split fires.
  double split_rate_unsatisfied = 0.0;

  RunOutcome run;
};

CompoundResult run_compound_experiment(const RunnerConfig& cfg,
                                       const CompoundParams& params);

std::string compound_csv(const std::string& name, const CompoundResult& result);
void write_compound_csv(const std::string& path, const std::string& name,
                        const CompoundResult& result);

// ---------------------------------------------------------------------------
// Decoding parameter sweep
// ---------------------------------------------------------------------------

struct SweepParams {
  std::string name = "decoding_sweep";
  int instances = 150;
  int keywords_per_instance = 10;
  std::vector<double> temperatures;  // default 0.05..1.00 step 0.05
  std::vector<int> top_k_values{1, 2, 5, 10, 20, 50, 100, 200, 500};
  std::vector<double> top_p_values;  // default 0.05..1.00 step 0.05

  KeywordSource source;

  /// Fills empty temperature/top-p grids with the default 0.05..1.00 ladder.
  void apply_default_grids();
};

struct SweepCell {
  std::string axis;  // temperature | top_k | top_p
  std::string value_label;
  double value = 0.0;
  double mean_coverage = 0.0;
  size_t n_trials = 0;
};

/// Per-instance coverage grid for one axis (heatmap shape: instances x values).
struct SweepAxisGrid {
  std::string axis;
  std::vector<std::string> value_labels;
  std::vector<std::vector<double>> coverage;  // [instance][value index]
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<SweepAxisGrid> grids;
  bool top_k_skipped = false;
  RunOutcome run;
};

/// Sweeps one decoding axis at a time with vanilla generation over a fixed
/// instance list. The top-k axis is skipped with a warning when the backend
/// does not support it.
SweepResult run_decoding_sweep(const RunnerConfig& cfg, const SweepParams& params);

std::string sweep_grid_csv(const SweepAxisGrid& grid);
void write_sweep_grid_csv(const std::string& path, const SweepAxisGrid& grid);

// ---------------------------------------------------------------------------
// Downstream tasks
// ---------------------------------------------------------------------------

struct DownstreamParams {
  std::string name = "downstream";
  std::string task = "recipe";  // recipe | table_to_text | profile
  std::vector<int> n_list;      // empty: task default
  int sets_per_n = 100;
  std::string data_file;  // keyword pool for the task
  uint64_t source_seed = 0;

  std::vector<int> effective_n_list() const;
};

struct DownstreamResult {
  std::vector<SummaryRow> rows;
  RunOutcome run;
};

DownstreamResult run_downstream(const RunnerConfig& cfg,
                                const TemplateLibrary& templates,
                                const DownstreamParams& params);

// ---------------------------------------------------------------------------
// Strategy comparison (error-rate curves)
// ---------------------------------------------------------------------------

struct StrategyComparisonParams {
  std::string name = "strategy_comparison";
  int m = 15;
  std::vector<int> k_list{0, 1, 2, 3, 4, 5};
  int trials = 1000;
  std::vector<StrategyKind> strategies{StrategyKind::rj, StrategyKind::dnc};
  KeywordSource source;
};

struct ComparisonPoint {
  StrategyKind strategy = StrategyKind::vanilla;
  int K = 0;
  AggregateSummary summary;
  std::optional<double> implied_success;
};

struct ComparisonResult {
  std::vector<ComparisonPoint> points;
  RunOutcome run;
};

/// Runs each strategy at each K over the same keyword sets. At K=0 every
/// strategy degenerates to vanilla generation.
ComparisonResult run_strategy_comparison(const RunnerConfig& cfg,
                                         const StrategyComparisonParams& params);

std::string comparison_csv(const std::string& name, const ComparisonResult& result);
void write_comparison_csv(const std::string& path, const std::string& name,
                          const ComparisonResult& result);

}  // namespace lexcon
