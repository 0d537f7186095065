#include "lexcon/experiments.hpp"

#include "lexcon/error.hpp"
#include "lexcon/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace lexcon {
namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

uint64_t trial_seed_for(const RunnerConfig& cfg, const std::string& experiment_id,
                        int trial_index) {
  return rng::keyed({cfg.seed, rng::hash_str(experiment_id),
                     static_cast<uint64_t>(trial_index)});
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

AggregateSummary aggregate_records(const std::vector<TrialRecord>& records) {
  std::vector<TrialMetrics> metrics;
  metrics.reserve(records.size());
  for (const TrialRecord& r : records) metrics.push_back(r.metrics);
  return aggregate(metrics);
}

}  // namespace

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

TrialRecord run_single_trial(const RunnerConfig& cfg, const PlannedTrial& trial) {
  const KeywordSet X = make_keyword_set(trial.keywords, cfg.policy);

  GenOptions opts;
  opts.params = trial.params_override ? *trial.params_override : cfg.params;
  opts.params.seed = trial.trial_seed;
  opts.model_id = cfg.model_id;

  const PromptTemplate& tpl = trial.tpl_override ? *trial.tpl_override : cfg.tpl;
  const PromptTemplate* rewrite =
      cfg.rewrite_tpl ? &cfg.rewrite_tpl.value() : nullptr;

  const auto t0 = std::chrono::steady_clock::now();
  StrategyOutcome outcome;
  try {
    switch (trial.strategy) {
      case StrategyKind::vanilla:
        outcome = vanilla_generate(*cfg.backend, tpl, X, opts);
        break;
      case StrategyKind::rj:
        outcome = rejection_sampling(*cfg.backend, tpl, X, opts, trial.K);
        break;
      case StrategyKind::dnc:
        outcome = dnc_generate(*cfg.backend, tpl, X, opts, trial.K,
                               cfg.merge_mode, rewrite);
        break;
    }
  } catch (const BackendError& e) {
    throw BackendError(e.kind,
                       trial.experiment_id + " trial " +
                           std::to_string(trial.trial_index) + ": " + e.what(),
                       e.payload);
  }
  const double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

  TrialRecord record;
  record.experiment_id = trial.experiment_id;
  record.trial_index = trial.trial_index;
  record.keywords = trial.keywords;
  record.policy = cfg.policy;
  record.strategy_id = outcome.strategy_id;
  record.params = opts.params;
  record.backend_id = cfg.backend->id();
  record.metrics =
      score_trial(X, normalize_and_tokenize(outcome.final_text, cfg.policy));
  record.outcome = std::move(outcome);
  record.wall_time_ms = wall_ms;
  return record;
}

RunOutcome execute_trials(const RunnerConfig& cfg,
                          const std::vector<PlannedTrial>& plan) {
  if (!cfg.backend) throw ConfigError("execute_trials: backend not set");

  std::map<TrialKey, TrialRecord> existing;
  if (!cfg.records_path.empty()) {
    for (TrialRecord& r : read_records(cfg.records_path)) {
      TrialKey key{r.experiment_id, r.trial_index};
      existing.emplace(std::move(key), std::move(r));
    }
  }

  std::vector<size_t> todo;  // indices into plan
  for (size_t i = 0; i < plan.size(); ++i) {
    if (!existing.contains({plan[i].experiment_id, plan[i].trial_index})) {
      todo.push_back(i);
    }
  }

  RunOutcome out;
  out.skipped_existing = plan.size() - todo.size();

  std::vector<std::optional<TrialRecord>> fresh(todo.size());
  std::unique_ptr<JsonlWriter> writer;
  if (!cfg.records_path.empty() && !todo.empty()) {
    writer = std::make_unique<JsonlWriter>(cfg.records_path);
  }

  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto worker = [&] {
    while (!failed.load()) {
      if (cfg.stop && cfg.stop->load()) break;
      const size_t slot = next.fetch_add(1);
      if (slot >= todo.size()) break;
      if (cfg.stop_after_new >= 0 &&
          slot >= static_cast<size_t>(cfg.stop_after_new)) {
        break;
      }
      try {
        TrialRecord record = run_single_trial(cfg, plan[todo[slot]]);
        if (writer) writer->append(record);
        fresh[slot] = std::move(record);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        break;
      }
    }
  };

  const int width = std::max(1, cfg.parallelism);
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(width));
    for (int i = 0; i < width; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::unordered_map<size_t, size_t> fresh_by_plan;  // plan index -> todo slot
  for (size_t slot = 0; slot < todo.size(); ++slot) {
    fresh_by_plan[todo[slot]] = slot;
  }

  out.records.reserve(plan.size());
  for (size_t i = 0; i < plan.size(); ++i) {
    if (auto it = existing.find({plan[i].experiment_id, plan[i].trial_index});
        it != existing.end()) {
      out.records.push_back(it->second);
      continue;
    }
    if (auto slot = fresh_by_plan.find(i);
        slot != fresh_by_plan.end() && fresh[slot->second]) {
      out.records.push_back(*fresh[slot->second]);
      ++out.newly_run;
    }
  }
  out.complete = out.records.size() == plan.size();
  return out;
}

// ---------------------------------------------------------------------------
// Summaries
// ---------------------------------------------------------------------------

std::vector<SummaryRow> summarize_by_experiment(
    const std::vector<TrialRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<TrialMetrics>> grouped;
  for (const TrialRecord& r : records) {
    auto [it, inserted] = grouped.try_emplace(r.experiment_id);
    if (inserted) order.push_back(r.experiment_id);
    it->second.push_back(r.metrics);
  }
  std::vector<SummaryRow> rows;
  rows.reserve(order.size());
  for (const std::string& id : order) {
    SummaryRow row;
    row.experiment_id = id;
    const size_t slash = id.find('/');
    row.group_key = slash == std::string::npos ? id : id.substr(slash + 1);
    row.summary = aggregate(grouped.at(id));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out =
      "experiment_id,group_key,n_trials,mean_success,mean_coverage,ci_low,"
      "ci_high,implied_success\n";
  for (const SummaryRow& r : rows) {
    out += r.experiment_id + "," + r.group_key + "," +
           std::to_string(r.summary.n_trials) + "," +
           fmt6(r.summary.mean_instance_success) + "," +
           fmt6(r.summary.mean_keyword_coverage) + "," + fmt6(r.summary.ci_low) +
           "," + fmt6(r.summary.ci_high) + ",";
    out += r.implied_success ? fmt6(*r.implied_success) : std::string();
    out += "\n";
  }
  return out;
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  write_text_file(path, summary_csv(rows));
}

// ---------------------------------------------------------------------------
// Constraint scaling
// ---------------------------------------------------------------------------

ScalingResult run_constraint_scaling(const RunnerConfig& cfg,
                                     const ScalingParams& params) {
  if (params.n_list.empty()) {
    throw ConfigError("constraint_scaling: n_list must not be empty");
  }
  std::vector<PlannedTrial> plan;
  for (int n : params.n_list) {
    const std::string id = params.name + "/n=" + std::to_string(n);
    const auto sets =
        materialize_sets(params.source, n, params.sets_per_n, rng::hash_str(id));
    for (int t = 0; t < params.sets_per_n; ++t) {
      plan.push_back({id, t, sets[static_cast<size_t>(t)], cfg.strategy, cfg.K,
                      trial_seed_for(cfg, id, t)});
    }
  }

  ScalingResult result;
  result.run = execute_trials(cfg, plan);
  result.rows = summarize_by_experiment(result.run.records);
  if (cfg.synthetic_oracle && cfg.synthetic_oracle->independence_regime()) {
    for (SummaryRow& row : result.rows) {
      const int n = std::stoi(row.group_key.substr(row.group_key.find('=') + 1));
      row.implied_success = implied_instance_success(
          *cfg.synthetic_oracle, static_cast<size_t>(n), cfg.strategy, cfg.K);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Position bias
// ---------------------------------------------------------------------------

PositionBiasResult run_position_bias(const RunnerConfig& cfg,
                                     const PositionBiasParams& params) {
  if (params.shuffles < 2) {
    throw ConfigError(
        "position_bias: shuffles must be >= 2 (one shuffle cannot separate "
        "word identity from position)");
  }
  if (params.n_list.empty()) {
    throw ConfigError("position_bias: n_list must not be empty");
  }

  std::vector<PlannedTrial> plan;
  for (int n : params.n_list) {
    const std::string id = params.name + "/n=" + std::to_string(n);
    const auto sets =
        materialize_sets(params.source, n, params.sets_per_n, rng::hash_str(id));
    for (int s = 0; s < params.sets_per_n; ++s) {
      for (int k = 0; k < params.shuffles; ++k) {
        std::vector<std::string> permuted = sets[static_cast<size_t>(s)];
        rng::SplitMix gen(rng::keyed({cfg.seed, rng::hash_str(id),
                                      static_cast<uint64_t>(s),
                                      static_cast<uint64_t>(k), 0x70657263ULL}));
        gen.shuffle(permuted);
        const int t = s * params.shuffles + k;
        plan.push_back({id, t, std::move(permuted), cfg.strategy, cfg.K,
                        trial_seed_for(cfg, id, t)});
      }
    }
  }

  PositionBiasResult result;
  result.run = execute_trials(cfg, plan);

  std::map<std::string, std::vector<TrialMetrics>> by_id;
  for (const TrialRecord& r : result.run.records) {
    by_id[r.experiment_id].push_back(r.metrics);
  }
  for (int n : params.n_list) {
    const std::string id = params.name + "/n=" + std::to_string(n);
    auto it = by_id.find(id);
    if (it == by_id.end()) continue;
    PositionBiasGroup group;
    group.n = n;
    group.n_trials = it->second.size();
    group.positional = positional_coverage(it->second, static_cast<size_t>(n));
    group.trend = positional_trend(
        group.positional, params.permutation_rounds,
        rng::keyed({cfg.seed, rng::hash_str(id), 0x736c6f7065ULL}));
    result.groups.push_back(std::move(group));
  }
  return result;
}

std::string positional_csv(const std::string& name,
                           const std::vector<PositionBiasGroup>& groups) {
  std::string out =
      "experiment_id,n,position,coverage,n_trials,slope,p_negative,p_positive\n";
  for (const PositionBiasGroup& g : groups) {
    for (size_t j = 0; j < g.positional.size(); ++j) {
      out += name + "/n=" + std::to_string(g.n) + "," + std::to_string(g.n) +
             "," + std::to_string(j) + "," + fmt6(g.positional[j]) + "," +
             std::to_string(g.n_trials) + "," + fmt6(g.trend.slope) + "," +
             fmt6(g.trend.p_negative) + "," + fmt6(g.trend.p_positive) + "\n";
    }
  }
  return out;
}

void write_positional_csv(const std::string& path, const std::string& name,
                          const std::vector<PositionBiasGroup>& groups) {
  write_text_file(path, positional_csv(name, groups));
}

// ---------------------------------------------------------------------------
// Compound words
// ---------------------------------------------------------------------------

CompoundResult run_compound_experiment(const RunnerConfig& cfg,
                                       const CompoundParams& params) {
  const std::vector<CompoundEntry> compounds =
      load_compound_entries(params.compound_file);
  const std::vector<std::string> controls = load_word_pool(params.control_file);
  if (compounds.empty() || controls.empty()) {
    throw ConfigError("compound experiment needs non-empty word lists");
  }
  if (params.group_size <= 0 ||
      params.group_size > static_cast<int>(compounds.size()) ||
      params.group_size > static_cast<int>(controls.size())) {
    throw ConfigError("compound experiment: group_size exceeds list sizes");
  }
  if (params.rounds <= 0) {
    throw ConfigError("compound experiment: rounds must be positive");
  }

  // Class lookup by normalized surface; overlaps between the lists would make
  // instances unclassifiable.
  struct ClassInfo {
    bool is_compound = false;
    Keyword keyword;
  };
  std::unordered_map<std::string, ClassInfo> classes;
  Lexicon constituent_lexicon;
  std::vector<std::string> mixed;
  auto norm_key = [&](const std::string& word) {
    Keyword kw = make_keyword(word, cfg.policy);
    std::string key;
    for (size_t i = 0; i < kw.parts.size(); ++i) {
      if (i) key += ' ';
      key += kw.parts[i];
    }
    return std::make_pair(key, kw);
  };
  for (const CompoundEntry& e : compounds) {
    auto [key, kw] = norm_key(e.word);
    if (!classes.emplace(key, ClassInfo{true, kw}).second) {
      throw ConfigError("duplicate compound word: " + e.word);
    }
    constituent_lexicon.insert(make_keyword(e.left, cfg.policy).parts[0]);
    constituent_lexicon.insert(make_keyword(e.right, cfg.policy).parts[0]);
    mixed.push_back(e.word);
  }
  for (const std::string& w : controls) {
    auto [key, kw] = norm_key(w);
    if (!classes.emplace(key, ClassInfo{false, kw}).second) {
      throw ConfigError("control word overlaps the compound list: " + w);
    }
    mixed.push_back(w);
  }

  std::vector<PlannedTrial> plan;
  const std::string id = params.name;
  const int groups_per_round =
      static_cast<int>(mixed.size()) / params.group_size;
  int trial_index = 0;
  for (int r = 0; r < params.rounds; ++r) {
    std::vector<std::string> shuffled = mixed;
    rng::SplitMix gen(
        rng::keyed({cfg.seed, rng::hash_str(id), static_cast<uint64_t>(r)}));
    gen.shuffle(shuffled);
    for (int g = 0; g < groups_per_round; ++g) {
      std::vector<std::string> group(
          shuffled.begin() + static_cast<long>(g) * params.group_size,
          shuffled.begin() + static_cast<long>(g + 1) * params.group_size);
      plan.push_back({id, trial_index, std::move(group), cfg.strategy, cfg.K,
                      trial_seed_for(cfg, id, trial_index)});
      ++trial_index;
    }
  }

  CompoundResult result;
  result.run = execute_trials(cfg, plan);

  for (const TrialRecord& rec : result.run.records) {
    const TokenizedText final_tokens =
        normalize_and_tokenize(rec.outcome.final_text, rec.policy);
    for (const KeywordOutcome& k : rec.metrics.per_keyword) {
      auto [key, kw] = norm_key(k.keyword);
      const ClassInfo& info = classes.at(key);
      if (!info.is_compound) {
        ++result.control_instances;
        if (k.satisfied) ++result.control_satisfied;
        continue;
      }
      ++result.compound_instances;
      if (k.satisfied) {
        ++result.compound_satisfied;
        continue;
      }
      ++result.compound_unsatisfied;
      if (detect_compound_split(info.keyword, final_tokens, constituent_lexicon)) {
        ++result.splits_detected;
      }
    }
  }

  auto rate = [](size_t num, size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  result.compound_coverage =
      rate(result.compound_satisfied, result.compound_instances);
  result.control_coverage =
      rate(result.control_satisfied, result.control_instances);
  result.split_rate = rate(result.splits_detected,
                           result.splits_detected + result.compound_satisfied);
  result.split_rate_unsatisfied =
      rate(result.splits_detected, result.compound_unsatisfied);
  return result;
}

std::string compound_csv(const std::string& name, const CompoundResult& r) {
  std::string out =
      "experiment_id,class,instances,satisfied,coverage,splits_detected,"
      "split_rate,split_rate_unsatisfied\n";
  out += name + ",compound," + std::to_string(r.compound_instances) + "," +
         std::to_string(r.compound_satisfied) + "," + fmt6(r.compound_coverage) +
         "," + std::to_string(r.splits_detected) + "," + fmt6(r.split_rate) +
         "," + fmt6(r.split_rate_unsatisfied) + "\n";
  out += name + ",control," + std::to_string(r.control_instances) + "," +
         std::to_string(r.control_satisfied) + "," + fmt6(r.control_coverage) +
         ",,,\n";
  return out;
}

void write_compound_csv(const std::string& path, const std::string& name,
                        const CompoundResult& result) {
  write_text_file(path, compound_csv(name, result));
}

// ---------------------------------------------------------------------------
// Decoding parameter sweep
// ---------------------------------------------------------------------------

void SweepParams::apply_default_grids() {
  if (temperatures.empty()) {
    for (int i = 1; i <= 20; ++i) temperatures.push_back(0.05 * i);
  }
  if (top_p_values.empty()) {
    for (int i = 1; i <= 20; ++i) top_p_values.push_back(0.05 * i);
  }
}

SweepResult run_decoding_sweep(const RunnerConfig& cfg, const SweepParams& raw) {
  SweepParams params = raw;
  params.apply_default_grids();
  if (params.instances <= 0 || params.keywords_per_instance <= 0) {
    throw ConfigError("decoding_sweep: instances and keyword count must be positive");
  }

  const auto sets =
      materialize_sets(params.source, params.keywords_per_instance,
                       params.instances, rng::hash_str(params.name));

  struct Cell {
    std::string axis;
    std::string label;
    double value;
    DecodingParams params;
  };
  std::vector<Cell> cells;
  for (double t : params.temperatures) {
    DecodingParams p = cfg.params;
    p.temperature = t;
    cells.push_back({"temperature", fmt2(t), t, p});
  }
  SweepResult result;
  if (cfg.backend->supports_top_k()) {
    for (int k : params.top_k_values) {
      DecodingParams p = cfg.params;
      p.top_k = k;
      cells.push_back({"top_k", std::to_string(k), static_cast<double>(k), p});
    }
  } else {
    result.top_k_skipped = true;
    std::cerr << "[decoding_sweep] backend \"" << cfg.backend->id()
              << "\" does not support top_k; skipping that axis\n";
  }
  for (double p_val : params.top_p_values) {
    DecodingParams p = cfg.params;
    p.top_p = p_val;
    cells.push_back({"top_p", fmt2(p_val), p_val, p});
  }

  std::vector<PlannedTrial> plan;
  for (const Cell& cell : cells) {
    const std::string id = params.name + "/" + cell.axis + "=" + cell.label;
    for (int i = 0; i < params.instances; ++i) {
      PlannedTrial t{id,      i,     sets[static_cast<size_t>(i)],
                     StrategyKind::vanilla, 0, trial_seed_for(cfg, id, i)};
      t.params_override = cell.params;
      plan.push_back(std::move(t));
    }
  }

  result.run = execute_trials(cfg, plan);

  std::map<std::string, std::vector<const TrialRecord*>> by_id;
  for (const TrialRecord& r : result.run.records) {
    by_id[r.experiment_id].push_back(&r);
  }

  std::map<std::string, SweepAxisGrid> grids;
  for (const Cell& cell : cells) {
    const std::string id = params.name + "/" + cell.axis + "=" + cell.label;
    auto it = by_id.find(id);
    if (it == by_id.end()) continue;

    double sum = 0.0;
    for (const TrialRecord* r : it->second) sum += r->metrics.keyword_coverage;
    result.cells.push_back({cell.axis, cell.label, cell.value,
                            sum / static_cast<double>(it->second.size()),
                            it->second.size()});

    SweepAxisGrid& grid = grids[cell.axis];
    grid.axis = cell.axis;
    grid.value_labels.push_back(cell.label);
    if (grid.coverage.empty()) {
      grid.coverage.resize(static_cast<size_t>(params.instances));
    }
    std::vector<double> column(static_cast<size_t>(params.instances), 0.0);
    for (const TrialRecord* r : it->second) {
      column[static_cast<size_t>(r->trial_index)] = r->metrics.keyword_coverage;
    }
    for (int i = 0; i < params.instances; ++i) {
      grid.coverage[static_cast<size_t>(i)].push_back(
          column[static_cast<size_t>(i)]);
    }
  }
  for (auto& [axis, grid] : grids) result.grids.push_back(std::move(grid));
  return result;
}

std::string sweep_grid_csv(const SweepAxisGrid& grid) {
  std::string out = "instance";
  for (const std::string& label : grid.value_labels) out += "," + label;
  out += "\n";
  for (size_t i = 0; i < grid.coverage.size(); ++i) {
    out += std::to_string(i);
    for (double v : grid.coverage[i]) out += "," + fmt6(v);
    out += "\n";
  }
  return out;
}

void write_sweep_grid_csv(const std::string& path, const SweepAxisGrid& grid) {
  write_text_file(path, sweep_grid_csv(grid));
}

// ---------------------------------------------------------------------------
// Downstream tasks
// ---------------------------------------------------------------------------

std::vector<int> DownstreamParams::effective_n_list() const {
  if (!n_list.empty()) return n_list;
  if (task == "profile") return {5, 10};
  return {5, 10, 15};
}

DownstreamResult run_downstream(const RunnerConfig& cfg,
                                const TemplateLibrary& templates,
                                const DownstreamParams& params) {
  if (params.task != "recipe" && params.task != "table_to_text" &&
      params.task != "profile") {
    throw ConfigError("downstream: unknown task \"" + params.task + "\"");
  }
  if (params.data_file.empty()) {
    throw ConfigError("downstream: data_file is required");
  }

  RunnerConfig task_cfg = cfg;
  task_cfg.tpl = templates.get(params.task);

  KeywordSource source;
  source.kind = KeywordSource::Kind::sampled_pool;
  source.path = params.data_file;
  source.seed = params.source_seed;

  std::vector<PlannedTrial> plan;
  for (int n : params.effective_n_list()) {
    const std::string id =
        params.name + "/" + params.task + "/n=" + std::to_string(n);
    const auto sets =
        materialize_sets(source, n, params.sets_per_n, rng::hash_str(id));
    for (int t = 0; t < params.sets_per_n; ++t) {
      plan.push_back({id, t, sets[static_cast<size_t>(t)], cfg.strategy, cfg.K,
                      trial_seed_for(cfg, id, t)});
    }
  }

  DownstreamResult result;
  result.run = execute_trials(task_cfg, plan);
  result.rows = summarize_by_experiment(result.run.records);
  return result;
}

// ---------------------------------------------------------------------------
// Strategy comparison
// ---------------------------------------------------------------------------

ComparisonResult run_strategy_comparison(const RunnerConfig& cfg,
                                         const StrategyComparisonParams& params) {
  if (params.k_list.empty()) {
    throw ConfigError("strategy_comparison: k_list must not be empty");
  }
  if (params.trials <= 0) {
    throw ConfigError("strategy_comparison: trials must be positive");
  }

  // The same keyword sets are used at every (strategy, K) point.
  const auto sets = materialize_sets(params.source, params.m, params.trials,
                                     rng::hash_str(params.name + "/sets"));

  std::vector<PlannedTrial> plan;
  for (StrategyKind strategy : params.strategies) {
    for (int k : params.k_list) {
      if (k < 0) throw ConfigError("strategy_comparison: K must be >= 0");
      const std::string id = params.name + "/" + to_string(strategy) +
                             "/K=" + std::to_string(k);
      for (int t = 0; t < params.trials; ++t) {
        plan.push_back({id, t, sets[static_cast<size_t>(t)], strategy, k,
                        trial_seed_for(cfg, id, t)});
      }
    }
  }

  ComparisonResult result;
  result.run = execute_trials(cfg, plan);

  std::map<std::string, std::vector<TrialMetrics>> by_id;
  for (const TrialRecord& r : result.run.records) {
    by_id[r.experiment_id].push_back(r.metrics);
  }
  for (StrategyKind strategy : params.strategies) {
    for (int k : params.k_list) {
      const std::string id = params.name + "/" + to_string(strategy) +
                             "/K=" + std::to_string(k);
      auto it = by_id.find(id);
      if (it == by_id.end()) continue;
      ComparisonPoint point;
      point.strategy = strategy;
      point.K = k;
      point.summary = aggregate(it->second);
      if (cfg.synthetic_oracle && cfg.synthetic_oracle->independence_regime()) {
        point.implied_success = implied_instance_success(
            *cfg.synthetic_oracle, static_cast<size_t>(params.m), strategy, k);
      }
      result.points.push_back(std::move(point));
    }
  }
  return result;
}

std::string comparison_csv(const std::string& name, const ComparisonResult& r) {
  std::string out =
      "experiment_id,strategy,K,n_trials,mean_success,error_rate,ci_low,ci_high,"
      "implied_success,implied_error\n";
  for (const ComparisonPoint& p : r.points) {
    out += name + "/" + to_string(p.strategy) + "/K=" + std::to_string(p.K) +
           "," + to_string(p.strategy) + "," + std::to_string(p.K) + "," +
           std::to_string(p.summary.n_trials) + "," +
           fmt6(p.summary.mean_instance_success) + "," +
           fmt6(p.summary.error_rate) + "," + fmt6(p.summary.ci_low) + "," +
           fmt6(p.summary.ci_high) + ",";
    if (p.implied_success) {
      out += fmt6(*p.implied_success) + "," + fmt6(1.0 - *p.implied_success);
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

void write_comparison_csv(const std::string& path, const std::string& name,
                          const ComparisonResult& result) {
  write_text_file(path, comparison_csv(name, result));
}

}  // namespace lexcon
