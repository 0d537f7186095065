#include "lexcon/synthetic.hpp"

#include "lexcon/error.hpp"
#include "lexcon/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lexcon {
namespace {

// Lane salts for the per-keyword draws.
constexpr uint64_t kIncludeLane = 0;
constexpr uint64_t kSplitLane = 1;

}  // namespace

void SyntheticModelConfig::validate() const {
  if (base_coverage < 0.0 || base_coverage > 1.0) {
    throw ConfigError("synthetic: base_coverage must be in [0, 1]");
  }
  if (bias_strength < 0.0) {
    throw ConfigError("synthetic: bias_strength must be >= 0");
  }
  if (count_decay < 0.0 || count_decay > 1.0) {
    throw ConfigError("synthetic: count_decay must be in [0, 1]");
  }
  if (compound_split_prob < 0.0 || compound_split_prob > 1.0) {
    throw ConfigError("synthetic: compound_split_prob must be in [0, 1]");
  }
}

const char* to_string(SyntheticModelConfig::BiasMode mode) {
  switch (mode) {
    case SyntheticModelConfig::BiasMode::none: return "none";
    case SyntheticModelConfig::BiasMode::primacy: return "primacy";
    case SyntheticModelConfig::BiasMode::recency: return "recency";
  }
  return "none";
}

SyntheticModelConfig::BiasMode bias_mode_from_string(const std::string& s) {
  if (s == "none") return SyntheticModelConfig::BiasMode::none;
  if (s == "primacy") return SyntheticModelConfig::BiasMode::primacy;
  if (s == "recency") return SyntheticModelConfig::BiasMode::recency;
  throw ConfigError("unknown bias mode: " + s);
}

double inclusion_probability(const SyntheticModelConfig& cfg, size_t position,
                             size_t m) {
  double w = 1.0;
  if (m > 1) {
    const double i = static_cast<double>(position);
    const double span = static_cast<double>(m - 1);
    switch (cfg.bias_mode) {
      case SyntheticModelConfig::BiasMode::none: break;
      case SyntheticModelConfig::BiasMode::primacy:
        w = 1.0 + cfg.bias_strength * (span - i) / span;
        break;
      case SyntheticModelConfig::BiasMode::recency:
        w = 1.0 + cfg.bias_strength * i / span;
        break;
    }
  }
  const double decay =
      m > 5 ? std::pow(cfg.count_decay, static_cast<double>(m - 5)) : 1.0;
  return std::clamp(cfg.base_coverage * decay * w, 0.0, 1.0);
}

GenerationResult synth_generate(const KeywordSet& X,
                                const SyntheticModelConfig& cfg,
                                uint64_t call_index,
                                const CompoundLexicon& compounds) {
  if (X.empty()) {
    throw std::invalid_argument("synth_generate: empty keyword set");
  }
  const size_t m = X.size();
  std::string text = "A story about";
  bool any = false;
  for (size_t i = 0; i < m; ++i) {
    const Keyword& kw = X.keywords[i];
    const double p = inclusion_probability(cfg, i, m);
    if (rng::uniform01({cfg.seed, call_index, i, kIncludeLane}) >= p) continue;

    std::string emitted = kw.surface;
    if (kw.parts.size() == 1) {
      if (auto it = compounds.find(kw.parts[0]); it != compounds.end()) {
        if (rng::uniform01({cfg.seed, call_index, i, kSplitLane}) <
            cfg.compound_split_prob) {
          emitted = it->second.first + " " + it->second.second;
        }
      }
    }
    text += any ? ", " : " ";
    text += emitted;
    any = true;
  }
  text += any ? "." : " nothing.";

  GenerationResult res;
  res.text = std::move(text);
  res.backend_id = "synthetic";
  return res;
}

const char* to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::vanilla: return "vanilla";
    case StrategyKind::rj: return "rj";
    case StrategyKind::dnc: return "dnc";
  }
  return "vanilla";
}

StrategyKind strategy_kind_from_string(const std::string& s) {
  if (s == "vanilla") return StrategyKind::vanilla;
  if (s == "rj") return StrategyKind::rj;
  if (s == "dnc") return StrategyKind::dnc;
  throw ConfigError("unknown strategy: " + s);
}

double implied_instance_success(const SyntheticModelConfig& cfg, size_t m,
                                StrategyKind strategy, int K) {
  if (!cfg.independence_regime()) {
    throw std::invalid_argument(
        "implied_instance_success: defined only for bias none, d=1, c=0");
  }
  if (K < 0) {
    throw std::invalid_argument("implied_instance_success: K must be >= 0");
  }
  const double p0 = cfg.base_coverage;
  const double md = static_cast<double>(m);
  const double attempts = static_cast<double>(K + 1);
  switch (strategy) {
    case StrategyKind::vanilla:
      return std::pow(p0, md);
    case StrategyKind::rj:
      return 1.0 - std::pow(1.0 - std::pow(p0, md), attempts);
    case StrategyKind::dnc:
      return std::pow(1.0 - std::pow(1.0 - p0, attempts), md);
  }
  return 0.0;
}

SyntheticBackend::SyntheticBackend(SyntheticModelConfig cfg,
                                   CompoundLexicon compounds, MatchPolicy policy)
    : cfg_(cfg), compounds_(std::move(compounds)), policy_(policy) {
  cfg_.validate();
}

GenerationResult SyntheticBackend::generate(const GenerationRequest& req) {
  req.validate();
  if (req.constraint_keywords.empty()) {
    throw ConfigError(
        "synthetic backend requires constraint_keywords on the request");
  }
  KeywordSet X = make_keyword_set(req.constraint_keywords, policy_);
  const uint64_t call_index =
      req.params.seed ? *req.params.seed : counter_.fetch_add(1);
  return synth_generate(X, cfg_, call_index, compounds_);
}

}  // namespace lexcon
