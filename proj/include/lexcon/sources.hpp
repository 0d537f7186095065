#pragma once

#include "lexcon/synthetic.hpp"
#include "lexcon/text.hpp"

#include <string>
#include <vector>

namespace lexcon {

/// Where experiment keyword sets come from.
struct KeywordSource {
  enum class Kind {
    file_sets,       // JSONL rows {"keywords": [...]}
    sampled_pool,    // one word per line; sets drawn without replacement
    commongen_file,  // JSONL rows {"concepts": [...], "references": ignored}
  };
  Kind kind = Kind::sampled_pool;
  std::string path;
  uint64_t seed = 0;
};

KeywordSource::Kind source_kind_from_string(const std::string& s);
const char* to_string(KeywordSource::Kind kind);

/// One word per line, file order preserved, duplicates dropped.
std::vector<std::string> load_word_pool(const std::string& path);

/// Ordered keyword sets from a JSONL file; `field` names the array field.
std::vector<std::vector<std::string>> load_jsonl_sets(const std::string& path,
                                                      const std::string& field);

struct CompoundEntry {
  std::string word;
  std::string left;
  std::string right;
};

/// "word TAB part1 TAB part2" rows, file order preserved.
std::vector<CompoundEntry> load_compound_entries(const std::string& path);

/// Normalized surface -> constituent pair, for the synthetic generator.
CompoundLexicon compound_lexicon(const std::vector<CompoundEntry>& entries,
                                 const MatchPolicy& policy = {});

/// `count` keyword sets of size n. Pool sources draw without replacement
/// within a set; set sources sample (without replacement) among the stored
/// sets of exactly size n. Throws ConfigError when the source cannot supply
/// the request. seed_salt separates draws made by different experiment
/// groups.
std::vector<std::vector<std::string>> materialize_sets(const KeywordSource& src,
                                                       int n, int count,
                                                       uint64_t seed_salt);

}  // namespace lexcon
