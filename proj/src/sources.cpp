#include "lexcon/sources.hpp"

#include "lexcon/error.hpp"
#include "lexcon/rng.hpp"

#include <json.hpp>

#include <fstream>
#include <unordered_set>

namespace lexcon {

KeywordSource::Kind source_kind_from_string(const std::string& s) {
  if (s == "file_sets") return KeywordSource::Kind::file_sets;
  if (s == "sampled_pool") return KeywordSource::Kind::sampled_pool;
  if (s == "commongen_file") return KeywordSource::Kind::commongen_file;
  throw ConfigError("unknown keyword source kind: " + s);
}

const char* to_string(KeywordSource::Kind kind) {
  switch (kind) {
    case KeywordSource::Kind::file_sets: return "file_sets";
    case KeywordSource::Kind::sampled_pool: return "sampled_pool";
    case KeywordSource::Kind::commongen_file: return "commongen_file";
  }
  return "sampled_pool";
}

std::vector<std::string> load_word_pool(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open word pool: " + path);
  std::vector<std::string> pool;
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    std::string word = line.substr(start);
    if (seen.insert(word).second) pool.push_back(std::move(word));
  }
  return pool;
}

std::vector<std::vector<std::string>> load_jsonl_sets(const std::string& path,
                                                      const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open keyword set file: " + path);
  std::vector<std::vector<std::string>> sets;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": invalid JSON: " + e.what());
    }
    if (!row.contains(field) || !row[field].is_array()) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": missing array field \"" + field + "\"");
    }
    sets.push_back(row[field].get<std::vector<std::string>>());
  }
  return sets;
}

std::vector<CompoundEntry> load_compound_entries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open compound file: " + path);
  std::vector<CompoundEntry> entries;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected word TAB part1 TAB part2");
    }
    entries.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                       line.substr(t2 + 1)});
  }
  return entries;
}

CompoundLexicon compound_lexicon(const std::vector<CompoundEntry>& entries,
                                 const MatchPolicy& policy) {
  CompoundLexicon lex;
  for (const CompoundEntry& e : entries) {
    Keyword kw = make_keyword(e.word, policy);
    if (kw.parts.size() != 1) {
      throw ConfigError("compound word must be a single token: " + e.word);
    }
    lex[kw.parts[0]] = {make_keyword(e.left, policy).parts[0],
                        make_keyword(e.right, policy).parts[0]};
  }
  return lex;
}

namespace {

std::vector<std::string> sample_without_replacement(
    const std::vector<std::string>& pool, int n, rng::SplitMix& gen) {
  // Partial Fisher-Yates over an index vector.
  std::vector<size_t> idx(pool.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    size_t j = static_cast<size_t>(k) +
               static_cast<size_t>(gen.next_below(idx.size() - static_cast<size_t>(k)));
    std::swap(idx[static_cast<size_t>(k)], idx[j]);
    out.push_back(pool[idx[static_cast<size_t>(k)]]);
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> materialize_sets(const KeywordSource& src,
                                                       int n, int count,
                                                       uint64_t seed_salt) {
  if (n <= 0 || count <= 0) {
    throw ConfigError("materialize_sets: n and count must be positive");
  }
  std::vector<std::vector<std::string>> out;
  out.reserve(static_cast<size_t>(count));

  if (src.kind == KeywordSource::Kind::sampled_pool) {
    const std::vector<std::string> pool = load_word_pool(src.path);
    if (pool.size() < static_cast<size_t>(n)) {
      throw ConfigError("word pool " + src.path + " has " +
                        std::to_string(pool.size()) + " words, need " +
                        std::to_string(n));
    }
    for (int s = 0; s < count; ++s) {
      rng::SplitMix gen(rng::keyed({src.seed, seed_salt, static_cast<uint64_t>(n),
                                    static_cast<uint64_t>(s)}));
      out.push_back(sample_without_replacement(pool, n, gen));
    }
    return out;
  }

  const std::string field =
      src.kind == KeywordSource::Kind::commongen_file ? "concepts" : "keywords";
  std::vector<std::vector<std::string>> all = load_jsonl_sets(src.path, field);
  std::vector<std::vector<std::string>> matching;
  for (auto& set : all) {
    if (set.size() == static_cast<size_t>(n)) matching.push_back(std::move(set));
  }
  if (matching.size() < static_cast<size_t>(count)) {
    throw ConfigError(src.path + " holds " + std::to_string(matching.size()) +
                      " sets of size " + std::to_string(n) + ", need " +
                      std::to_string(count));
  }
  rng::SplitMix gen(rng::keyed({src.seed, seed_salt, static_cast<uint64_t>(n)}));
  std::vector<size_t> idx(matching.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  gen.shuffle(idx);
  for (int s = 0; s < count; ++s) {
    out.push_back(std::move(matching[idx[static_cast<size_t>(s)]]));
  }
  return out;
}

}  // namespace lexcon
