#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace lexcon {

/// Pure configuration of keyword matching. Identical policy + identical
/// inputs always give identical results.
struct MatchPolicy {
  bool case_fold = true;          // fold to lowercase before comparing
  bool unicode_normalize = true;  // canonical composition (Latin repertoire)
  bool morphological = false;     // opt-in suffix stripping; default is exact
                                  // whole-token matching
  bool operator==(const MatchPolicy&) const = default;
};

/// One constraint keyword. `parts` is the normalized word-token sequence of
/// the surface, so multi-word keywords ("ice cream") match as contiguous
/// token runs.
struct Keyword {
  std::string surface;
  std::vector<std::string> parts;
};

/// Ordered constraint set. Order is the prompt position and is preserved
/// everywhere (position-bias analysis depends on it).
struct KeywordSet {
  std::vector<Keyword> keywords;
  MatchPolicy policy;

  size_t size() const { return keywords.size(); }
  bool empty() const { return keywords.empty(); }
};

struct TokenSpan {
  size_t begin = 0;  // byte offset into raw
  size_t end = 0;    // one past the last byte
};

/// A text split into normalized word tokens. Tokens are maximal runs of
/// letters/digits, with apostrophes joining only between alphanumerics
/// ("don't" is one token, a quoted 'word' is not captured with its quotes).
struct TokenizedText {
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<TokenSpan> spans;
};

/// Throws ConfigError if the surface has no word characters after trimming.
Keyword make_keyword(std::string_view surface, const MatchPolicy& policy = {});

/// Throws ConfigError on duplicates under normalization.
KeywordSet make_keyword_set(const std::vector<std::string>& surfaces,
                            MatchPolicy policy = {});

/// Total function; empty input gives empty token list.
TokenizedText normalize_and_tokenize(std::string_view raw,
                                     const MatchPolicy& policy = {});

/// True iff kw.parts occur as a contiguous token subsequence of text.tokens.
/// With policy.morphological, tokens also match after suffix stripping.
bool contains_keyword(const TokenizedText& text, const Keyword& kw,
                      const MatchPolicy& policy);

/// The keywords of X not contained in text, order preserved.
KeywordSet missing_keywords(const KeywordSet& X, const TokenizedText& text);

using Lexicon = std::unordered_set<std::string>;

/// Loads a one-word-per-line UTF-8 file, normalizing each entry.
/// Throws ConfigError if the file cannot be read.
Lexicon load_word_list(const std::string& path, const MatchPolicy& policy = {});

/// First left-to-right two-way split of a single-token keyword such that both
/// halves have >= 3 characters, both are in the lexicon (empty lexicon skips
/// the check), and both appear as tokens of `text`. Detects the failure mode
/// where a model emits a compound's constituents separately.
std::optional<std::pair<std::string, std::string>> detect_compound_split(
    const Keyword& kw, const TokenizedText& text, const Lexicon& lexicon = {});

/// Suffix stripper used by morphological matching: removes the first of
/// {ing, ed, es, ly, s} whose removal leaves at least 3 characters.
std::string stem(std::string_view token);

}  // namespace lexcon
