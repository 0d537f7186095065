#include "lexcon/text.hpp"

#include "lexcon/error.hpp"

#include <algorithm>
#include <array>
#include <fstream>

namespace lexcon {
namespace {

// ---------------------------------------------------------------------------
// UTF-8 and Unicode tables
//
// The normalizer covers the Latin repertoire through U+017F: simple lowercase
// mapping plus canonical composition of base+combining-mark pairs whose
// composed form lies in Latin-1 Supplement or Latin Extended-A. Combining
// marks that do not compose into that repertoire are ignored. This keeps the
// tokenizer bit-reproducible without pulling in ICU.
// ---------------------------------------------------------------------------

struct LowerPair {
  uint16_t from, to;
};

constexpr LowerPair kLowerPairs[] = {
    {0x00C0,0x00E0},{0x00C1,0x00E1},{0x00C2,0x00E2},{0x00C3,0x00E3},{0x00C4,0x00E4},{0x00C5,0x00E5},
    {0x00C6,0x00E6},{0x00C7,0x00E7},{0x00C8,0x00E8},{0x00C9,0x00E9},{0x00CA,0x00EA},{0x00CB,0x00EB},
    {0x00CC,0x00EC},{0x00CD,0x00ED},{0x00CE,0x00EE},{0x00CF,0x00EF},{0x00D0,0x00F0},{0x00D1,0x00F1},
    {0x00D2,0x00F2},{0x00D3,0x00F3},{0x00D4,0x00F4},{0x00D5,0x00F5},{0x00D6,0x00F6},{0x00D8,0x00F8},
    {0x00D9,0x00F9},{0x00DA,0x00FA},{0x00DB,0x00FB},{0x00DC,0x00FC},{0x00DD,0x00FD},{0x00DE,0x00FE},
    {0x0100,0x0101},{0x0102,0x0103},{0x0104,0x0105},{0x0106,0x0107},{0x0108,0x0109},{0x010A,0x010B},
    {0x010C,0x010D},{0x010E,0x010F},{0x0110,0x0111},{0x0112,0x0113},{0x0114,0x0115},{0x0116,0x0117},
    {0x0118,0x0119},{0x011A,0x011B},{0x011C,0x011D},{0x011E,0x011F},{0x0120,0x0121},{0x0122,0x0123},
    {0x0124,0x0125},{0x0126,0x0127},{0x0128,0x0129},{0x012A,0x012B},{0x012C,0x012D},{0x012E,0x012F},
    {0x0132,0x0133},{0x0134,0x0135},{0x0136,0x0137},{0x0139,0x013A},{0x013B,0x013C},{0x013D,0x013E},
    {0x013F,0x0140},{0x0141,0x0142},{0x0143,0x0144},{0x0145,0x0146},{0x0147,0x0148},{0x014A,0x014B},
    {0x014C,0x014D},{0x014E,0x014F},{0x0150,0x0151},{0x0152,0x0153},{0x0154,0x0155},{0x0156,0x0157},
    {0x0158,0x0159},{0x015A,0x015B},{0x015C,0x015D},{0x015E,0x015F},{0x0160,0x0161},{0x0162,0x0163},
    {0x0164,0x0165},{0x0166,0x0167},{0x0168,0x0169},{0x016A,0x016B},{0x016C,0x016D},{0x016E,0x016F},
    {0x0170,0x0171},{0x0172,0x0173},{0x0174,0x0175},{0x0176,0x0177},{0x0178,0x00FF},{0x0179,0x017A},
    {0x017B,0x017C},{0x017D,0x017E},
};

struct Composition {
  uint16_t base, mark, composed;
};

constexpr Composition kCompositions[] = {
    {0x0041,0x0300,0x00C0},{0x0041,0x0301,0x00C1},{0x0041,0x0302,0x00C2},{0x0041,0x0303,0x00C3},
    {0x0041,0x0304,0x0100},{0x0041,0x0306,0x0102},{0x0041,0x0308,0x00C4},{0x0041,0x030A,0x00C5},
    {0x0041,0x0328,0x0104},{0x0043,0x0301,0x0106},{0x0043,0x0302,0x0108},{0x0043,0x0307,0x010A},
    {0x0043,0x030C,0x010C},{0x0043,0x0327,0x00C7},{0x0044,0x030C,0x010E},{0x0045,0x0300,0x00C8},
    {0x0045,0x0301,0x00C9},{0x0045,0x0302,0x00CA},{0x0045,0x0304,0x0112},{0x0045,0x0306,0x0114},
    {0x0045,0x0307,0x0116},{0x0045,0x0308,0x00CB},{0x0045,0x030C,0x011A},{0x0045,0x0328,0x0118},
    {0x0047,0x0302,0x011C},{0x0047,0x0306,0x011E},{0x0047,0x0307,0x0120},{0x0047,0x0327,0x0122},
    {0x0048,0x0302,0x0124},{0x0049,0x0300,0x00CC},{0x0049,0x0301,0x00CD},{0x0049,0x0302,0x00CE},
    {0x0049,0x0303,0x0128},{0x0049,0x0304,0x012A},{0x0049,0x0306,0x012C},{0x0049,0x0307,0x0130},
    {0x0049,0x0308,0x00CF},{0x0049,0x0328,0x012E},{0x004A,0x0302,0x0134},{0x004B,0x0327,0x0136},
    {0x004C,0x0301,0x0139},{0x004C,0x030C,0x013D},{0x004C,0x0327,0x013B},{0x004E,0x0301,0x0143},
    {0x004E,0x0303,0x00D1},{0x004E,0x030C,0x0147},{0x004E,0x0327,0x0145},{0x004F,0x0300,0x00D2},
    {0x004F,0x0301,0x00D3},{0x004F,0x0302,0x00D4},{0x004F,0x0303,0x00D5},{0x004F,0x0304,0x014C},
    {0x004F,0x0306,0x014E},{0x004F,0x0308,0x00D6},{0x004F,0x030B,0x0150},{0x0052,0x0301,0x0154},
    {0x0052,0x030C,0x0158},{0x0052,0x0327,0x0156},{0x0053,0x0301,0x015A},{0x0053,0x0302,0x015C},
    {0x0053,0x030C,0x0160},{0x0053,0x0327,0x015E},{0x0054,0x030C,0x0164},{0x0054,0x0327,0x0162},
    {0x0055,0x0300,0x00D9},{0x0055,0x0301,0x00DA},{0x0055,0x0302,0x00DB},{0x0055,0x0303,0x0168},
    {0x0055,0x0304,0x016A},{0x0055,0x0306,0x016C},{0x0055,0x0308,0x00DC},{0x0055,0x030A,0x016E},
    {0x0055,0x030B,0x0170},{0x0055,0x0328,0x0172},{0x0057,0x0302,0x0174},{0x0059,0x0301,0x00DD},
    {0x0059,0x0302,0x0176},{0x0059,0x0308,0x0178},{0x005A,0x0301,0x0179},{0x005A,0x0307,0x017B},
    {0x005A,0x030C,0x017D},{0x0061,0x0300,0x00E0},{0x0061,0x0301,0x00E1},{0x0061,0x0302,0x00E2},
    {0x0061,0x0303,0x00E3},{0x0061,0x0304,0x0101},{0x0061,0x0306,0x0103},{0x0061,0x0308,0x00E4},
    {0x0061,0x030A,0x00E5},{0x0061,0x0328,0x0105},{0x0063,0x0301,0x0107},{0x0063,0x0302,0x0109},
    {0x0063,0x0307,0x010B},{0x0063,0x030C,0x010D},{0x0063,0x0327,0x00E7},{0x0064,0x030C,0x010F},
    {0x0065,0x0300,0x00E8},{0x0065,0x0301,0x00E9},{0x0065,0x0302,0x00EA},{0x0065,0x0304,0x0113},
    {0x0065,0x0306,0x0115},{0x0065,0x0307,0x0117},{0x0065,0x0308,0x00EB},{0x0065,0x030C,0x011B},
    {0x0065,0x0328,0x0119},{0x0067,0x0302,0x011D},{0x0067,0x0306,0x011F},{0x0067,0x0307,0x0121},
    {0x0067,0x0327,0x0123},{0x0068,0x0302,0x0125},{0x0069,0x0300,0x00EC},{0x0069,0x0301,0x00ED},
    {0x0069,0x0302,0x00EE},{0x0069,0x0303,0x0129},{0x0069,0x0304,0x012B},{0x0069,0x0306,0x012D},
    {0x0069,0x0308,0x00EF},{0x0069,0x0328,0x012F},{0x006A,0x0302,0x0135},{0x006B,0x0327,0x0137},
    {0x006C,0x0301,0x013A},{0x006C,0x030C,0x013E},{0x006C,0x0327,0x013C},{0x006E,0x0301,0x0144},
    {0x006E,0x0303,0x00F1},{0x006E,0x030C,0x0148},{0x006E,0x0327,0x0146},{0x006F,0x0300,0x00F2},
    {0x006F,0x0301,0x00F3},{0x006F,0x0302,0x00F4},{0x006F,0x0303,0x00F5},{0x006F,0x0304,0x014D},
    {0x006F,0x0306,0x014F},{0x006F,0x0308,0x00F6},{0x006F,0x030B,0x0151},{0x0072,0x0301,0x0155},
    {0x0072,0x030C,0x0159},{0x0072,0x0327,0x0157},{0x0073,0x0301,0x015B},{0x0073,0x0302,0x015D},
    {0x0073,0x030C,0x0161},{0x0073,0x0327,0x015F},{0x0074,0x030C,0x0165},{0x0074,0x0327,0x0163},
    {0x0075,0x0300,0x00F9},{0x0075,0x0301,0x00FA},{0x0075,0x0302,0x00FB},{0x0075,0x0303,0x0169},
    {0x0075,0x0304,0x016B},{0x0075,0x0306,0x016D},{0x0075,0x0308,0x00FC},{0x0075,0x030A,0x016F},
    {0x0075,0x030B,0x0171},{0x0075,0x0328,0x0173},{0x0077,0x0302,0x0175},{0x0079,0x0301,0x00FD},
    {0x0079,0x0302,0x0177},{0x0079,0x0308,0x00FF},{0x007A,0x0301,0x017A},{0x007A,0x0307,0x017C},
    {0x007A,0x030C,0x017E},
};

constexpr uint32_t kReplacement = 0xFFFD;

uint32_t to_lower(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0x17D) {
    for (const auto& p : kLowerPairs) {
      if (p.from == cp) return p.to;
    }
  }
  return cp;
}

bool is_combining_mark(uint32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

uint32_t compose(uint32_t base, uint32_t mark) {
  for (const auto& c : kCompositions) {
    if (c.base == base && c.mark == mark) return c.composed;
  }
  return 0;
}

bool is_word_char(uint32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
      (cp >= '0' && cp <= '9')) {
    return true;
  }
  // Latin letters through U+017F (category L*), excluding multiply/divide signs.
  return (cp == 0x00AA || cp == 0x00B5 || cp == 0x00BA ||
          (cp >= 0x00C0 && cp <= 0x00D6) || (cp >= 0x00D8 && cp <= 0x00F6) ||
          (cp >= 0x00F8 && cp <= 0x017F));
}

bool is_apostrophe(uint32_t cp) { return cp == '\''; }

struct CodePoint {
  uint32_t cp;
  size_t begin;  // byte offset in raw
  size_t end;
};

// Decodes UTF-8; invalid sequences become U+FFFD covering one byte.
std::vector<CodePoint> decode_utf8(std::string_view s) {
  std::vector<CodePoint> out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    uint32_t cp = kReplacement;
    size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0 && i + 1 < s.size() &&
               (static_cast<unsigned char>(s[i + 1]) & 0xC0) == 0x80) {
      cp = (b0 & 0x1Fu) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
      len = 2;
      if (cp < 0x80) cp = kReplacement;
    } else if ((b0 & 0xF0) == 0xE0 && i + 2 < s.size() &&
               (static_cast<unsigned char>(s[i + 1]) & 0xC0) == 0x80 &&
               (static_cast<unsigned char>(s[i + 2]) & 0xC0) == 0x80) {
      cp = (b0 & 0x0Fu) << 12 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6 |
           (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
      len = 3;
      if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) cp = kReplacement;
    } else if ((b0 & 0xF8) == 0xF0 && i + 3 < s.size() &&
               (static_cast<unsigned char>(s[i + 1]) & 0xC0) == 0x80 &&
               (static_cast<unsigned char>(s[i + 2]) & 0xC0) == 0x80 &&
               (static_cast<unsigned char>(s[i + 3]) & 0xC0) == 0x80) {
      cp = (b0 & 0x07u) << 18 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12 |
           (static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6 |
           (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
      len = 4;
      if (cp < 0x10000 || cp > 0x10FFFF) cp = kReplacement;
    }
    if (cp == kReplacement) len = 1;
    out.push_back({cp, i, i + len});
    i += len;
  }
  return out;
}

void encode_utf8(uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Normalization pass: U+2019 -> apostrophe, canonical composition, case fold.
std::vector<CodePoint> normalize_code_points(std::vector<CodePoint> cps,
                                             const MatchPolicy& policy) {
  std::vector<CodePoint> out;
  out.reserve(cps.size());
  for (const CodePoint& c : cps) {
    uint32_t cp = c.cp;
    if (policy.unicode_normalize) {
      if (cp == 0x2019) cp = '\'';  // typographic apostrophe
      if (is_combining_mark(cp) && !out.empty()) {
        if (uint32_t composed = compose(out.back().cp, cp); composed != 0) {
          out.back().cp = composed;
          out.back().end = c.end;
          continue;
        }
        continue;  // uncomposable mark: ignore
      }
    }
    out.push_back({cp, c.begin, c.end});
  }
  if (policy.case_fold) {
    for (CodePoint& c : out) c.cp = to_lower(c.cp);
  }
  return out;
}

bool tokens_equal_morph(const std::string& token, const std::string& part) {
  return token == part || stem(token) == stem(part);
}

bool token_matches(const std::string& token, const std::string& part,
                   const MatchPolicy& policy) {
  if (token == part) return true;
  return policy.morphological && tokens_equal_morph(token, part);
}

std::unordered_set<std::string> token_set(const TokenizedText& text) {
  return {text.tokens.begin(), text.tokens.end()};
}

size_t count_code_points(std::string_view s) {
  size_t n = 0;
  for (char ch : s) {
    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
  }
  return n;
}

}  // namespace

std::string stem(std::string_view token) {
  static constexpr std::array<std::string_view, 5> kSuffixes = {"ing", "ed",
                                                                "es", "ly", "s"};
  for (std::string_view suf : kSuffixes) {
    if (token.size() > suf.size() && token.ends_with(suf) &&
        token.size() - suf.size() >= 3) {
      return std::string(token.substr(0, token.size() - suf.size()));
    }
  }
  return std::string(token);
}

TokenizedText normalize_and_tokenize(std::string_view raw,
                                     const MatchPolicy& policy) {
  TokenizedText out;
  out.raw.assign(raw);
  const std::vector<CodePoint> cps =
      normalize_code_points(decode_utf8(raw), policy);

  std::string token;
  size_t token_begin = 0, token_end = 0;
  auto flush = [&] {
    if (!token.empty()) {
      out.tokens.push_back(std::move(token));
      out.spans.push_back({token_begin, token_end});
      token.clear();
    }
  };

  for (size_t i = 0; i < cps.size(); ++i) {
    const CodePoint& c = cps[i];
    bool joins = is_word_char(c.cp);
    if (!joins && is_apostrophe(c.cp)) {
      // Apostrophes join only between alphanumerics, so quotation marks
      // around a word never end up inside the token.
      joins = !token.empty() && i + 1 < cps.size() && is_word_char(cps[i + 1].cp);
    }
    if (joins) {
      if (token.empty()) token_begin = c.begin;
      encode_utf8(c.cp, token);
      token_end = c.end;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

Keyword make_keyword(std::string_view surface, const MatchPolicy& policy) {
  size_t first = surface.find_first_not_of(" \t\r\n");
  size_t last = surface.find_last_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    throw ConfigError("keyword surface is empty");
  }
  Keyword kw;
  kw.surface = std::string(surface.substr(first, last - first + 1));
  kw.parts = normalize_and_tokenize(kw.surface, policy).tokens;
  if (kw.parts.empty()) {
    throw ConfigError("keyword has no word characters: \"" + kw.surface + "\"");
  }
  return kw;
}

KeywordSet make_keyword_set(const std::vector<std::string>& surfaces,
                            MatchPolicy policy) {
  KeywordSet set;
  set.policy = policy;
  set.keywords.reserve(surfaces.size());
  for (const std::string& s : surfaces) {
    Keyword kw = make_keyword(s, policy);
    for (const Keyword& existing : set.keywords) {
      if (existing.parts == kw.parts) {
        throw ConfigError("duplicate keyword under normalization: \"" + s + "\"");
      }
    }
    set.keywords.push_back(std::move(kw));
  }
  return set;
}

bool contains_keyword(const TokenizedText& text, const Keyword& kw,
                      const MatchPolicy& policy) {
  const size_t k = kw.parts.size();
  if (k == 0 || text.tokens.size() < k) return false;
  for (size_t start = 0; start + k <= text.tokens.size(); ++start) {
    bool all = true;
    for (size_t j = 0; j < k; ++j) {
      if (!token_matches(text.tokens[start + j], kw.parts[j], policy)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

KeywordSet missing_keywords(const KeywordSet& X, const TokenizedText& text) {
  KeywordSet out;
  out.policy = X.policy;
  for (const Keyword& kw : X.keywords) {
    if (!contains_keyword(text, kw, X.policy)) {
      out.keywords.push_back(kw);
    }
  }
  return out;
}

Lexicon load_word_list(const std::string& path, const MatchPolicy& policy) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open word list: " + path);
  Lexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    for (std::string& tok : normalize_and_tokenize(line, policy).tokens) {
      lex.insert(std::move(tok));
    }
  }
  return lex;
}

std::optional<std::pair<std::string, std::string>> detect_compound_split(
    const Keyword& kw, const TokenizedText& text, const Lexicon& lexicon) {
  if (kw.parts.size() != 1) return std::nullopt;
  const std::string& word = kw.parts[0];
  if (count_code_points(word) < 6) return std::nullopt;

  const std::unordered_set<std::string> tokens = token_set(text);

  // Split positions are code-point boundaries, scanned left to right.
  std::vector<size_t> boundaries;  // byte offsets of code point starts
  for (size_t i = 0; i < word.size(); ++i) {
    if ((static_cast<unsigned char>(word[i]) & 0xC0) != 0x80) {
      boundaries.push_back(i);
    }
  }
  boundaries.push_back(word.size());

  const size_t n = boundaries.size() - 1;  // code point count
  for (size_t cut = 3; cut + 3 <= n; ++cut) {
    std::string left = word.substr(0, boundaries[cut]);
    std::string right = word.substr(boundaries[cut]);
    if (!lexicon.empty() &&
        (!lexicon.contains(left) || !lexicon.contains(right))) {
      continue;
    }
    if (tokens.contains(left) && tokens.contains(right)) {
      return std::make_pair(std::move(left), std::move(right));
    }
  }
  return std::nullopt;
}

}  // namespace lexcon
