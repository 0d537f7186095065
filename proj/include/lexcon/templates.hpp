#pragma once

#include "lexcon/text.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace lexcon {

/// A prompt preamble with exactly one {keywords} placeholder and, optionally,
/// an {examples} placeholder for few-shot exemplar text.
struct PromptTemplate {
  std::string name;
  std::string preamble;
  std::string keyword_joiner = ", ";
};

/// Preamble with keywords joined in X's order. Throws ConfigError if the
/// placeholder is missing (or duplicated) or X is empty.
std::string render_prompt(const PromptTemplate& tpl, const KeywordSet& X,
                          const std::string& examples = "");

/// Generic placeholder substitution for non-keyword templates
/// (quality_eval's {example}/{text}, dnc_rewrite's {text}).
std::string render_placeholders(
    std::string text,
    const std::vector<std::pair<std::string, std::string>>& values);

/// Named template registry: the built-in set, optionally overlaid with
/// *.txt files from a directory (file stem = template name, file content =
/// preamble). Overlays replace the preamble; a same-named built-in keeps its
/// joiner.
class TemplateLibrary {
 public:
  /// Built-ins: sentence, recipe, table_to_text, profile, quality_eval,
  /// dnc_rewrite.
  static TemplateLibrary builtins();

  /// Built-ins overlaid with a directory of template files. Throws
  /// ConfigError if the directory does not exist.
  static TemplateLibrary with_directory(const std::filesystem::path& dir);

  /// Throws ConfigError for unknown names.
  const PromptTemplate& get(const std::string& name) const;

  bool contains(const std::string& name) const;
  void put(PromptTemplate tpl);

  /// Sorted (name, origin) pairs, origin in {"builtin", "file"}.
  std::vector<std::pair<std::string, std::string>> list() const;

 private:
  std::map<std::string, PromptTemplate> templates_;
  std::map<std::string, std::string> origin_;
};

}  // namespace lexcon
