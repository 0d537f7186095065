#include "lexcon/templates.hpp"

#include "lexcon/error.hpp"

#include <fstream>
#include <sstream>

namespace lexcon {
namespace {

size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  size_t count = 0, pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

std::string replace_all(std::string text, const std::string& from,
                        const std::string& to) {
  size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

const char* kSentence =
    "Generate a sentence with the following keywords: {keywords}.";

const char* kRecipe =
    "Here are some examples.\n"
    "\n"
    "Generate a recipe using the following ingredients: milk, beef, rice.\n"
    "Recipe: Creamy Beef and Rice Casserole. Cook one cup of rice and set it "
    "aside. Brown one pound of beef in a skillet and drain the fat. Combine "
    "the rice, beef, and two cups of milk in a casserole dish, season well, "
    "and bake until golden.\n"
    "\n"
    "Generate a recipe using the following ingredients: chicken, garlic, "
    "lemon.\n"
    "Recipe: Lemon Garlic Chicken. Rub the chicken with crushed garlic, "
    "squeeze a lemon over it, and roast until the skin crisps. Rest it five "
    "minutes before carving.\n"
    "\n"
    "Generate a recipe using the following ingredients: tomato, basil, "
    "pasta.\n"
    "Recipe: Tomato Basil Pasta. Boil the pasta until al dente. Simmer a "
    "chopped tomato in olive oil, toss with the pasta, and finish with torn "
    "basil leaves.\n"
    "\n"
    "Generate a recipe using the following ingredients: {keywords}.\n"
    "Recipe:";

const char* kTableToText =
    "Here are some examples.\n"
    "\n"
    "Generate a short paragraph to summarize the table content. Table "
    "fields: name, nationality, birth date, occupation.\n"
    "Summary: Walter Extra is a German aircraft designer, an aviation "
    "nationality and occupation note alongside his 1954 birth date.\n"
    "\n"
    "Generate a short paragraph to summarize the table content. Table "
    "fields: title, author, year.\n"
    "Summary: The table records a title with its author and the year it "
    "appeared.\n"
    "\n"
    "Generate a short paragraph to summarize the table content. Table "
    "fields: team, coach, stadium.\n"
    "Summary: The team is led by its coach and hosts matches at the home "
    "stadium.\n"
    "\n"
    "Generate a short paragraph to summarize the table content. Table "
    "fields: {keywords}.\n"
    "Summary:";

const char* kProfile =
    "Here are some examples.\n"
    "\n"
    "Write a profiling paragraph that contains all features of the client: "
    "Name: Ben Smith; Age: 29; Occupation: Engineer; Location: Chicago; "
    "Housing: Rent.\n"
    "Profile: Ben Smith is a 29-year-old engineer residing in Chicago who "
    "rents his housing, suggesting flexibility in his living arrangements.\n"
    "\n"
    "Write a profiling paragraph that contains all features of the client: "
    "Name: Ana Ruiz; Age: 41; Education: Master; Occupation: Analyst.\n"
    "Profile: Ana Ruiz, 41, holds a Master degree and works as an analyst, "
    "a profile pointing to steady professional growth.\n"
    "\n"
    "Write a profiling paragraph that contains all features of the client: "
    "Name: Lee Park; Age: 33; FICO: 720; Housing: Own.\n"
    "Profile: Lee Park, 33, owns a home and carries a FICO score of 720, "
    "indicating solid financial standing.\n"
    "\n"
    "Write a profiling paragraph that contains all features of the client: "
    "{keywords}.\n"
    "Profile:";

const char* kQualityEval =
    "Please evaluate the following text based on three criteria: coherence, "
    "fluency, and overall readability. Provide a score from 1 to 5 for each "
    "criterion, along with a brief explanation for your rating. Use the "
    "following definitions for the criteria:\n"
    "\n"
    "- Coherence: how logically consistent and well-organized the text is.\n"
    "- Fluency: how smoothly and naturally the text reads.\n"
    "- Readability: how easy the text is to read and understand.\n"
    "\n"
    "Example evaluation:\n"
    "{example}\n"
    "\n"
    "Text to evaluate:\n"
    "\"{text}\"\n"
    "\n"
    "Report each score on its own line in the form \"Coherence: N\", "
    "\"Fluency: N\", \"Readability: N\".";

const char* kDncRewrite =
    "Merge the following sentences into one cohesive paragraph. Keep every "
    "word of the sentences; do not drop or replace any word.\n"
    "\n"
    "{text}";

}  // namespace

std::string render_prompt(const PromptTemplate& tpl, const KeywordSet& X,
                          const std::string& examples) {
  if (X.empty()) {
    throw ConfigError("render_prompt: empty keyword set");
  }
  const size_t n = count_occurrences(tpl.preamble, "{keywords}");
  if (n != 1) {
    throw ConfigError("template \"" + tpl.name + "\" must contain exactly one "
                      "{keywords} placeholder (found " + std::to_string(n) + ")");
  }
  std::string joined;
  for (size_t i = 0; i < X.keywords.size(); ++i) {
    if (i > 0) joined += tpl.keyword_joiner;
    joined += X.keywords[i].surface;
  }
  std::string out = replace_all(tpl.preamble, "{examples}", examples);
  return replace_all(std::move(out), "{keywords}", joined);
}

std::string render_placeholders(
    std::string text,
    const std::vector<std::pair<std::string, std::string>>& values) {
  for (const auto& [key, value] : values) {
    text = replace_all(std::move(text), "{" + key + "}", value);
  }
  return text;
}

TemplateLibrary TemplateLibrary::builtins() {
  TemplateLibrary lib;
  auto add = [&lib](std::string name, const char* preamble, std::string joiner) {
    PromptTemplate tpl{std::move(name), preamble, std::move(joiner)};
    lib.origin_[tpl.name] = "builtin";
    lib.templates_[tpl.name] = std::move(tpl);
  };
  add("sentence", kSentence, ", ");
  add("recipe", kRecipe, ", ");
  add("table_to_text", kTableToText, ", ");
  add("profile", kProfile, "; ");
  add("quality_eval", kQualityEval, ", ");
  add("dnc_rewrite", kDncRewrite, ", ");
  return lib;
}

TemplateLibrary TemplateLibrary::with_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("templates directory not found: " + dir.string());
  }
  TemplateLibrary lib = builtins();
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read template file: " + path.string());
    std::ostringstream content;
    content << in.rdbuf();
    std::string text = content.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
      text.pop_back();
    }
    const std::string name = path.stem().string();
    PromptTemplate tpl{name, std::move(text), ", "};
    if (auto it = lib.templates_.find(name); it != lib.templates_.end()) {
      tpl.keyword_joiner = it->second.keyword_joiner;
    }
    lib.origin_[name] = "file";
    lib.templates_[name] = std::move(tpl);
  }
  return lib;
}

const PromptTemplate& TemplateLibrary::get(const std::string& name) const {
  auto it = templates_.find(name);
  if (it == templates_.end()) {
    throw ConfigError("unknown template: " + name);
  }
  return it->second;
}

bool TemplateLibrary::contains(const std::string& name) const {
  return templates_.contains(name);
}

void TemplateLibrary::put(PromptTemplate tpl) {
  origin_[tpl.name] = "custom";
  templates_[tpl.name] = std::move(tpl);
}

std::vector<std::pair<std::string, std::string>> TemplateLibrary::list() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(templates_.size());
  for (const auto& [name, tpl] : templates_) {
    out.emplace_back(name, origin_.at(name));
  }
  return out;
}

}  // namespace lexcon
