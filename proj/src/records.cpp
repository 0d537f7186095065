#include "lexcon/records.hpp"

#include "lexcon/error.hpp"
#include "lexcon/json_io.hpp"

#include <fstream>

namespace lexcon {

namespace {

void to_json(nlohmann::json& j, const TrialRecord& r) {
  j = nlohmann::json{{"experiment_id", r.experiment_id},
                     {"trial_index", r.trial_index},
                     {"keywords", r.keywords},
                     {"policy", r.policy},
                     {"strategy_id", r.strategy_id},
                     {"params", r.params},
                     {"backend_id", r.backend_id},
                     {"outcome", r.outcome},
                     {"metrics", r.metrics},
                     {"wall_time_ms", r.wall_time_ms},
                     {"schema_version", r.schema_version}};
}

void from_json(const nlohmann::json& j, TrialRecord& r) {
  j.at("experiment_id").get_to(r.experiment_id);
  j.at("trial_index").get_to(r.trial_index);
  j.at("keywords").get_to(r.keywords);
  j.at("policy").get_to(r.policy);
  j.at("strategy_id").get_to(r.strategy_id);
  j.at("params").get_to(r.params);
  j.at("backend_id").get_to(r.backend_id);
  j.at("outcome").get_to(r.outcome);
  j.at("metrics").get_to(r.metrics);
  j.at("wall_time_ms").get_to(r.wall_time_ms);
  j.at("schema_version").get_to(r.schema_version);
}

}  // namespace

std::string record_to_jsonl(const TrialRecord& record) {
  nlohmann::json j;
  to_json(j, record);
  return j.dump();
}

TrialRecord record_from_jsonl(const std::string& line) {
  TrialRecord r;
  from_json(nlohmann::json::parse(line), r);
  return r;
}

std::vector<TrialRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::vector<TrialRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(record_from_jsonl(line));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": bad trial record: " + e.what());
    }
  }
  return records;
}

struct JsonlWriter::Impl {
  std::ofstream out;
  std::mutex mu;
  size_t count = 0;
};

JsonlWriter::JsonlWriter(const std::string& path) : impl_(new Impl) {
  impl_->out.open(path, std::ios::app);
  if (!impl_->out) {
    throw ConfigError("cannot open records file for append: " + path);
  }
}

JsonlWriter::~JsonlWriter() = default;

void JsonlWriter::append(const TrialRecord& record) {
  const std::string line = record_to_jsonl(record);
  std::lock_guard lock(impl_->mu);
  impl_->out << line << '\n';
  impl_->out.flush();
  ++impl_->count;
}

size_t JsonlWriter::appended() const {
  std::lock_guard lock(impl_->mu);
  return impl_->count;
}

}  // namespace lexcon
