#include "lexcon/cache.hpp"

#include "lexcon/error.hpp"
#include "lexcon/json_io.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <system_error>

namespace lexcon {
namespace {

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

std::atomic<uint64_t> g_temp_counter{0};

}  // namespace

CachedBackend::CachedBackend(BackendPtr upstream, std::filesystem::path cache_dir)
    : upstream_(std::move(upstream)), cache_dir_(std::move(cache_dir)) {}

GenerationResult CachedBackend::generate(const GenerationRequest& req) {
  const std::string key = request_fingerprint(req).dump();
  const std::filesystem::path entry_path =
      cache_dir_ / (hex64(fnv1a64(key)) + ".json");

  // Probe. Any read/parse problem, and any fingerprint mismatch (hash
  // collision), is a miss; the entry gets rewritten below.
  if (std::ifstream in(entry_path); in) {
    try {
      nlohmann::json entry = nlohmann::json::parse(in);
      if (entry.at("key").get<std::string>() == key) {
        GenerationResult res = entry.at("result").get<GenerationResult>();
        res.cached = true;
        return res;
      }
    } catch (const nlohmann::json::exception&) {
      // corrupt entry, fall through to upstream
    }
  }

  GenerationResult res = upstream_->generate(req);

  nlohmann::json entry{{"key", key}, {"result", res}};
  const std::filesystem::path tmp =
      cache_dir_ / (".tmp-" + std::to_string(g_temp_counter.fetch_add(1)) + "-" +
                    hex64(fnv1a64(key)));
  {
    std::ofstream out(tmp);
    if (!out) {
      throw ConfigError("cache: cannot write to " + tmp.string());
    }
    out << entry.dump() << '\n';
  }
  std::error_code ec;
  std::filesystem::rename(tmp, entry_path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
  }
  return res;
}

BackendPtr with_cache(BackendPtr backend, const std::filesystem::path& cache_dir) {
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  if (ec || !std::filesystem::is_directory(cache_dir)) {
    throw ConfigError("cache: cannot create directory " + cache_dir.string());
  }
  return std::make_shared<CachedBackend>(std::move(backend), cache_dir);
}

}  // namespace lexcon
