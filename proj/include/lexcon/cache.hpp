#pragma once

#include "lexcon/backend.hpp"

#include <filesystem>
#include <string>

namespace lexcon {

/// Content-addressed on-disk response cache. One JSON file per key under
/// cache_dir, filename = hex of the key hash. A hit returns the stored
/// result (marked cached) without touching the wrapped backend; corrupt or
/// mismatched entries are treated as misses and rewritten. Writes go to a
/// temp file first and are renamed into place.
class CachedBackend : public Backend {
 public:
  CachedBackend(BackendPtr upstream, std::filesystem::path cache_dir);

  GenerationResult generate(const GenerationRequest& req) override;
  std::string id() const override { return upstream_->id(); }
  bool supports_top_k() const override { return upstream_->supports_top_k(); }

  const std::filesystem::path& cache_dir() const { return cache_dir_; }

 private:
  BackendPtr upstream_;
  std::filesystem::path cache_dir_;
};

/// Wraps any backend with the disk cache. Creates cache_dir if needed;
/// throws ConfigError if it cannot be created.
BackendPtr with_cache(BackendPtr backend, const std::filesystem::path& cache_dir);

}  // namespace lexcon
