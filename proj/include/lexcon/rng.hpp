#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace lexcon::rng {

// Counter-based random stream built on the splitmix64 finalizer. Every draw
// is a pure function of the key words, so independent trials can be placed
// anywhere in the stream without shared state. Bit-identical on every
// platform (no libc rand, no std::mt19937 state).

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr uint64_t splitmix64(uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Hash an ordered key (seed, counter, lane, ...) into one 64-bit word.
constexpr uint64_t keyed(std::initializer_list<uint64_t> words) {
  uint64_t h = 0x6c62272e07bb0142ULL;
  for (uint64_t w : words) {
    h = splitmix64(h ^ w);
  }
  return h;
}

/// Uniform double in [0, 1) from a keyed draw.
constexpr double uniform01(std::initializer_list<uint64_t> words) {
  return static_cast<double>(keyed(words) >> 11) * 0x1.0p-53;
}

/// FNV-1a over bytes; folds strings (experiment ids) into stream keys.
constexpr uint64_t hash_str(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Small stateful generator seeded from a keyed stream; used where an
/// ordered sequence is more natural than counter indexing (shuffles).
class SplitMix {
 public:
  explicit SplitMix(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += kGolden;
    uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  double next_uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) via rejection-free Lemire reduction.
  uint64_t next_below(uint64_t bound) {
    // 128-bit multiply keeps the mapping unbiased enough for shuffles.
    return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * bound) >> 64);
  }

  template <typename T>
  void shuffle(T& seq) {
    if (seq.size() < 2) return;
    for (size_t i = seq.size() - 1; i > 0; --i) {
      size_t j = static_cast<size_t>(next_below(i + 1));
      std::swap(seq[i], seq[j]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace lexcon::rng
