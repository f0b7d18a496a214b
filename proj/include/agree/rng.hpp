#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace agree {

// splitmix64 step; used both as a stream mixer and a seed expander.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Folds a tuple of integers into one 64-bit seed. Used to key per-table
// bootstrap streams so results are independent of thread scheduling.
inline std::uint64_t mix_seed(std::uint64_t base,
                              std::initializer_list<std::int64_t> values) {
  std::uint64_t s = base;
  std::uint64_t out = splitmix64(s);
  for (std::int64_t v : values) {
    s ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
    out ^= splitmix64(s);
  }
  return out;
}

// Deterministic uniform generator. mt19937_64 output is pinned by the
// standard; the [0,1) mapping below uses the top 53 bits explicitly, so
// sequences are identical across platforms and standard libraries
// (std::uniform_real_distribution would not guarantee that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace agree
