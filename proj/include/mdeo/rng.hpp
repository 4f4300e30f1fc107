#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace mdeo {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Substream derivation used everywhere a component needs its own stream:
// (global seed, component tag, index) -> seed. Adding a network or component
// never perturbs the streams of the others.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view component,
                                 std::uint64_t index = 0) {
  std::uint64_t s = base ^ fnv1a64(component);
  splitmix64(s);
  s ^= 0x9E3779B97F4A7C15ULL * (index + 1);
  return splitmix64(s);
}

// mt19937_64 with hand-rolled uniform draws. The engine's output sequence is
// pinned by the standard and the draw logic below is ours, so streams are
// reproducible across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, n), n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = eng_();
    while (x >= limit) x = eng_();
    return x % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mdeo
