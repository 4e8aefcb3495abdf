// Portable seeded randomness. The engine is std::mt19937_64 (fully specified by the
// standard); distributions are implemented here because std ones vary across libraries.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace pragworld {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Independent substream keyed by a tag and an index; does not advance this stream.
  Rng split(std::string_view tag, std::uint64_t index = 0) const {
    return Rng(splitmix64(seed_ ^ splitmix64(hash_tag(tag) + index * 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1) with 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items.at(static_cast<std::size_t>(below(items.size())));
  }

  // Draw an index from unnormalised log-weights.
  std::size_t sample_log_weights(const std::vector<double>& logw) {
    if (logw.empty()) throw std::invalid_argument("empty distribution");
    double mx = -INFINITY;
    for (double v : logw) mx = std::max(mx, v);
    double total = 0.0;
    for (double v : logw) total += std::exp(v - mx);
    double r = uniform() * total;
    for (std::size_t i = 0; i < logw.size(); ++i) {
      r -= std::exp(logw[i] - mx);
      if (r < 0.0) return i;
    }
    for (std::size_t i = logw.size(); i-- > 0;) {
      if (std::isfinite(logw[i])) return i;
    }
    return logw.size() - 1;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace pragworld
