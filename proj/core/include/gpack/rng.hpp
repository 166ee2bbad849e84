#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace gpack {

// splitmix64 finalizer; used to derive child seeds from a master seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream tags keep every random decision attributable to
// (master seed, stage, index) and independent of scheduling order.
enum class Stream : std::uint64_t {
  GraphGen = 1,
  EquitablePartition,
  RefinePartition,
  PairCheck,
  RegularityRefine,
  GreedyPacking,
  GreedyMatching,
  Nibble,
  Coloring,
  LeftoverGreedy,
  Experiment,
};

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = mix64(master ^ 0xa0761d6478bd642fULL);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t master, Stream s,
                              std::uint64_t b = 0, std::uint64_t c = 0) {
  return mix_seed(master, static_cast<std::uint64_t>(s), b, c);
}

// Deterministic RNG. mt19937_64 output is fully specified by the standard and
// the sampling helpers below avoid std::uniform_*_distribution, whose results
// are implementation-defined; identical seeds give identical streams anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound) by masked rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1 | 1);
    std::uint64_t r;
    do {
      r = next() & mask;
    } while (r >= bound);
    return r;
  }

  // Uniform double in [0,1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  // Numerator for an exact dyadic uniform draw u = raw / 2^64.
  std::uint64_t unit_raw() { return next(); }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct values from {0,...,n-1}, ascending.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k);

 private:
  std::mt19937_64 engine_;
};

inline std::vector<std::uint32_t> Rng::sample(std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  if (k > n) k = n;
  for (std::uint32_t i = 0; i < k; ++i) {
    std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace gpack
