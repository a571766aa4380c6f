#pragma once

// Seeded, platform-stable randomness. All randomized outputs in this library
// are reproducible from (seed, parameters) alone: the generator is mt19937_64
// with our own rejection sampling (std::uniform_int_distribution is not
// portable across standard libraries), and parallel trials derive per-trial
// seeds with splitmix64 so results do not depend on scheduling.

#include <cstdint>
#include <random>
#include <vector>

#include "braid/canonical.hpp"
#include "braid/permutation.hpp"

namespace braid {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Unbiased draw from [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    for (;;) {
      const std::uint64_t r = gen_();
      if (r <= limit) return r % bound;
    }
  }

  long long in_range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  PermutationBraid permutation(int n) {
    std::vector<int> ol(n);
    for (int i = 0; i < n; ++i) ol[i] = i + 1;
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(below(static_cast<std::uint64_t>(i + 1)));
      std::swap(ol[i], ol[j]);
    }
    return PermutationBraid::from_one_line(ol);
  }

 private:
  std::mt19937_64 gen_;
};

struct RandomBraidSpec {
  int n = 4;
  int k = 4;
  long long delta_lo = 0;
  long long delta_hi = 0;
  std::uint64_t seed = 0;
};

struct RandomBraidSample {
  CanonicalBraid braid;
  long long raw_delta_power = 0;
  std::vector<PermutationBraid> raw_factors;
};

// k independent uniform permutation braids, optionally times a Delta power.
inline RandomBraidSample sample_random_braid(const RandomBraidSpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("factor count must be >= 1");
  Rng rng(spec.seed);
  RandomBraidSample s;
  s.raw_delta_power =
      spec.delta_lo == spec.delta_hi ? spec.delta_lo : rng.in_range(spec.delta_lo, spec.delta_hi);
  s.raw_factors.reserve(spec.k);
  for (int i = 0; i < spec.k; ++i) s.raw_factors.push_back(rng.permutation(spec.n));
  s.braid = CanonicalBraid::normalized(spec.n, s.raw_delta_power, s.raw_factors);
  return s;
}

}  // namespace braid
