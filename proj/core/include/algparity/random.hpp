#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "algparity/matrix.hpp"

namespace algparity {

// xoshiro256** seeded through splitmix64. Bounded draws use rejection so the
// stream of values is identical on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  // Uniform on [lo, hi], inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // True with probability num / den.
  bool chance(std::uint64_t num, std::uint64_t den);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

// Counter-based per-trial seed: depends only on (master, stream, index), so
// trials can run in any order or in parallel.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

// Entries uniform on [-bound, bound].
IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t bound);
// Product of `steps` random elementary operations (row additions with
// multipliers in [-max_multiplier, max_multiplier], swaps, sign changes).
IntMatrix random_unimodular(Rng& rng, std::size_t n, std::size_t steps, std::int64_t max_multiplier = 1);

}  // namespace algparity
