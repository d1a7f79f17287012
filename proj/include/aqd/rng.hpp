// Seeded random source. Every random choice in the toolkit flows through one
// Rng instance so that a (config, seed) pair fully determines the output.
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace aqd {

// Bounded draws, shuffles and CDF sampling are built directly on the raw
// mt19937_64 stream. The standard library's shuffle and distribution classes
// are implementation-defined, which would make transcripts differ between
// toolchains for the same seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, bound) by rejection from the top of the range.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Samples an index with the given (non-negative, ~normalized) weights by
  // walking the explicit CDF. The final bucket absorbs rounding slack.
  std::size_t sample_cdf(const std::vector<double>& probs) {
    if (probs.empty()) throw std::invalid_argument("Rng::sample_cdf: empty distribution");
    const double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return probs.size() - 1;
  }

  // Fisher-Yates. Returns p with p[i] = destination position of element i.
  std::vector<int> permutation(int n) {
    std::vector<int> slots(n);
    for (int i = 0; i < n; ++i) slots[i] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(below(static_cast<std::uint64_t>(i) + 1));
      std::swap(slots[i], slots[j]);
    }
    // slots[k] = which element lands in position k; invert to the i->position form.
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[slots[k]] = k;
    return perm;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace aqd
