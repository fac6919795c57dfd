#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lpbesov/calculus.hpp"
#include "lpbesov/signal.hpp"

namespace lpbesov {

/// Deterministic scalar source. Raw mt19937_64 words are mapped to doubles
/// directly (no library distributions), so a seed pins the exact stream.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

  /// 53-bit uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller on raw uniforms.
  double normal();

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// count independent standard-normal signals drawn from one seeded stream.
std::vector<GroupSignal> gaussian_ensemble(const CayleyGroup& g, int count,
                                           std::uint64_t seed);

/// Extreme-case probes: point masses at the identity and at a farthest
/// element, ball indicators at three radii, the constant signal, and a few
/// single eigenvectors when the dense path is available.
std::vector<GroupSignal> structured_ensemble(const CayleyGroup& g, const WordMetric& metric,
                                             const SpectralEngine* engine = nullptr);

}  // namespace lpbesov
