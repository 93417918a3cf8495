#pragma once

#include <cstdint>
#include <random>

#include "cob/linalg.hpp"

namespace cob {

/// SplitMix64 finaliser; maps a counter to a well-mixed 64-bit word.
std::uint64_t splitmix64(std::uint64_t x);

/// Per-trial seed: splitmix64(seed ^ trial). Independent of evaluation order,
/// so trials may run in any order or concurrently.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double normal();
  double uniform();
  /// Standard complex Gaussian, E|z|² = 1.
  Complex complex_normal();
  CMatrix gaussian(int rows, int cols);
  /// Haar-distributed unitary (QR of a Gaussian matrix, phase-corrected).
  CMatrix unitary(int n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace cob
