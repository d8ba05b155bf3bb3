#pragma once

#include "orbitcs/types.hpp"

#include <cstdint>

namespace orbitcs {

/// SplitMix64. Stream split: trial t of a run with master seed S uses
/// seed S ^ mix64(t), where mix64 is the SplitMix64 output finalizer.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, bound), rejection sampled.
  std::uint64_t below(std::uint64_t bound);
  double normal();
  // (g1 + i g2)/sqrt(2): E|z|^2 = 1.
  cplx complex_gaussian();
  double rademacher();
  // e^{2 pi i u}, u uniform.
  cplx steinhaus();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

// Haar-like random unitary: Q factor of a complex Gaussian matrix with phases fixed by R's diagonal.
CMatrix random_unitary(int n, Rng& rng);

}  // namespace orbitcs
