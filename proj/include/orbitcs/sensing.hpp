#pragma once

#include "orbitcs/group.hpp"
#include "orbitcs/representation.hpp"
#include "orbitcs/rng.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace orbitcs {

enum class XiScheme { complex_gaussian, rademacher, steinhaus, structured_block };
std::string to_string(XiScheme scheme);
XiScheme parse_xi_scheme(const std::string& name);

struct GeneratingVector {
  CVector values;
  XiScheme scheme = XiScheme::complex_gaussian;
  std::uint64_t seed = 0;
  std::optional<BlockStructure> block;
};

// Deterministic in seed. structured_block needs a block structure whose total degree is n
// and whose multiplicities never exceed the degree of their block.
GeneratingVector sample_generating_vector(int n, XiScheme scheme, std::uint64_t seed,
                                          const std::optional<BlockStructure>& block = std::nullopt);
// Same draw from an existing stream (used inside trial loops).
GeneratingVector sample_generating_vector(int n, XiScheme scheme, Rng& rng,
                                          const std::optional<BlockStructure>& block = std::nullopt);

// ||xi^{tau,kappa}||^2 - d_tau, worst over all blocks; zero for a correct structured vector.
double structured_block_norm_defect(const GeneratingVector& xi);

enum class SamplingMode { fixed_set, uniform_iid, coset_admissible, adversarial };
std::string to_string(SamplingMode mode);
SamplingMode parse_sampling_mode(const std::string& name);

struct SamplingSet {
  std::vector<Element> indices;
  SamplingMode mode = SamplingMode::fixed_set;
  std::optional<std::uint64_t> seed;
};

SamplingSet sample_omega(const FiniteGroup& group, int m, SamplingMode mode, std::uint64_t seed,
                         const CosetPartition* partition = nullptr);
SamplingSet sample_omega(const FiniteGroup& group, int m, SamplingMode mode, Rng& rng,
                         const CosetPartition* partition = nullptr);
// Caller-chosen set of distinct elements (fixed_set or adversarial mode).
SamplingSet explicit_omega(const FiniteGroup& group, std::vector<Element> indices,
                           SamplingMode mode = SamplingMode::fixed_set);

struct MeasurementEnsemble {
  CMatrix phi;
  std::shared_ptr<const Representation> rep;
  GeneratingVector xi;
  SamplingSet omega;
  CMatrix basis;
  bool normalized = true;
};

// phi row r = (1/sqrt(m)) (pi(omega_r) xi)^* B. An empty B means the identity.
MeasurementEnsemble build_measurement(std::shared_ptr<const Representation> rep, GeneratingVector xi,
                                      SamplingSet omega, CMatrix basis = CMatrix(), bool normalize = true);

}  // namespace orbitcs
