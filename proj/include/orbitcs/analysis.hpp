#pragma once

#include "orbitcs/group.hpp"
#include "orbitcs/representation.hpp"
#include "orbitcs/sensing.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace orbitcs {

inline constexpr std::uint64_t kEnumerationBudget = 2000000;

// The constant is the squared operator norm: sup_j sup_{|y|=1} sum_{g in Omega} |<e_j, pi(g) y>|^2.
struct ConstantReport {
  double value = 0.0;
  int argmax_coordinate = 0;
  std::vector<double> per_coordinate;
};

ConstantReport orbit_column_constant(const Representation& rep, std::span<const Element> omega);

enum class ConstantFamily { single, all_subsets, coset_admissible, sampled };
std::string to_string(ConstantFamily family);
ConstantFamily parse_constant_family(const std::string& name);

struct FamilySpec {
  ConstantFamily kind = ConstantFamily::all_subsets;
  int subset_size = 0;                         // all_subsets / sampled: 0 means every nonempty size
  const CosetPartition* partition = nullptr;   // coset_admissible
  int samples = 100;                           // sampled
  std::uint64_t seed = 0;                      // sampled
  std::vector<Element> omega;                  // single
};

struct FamilyReport {
  double value = 0.0;
  std::vector<Element> argmax_omega;
  std::uint64_t sets_evaluated = 0;
};

inline constexpr int kAllSubsetsMaxOrder = 16;

FamilyReport constant_over_family(const Representation& rep, const FamilySpec& family);

// Calls visit(omega) for every nonempty coset-admissible set, cosets in order; returns the count.
std::uint64_t for_each_admissible_set(const CosetPartition& partition,
                                      const std::function<void(const std::vector<Element>&)>& visit);

int affine_omega1(const FiniteGroup& group, std::span<const Element> omega);

struct RipReport {
  int s = 0;
  double delta = 0.0;
  std::vector<int> witness_support;
  std::uint64_t supports_checked = 0;
};

RipReport rip_constant(const CMatrix& phi, int s, int threads = 1);
inline RipReport rip_constant(const MeasurementEnsemble& ensemble, int s, int threads = 1) {
  return rip_constant(ensemble.phi, s, threads);
}

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

// max_{h, j} |<B e_j, pi(h) xi>| over the full group.
double bos_constant(const Representation& rep, const CVector& xi, const CMatrix& basis = CMatrix());

int d_max(const BlockStructure& block);

// Column-orthonormality defect of (1/sqrt|G|)(pi(g) xi)^*_{g in G} B.
double column_orthonormality_defect(const Representation& rep, const CVector& xi, const CMatrix& basis = CMatrix());

// ceil(c delta^-2 s C max{(ln sC)^2 ln n ln 4n, ln(1/eta)}), C the orbit-column constant.
std::int64_t orbit_measurement_bound(int s, int n, double c_const, double delta, double eta, double c = 1.0);
// Structured generating vector, K = delta^-2 s d_max ln(8|G|) ln(2/eta):
// ceil(c K max{(ln 4s)^2 ln 8n ln K, ln(2/eta)}).
std::int64_t structured_measurement_bound(int s, int n, int group_order, int dmax, double delta, double eta,
                                          double c = 1.0);

}  // namespace orbitcs
