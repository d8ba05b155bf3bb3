#pragma once

#include "orbitcs/analysis.hpp"
#include "orbitcs/config.hpp"
#include "orbitcs/group.hpp"
#include "orbitcs/recovery.hpp"
#include "orbitcs/representation.hpp"
#include "orbitcs/sensing.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace orbitcs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

struct RunOptions {
  bool timestamp = true;  // "# generated ..." header line and runtime columns
};

// Resolved representation descriptor.
struct ResolvedRep {
  GroupPtr group;
  std::shared_ptr<const Representation> rep;
  std::string label;  // realization name plus conjugation suffix
  std::optional<CosetPartition> partition;  // induced realizations
  std::optional<CMatrix> conjugator;
  std::string base_realization;
};

GroupPtr resolve_group(const ExperimentConfig& config);
// Representation before any conjugation.
ResolvedRep resolve_base_representation(const ExperimentConfig& config);
// Conjugator matrix named by the config, or nullopt.
std::optional<CMatrix> resolve_conjugator(const ExperimentConfig& config, const Representation& base);
ResolvedRep resolve_representation(const ExperimentConfig& config);
// Empty matrix means identity.
CMatrix resolve_basis(const ExperimentConfig& config, int n);

// Coordinates on which every matrix is diagonal with pairwise distinct characters: n blocks (1,1).
std::optional<BlockStructure> diagonal_block_structure(const Representation& rep);
// Block structure usable for structured generating vectors: the stored one, or a diagonal one.
std::optional<BlockStructure> sensing_block_structure(const Representation& rep);

// Multiplicity-weighted d_max computed from characters against the group's catalog (1 without a catalog).
int rep_d_max(const Representation& rep);

struct Counterexample {
  std::vector<Element> omega;
  CVector xi;
  CMatrix phi;
  CVector x;   // fourier case: the planted null vector
  CVector x2;  // trivial case: the colliding partner
  double null_residual_inf = 0.0;  // ||phi x||_inf (fourier) or ||phi x - phi x2||_inf (trivial)
  RecoveryResult recovery;
  bool failure_demonstrated = false;
};

// Diagonal-character representation of Z/n, Omega = {k : s does not divide k}, x_j = conj(1/xi_j)
// on the delta-train support.
Counterexample fourier_counterexample(int n, int s, std::uint64_t seed, const BasisPursuitOptions& bp = {});
// Trivial representation of degree n on `group`: two distinct 1-sparse vectors with equal measurements.
Counterexample trivial_counterexample(const GroupPtr& group, int n, std::uint64_t seed);

int cmd_verify(const ExperimentConfig& config, std::ostream& report);
int cmd_constant(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv);
int cmd_rip(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv);
int cmd_counterexample(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv,
                       std::ostream& report);
int cmd_phase_transition(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv);
int cmd_bound(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv);

// Dispatch by subcommand name ("verify", "constant", ...). Verify and counterexample reports go to `report`.
int run_command(const std::string& name, const ExperimentConfig& config, const RunOptions& options,
                std::ostream& csv, std::ostream& report);

}  // namespace orbitcs
