#pragma once

#include "orbitcs/group.hpp"
#include "orbitcs/types.hpp"

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace orbitcs {

struct Block {
  int irrep_id;      // position in the irreducible catalog of the group
  int degree;        // d_tau
  int multiplicity;  // m_pi(pi_tau)
};

/// Block-diagonal layout: all copies of block 1 first, then block 2, and so on.
/// Indices passed to alpha/beta and returned by alpha_inverse are 1-based
/// (tau, kappa, iota); the coordinate they map to is 1-based as well.
class BlockStructure {
 public:
  BlockStructure() = default;
  explicit BlockStructure(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int total_degree() const { return total_degree_; }
  // Coordinate where block tau starts, 0-based.
  int offset(int tau) const { return offsets_.at(tau - 1); }

  int alpha(int tau, int kappa, int iota) const;
  std::tuple<int, int, int> alpha_inverse(int coordinate) const;
  int beta(int tau, int iota) const;

 private:
  void check_tau(int tau) const;

  std::vector<Block> blocks_;
  std::vector<int> offsets_;
  int total_degree_ = 0;
};

/// Unitary (optionally projective) matrix representation of a finite group.
/// Construction does not verify; call max_unitarity_defect / max_homomorphism_defect.
class Representation {
 public:
  Representation(GroupPtr group, std::vector<CMatrix> matrices, std::string realization);

  const GroupPtr& group() const { return group_; }
  int degree() const { return degree_; }
  const CMatrix& matrix(Element g) const { return matrices_[g]; }
  const std::vector<CMatrix>& matrices() const { return matrices_; }
  const std::string& realization() const { return realization_; }

  const std::optional<BlockStructure>& block() const { return block_; }
  Representation& set_block(BlockStructure block);
  Representation& clear_block() { block_.reset(); return *this; }

  // lambda(g,h) stored row-major over (g,h), one unimodular scalar per pair.
  const std::optional<std::vector<cplx>>& cocycle() const { return cocycle_; }
  Representation& set_cocycle(std::vector<cplx> cocycle);
  cplx lambda(Element g, Element h) const;

  // Column permutation when every matrix is a 0/1 permutation matrix:
  // pi(g) e_c = e_{perm[g][c]}.
  const std::optional<std::vector<std::vector<int>>>& permutations() const { return permutations_; }
  Representation& set_permutations(std::vector<std::vector<int>> perms);

  CVector apply(Element g, const CVector& x) const;

  double max_unitarity_defect() const;
  double max_homomorphism_defect() const;
  // Largest | |lambda| - 1 |, zero without a cocycle.
  double max_cocycle_modulus_defect() const;
  std::vector<cplx> character() const;

 private:
  GroupPtr group_;
  int degree_;
  std::vector<CMatrix> matrices_;
  std::string realization_;
  std::optional<BlockStructure> block_;
  std::optional<std::vector<cplx>> cocycle_;
  std::optional<std::vector<std::vector<int>>> permutations_;
};

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kEquivalenceTol = 1e-8;

double unitarity_defect(const CMatrix& v);

/// Unitary DFT in dimension n with 1-based exponents: entry (j,k) = e^{2 pi i jk/n}/sqrt(n).
CMatrix dft_matrix(int n);

Representation left_regular(const GroupPtr& group);
Representation trivial_rep(const GroupPtr& group, int degree);
// One-dimensional representation from per-element values (checked for the homomorphism law).
Representation character_rep(const GroupPtr& group, std::vector<cplx> values, std::string realization);
// (rho(k,l) y)(j) = e^{2 pi i jk/p} y(jl) on coordinates j = 1..p-1.
Representation affine_rep(const GroupPtr& group);

/// Complete set of inequivalent irreducibles for cyclic, dihedral and affine groups.
std::vector<Representation> irreducible_reps(const GroupPtr& group);

// <chi_a, chi_b> / |G|: 1 for equivalent irreducibles, 0 for inequivalent ones.
cplx character_inner_product(const Representation& a, const Representation& b);

/// Direct sum, all copies of the first constituent first. irrep ids in the resulting
/// BlockStructure are the constituent positions in `blocks` unless `irrep_ids` is given.
Representation block_diagonal(const std::vector<std::pair<Representation, int>>& blocks,
                              std::vector<int> irrep_ids = {});

// Block-diagonal representation assembled from a catalog by (irrep id, multiplicity).
Representation block_diagonal_from_catalog(const std::vector<Representation>& catalog,
                                           const std::vector<std::pair<int, int>>& id_and_multiplicity);

// The d_tau copies of every irreducible: the block form of the left regular representation.
BlockStructure regular_block_structure(const std::vector<Representation>& catalog);

/// V pi(g) V^*; block metadata is dropped.
Representation conjugate_rep(const Representation& pi, const CMatrix& v);

/// U = DFT^n * D with D_{alpha(tau,kappa,iota)} = sqrt(d) DFT^d_{kappa mod d, iota}.
CMatrix realization_transform_u(const BlockStructure& block);

// Largest deviation of the sub-row dichotomy of U: <U_j|block(tau,k1), U_j|block(tau,k2)> is 0 when
// k1 != k2 mod d_tau and has modulus d_tau/n otherwise.
double u_subrow_defect(const BlockStructure& block);

// max |W^* W - I| where W stacks sqrt(d/|G|) pi(g)_{kl} over the whole catalog (Schur orthogonality).
double schur_orthogonality_defect(const std::vector<Representation>& catalog);

/// Induced representation realized on coordinates coset*k + iota via the cross-section.
Representation induce(const CosetPartition& partition, const Representation& sigma, const CrossSection& gamma);

}  // namespace orbitcs
