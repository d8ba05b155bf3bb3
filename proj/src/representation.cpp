#include "orbitcs/representation.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orbitcs {

// ---------------------------------------------------------------------------
// BlockStructure

BlockStructure::BlockStructure(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (const Block& b : blocks_) {
    if (b.degree < 1 || b.multiplicity < 1) {
      throw std::invalid_argument("block degree and multiplicity must be positive");
    }
    offsets_.push_back(total_degree_);
    total_degree_ += b.degree * b.multiplicity;
  }
}

void BlockStructure::check_tau(int tau) const {
  if (tau < 1 || tau > num_blocks()) {
    throw std::out_of_range("block index " + std::to_string(tau) + " outside 1.." + std::to_string(num_blocks()));
  }
}

int BlockStructure::alpha(int tau, int kappa, int iota) const {
  check_tau(tau);
  const Block& b = blocks_[tau - 1];
  if (kappa < 1 || kappa > b.multiplicity) throw std::out_of_range("copy index out of range");
  if (iota < 1 || iota > b.degree) throw std::out_of_range("coordinate index out of range");
  return offsets_[tau - 1] + (kappa - 1) * b.degree + iota;
}

std::tuple<int, int, int> BlockStructure::alpha_inverse(int coordinate) const {
  if (coordinate < 1 || coordinate > total_degree_) throw std::out_of_range("coordinate outside 1..n");
  int tau = num_blocks();
  while (offsets_[tau - 1] >= coordinate) --tau;
  const int local = coordinate - offsets_[tau - 1] - 1;
  const int d = blocks_[tau - 1].degree;
  return {tau, local / d + 1, local % d + 1};
}

int BlockStructure::beta(int tau, int iota) const {
  check_tau(tau);
  const Block& b = blocks_[tau - 1];
  if (iota < 1 || iota > b.degree) throw std::out_of_range("coordinate index out of range");
  return offsets_[tau - 1] + std::min(b.multiplicity - 1, iota - 1) * b.degree + iota;
}

// ---------------------------------------------------------------------------
// Representation

Representation::Representation(GroupPtr group, std::vector<CMatrix> matrices, std::string realization)
    : group_(std::move(group)), matrices_(std::move(matrices)), realization_(std::move(realization)) {
  if (!group_) throw std::invalid_argument("representation needs a group");
  if (static_cast<int>(matrices_.size()) != group_->order()) {
    throw std::invalid_argument("representation needs one matrix per group element");
  }
  degree_ = static_cast<int>(matrices_.front().rows());
  if (degree_ < 1) throw std::invalid_argument("representation degree must be positive");
  for (const CMatrix& m : matrices_) {
    if (m.rows() != degree_ || m.cols() != degree_) {
      throw std::invalid_argument("representation matrices must all be square of the same degree");
    }
  }
}

Representation& Representation::set_block(BlockStructure block) {
  if (block.total_degree() != degree_) throw std::invalid_argument("block structure degree mismatch");
  block_ = std::move(block);
  return *this;
}

Representation& Representation::set_cocycle(std::vector<cplx> cocycle) {
  const std::size_t n = static_cast<std::size_t>(group_->order());
  if (cocycle.size() != n * n) throw std::invalid_argument("cocycle needs |G|^2 entries");
  cocycle_ = std::move(cocycle);
  return *this;
}

cplx Representation::lambda(Element g, Element h) const {
  if (!cocycle_) return 1.0;
  return (*cocycle_)[static_cast<std::size_t>(g) * group_->order() + h];
}

Representation& Representation::set_permutations(std::vector<std::vector<int>> perms) {
  if (static_cast<int>(perms.size()) != group_->order()) throw std::invalid_argument("one permutation per element");
  permutations_ = std::move(perms);
  return *this;
}

CVector Representation::apply(Element g, const CVector& x) const {
  if (permutations_) {
    CVector out(degree_);
    const auto& perm = (*permutations_)[g];
    for (int c = 0; c < degree_; ++c) out(perm[c]) = x(c);
    return out;
  }
  return matrices_[g] * x;
}

double unitarity_defect(const CMatrix& v) {
  if (v.rows() != v.cols()) return std::numeric_limits<double>::infinity();
  return (v.adjoint() * v - CMatrix::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff();
}

double Representation::max_unitarity_defect() const {
  double worst = 0.0;
  for (const CMatrix& m : matrices_) worst = std::max(worst, unitarity_defect(m));
  return worst;
}

double Representation::max_homomorphism_defect() const {
  double worst = 0.0;
  const FiniteGroup& g = *group_;
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) {
      const CMatrix diff = matrices_[a] * matrices_[b] - lambda(a, b) * matrices_[g.mul(a, b)];
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double Representation::max_cocycle_modulus_defect() const {
  double worst = 0.0;
  if (cocycle_) {
    for (cplx c : *cocycle_) worst = std::max(worst, std::abs(std::abs(c) - 1.0));
  }
  return worst;
}

std::vector<cplx> Representation::character() const {
  std::vector<cplx> chi;
  chi.reserve(matrices_.size());
  for (const CMatrix& m : matrices_) chi.push_back(m.trace());
  return chi;
}

// ---------------------------------------------------------------------------
// Constructors

CMatrix dft_matrix(int n) {
  if (n < 1) throw std::invalid_argument("DFT dimension must be positive");
  CMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) f(j, k) = scale * root_of_unity(static_cast<long long>(j + 1) * (k + 1), n);
  }
  return f;
}

Representation left_regular(const GroupPtr& group) {
  const int n = group->order();
  std::vector<CMatrix> mats;
  std::vector<std::vector<int>> perms;
  mats.reserve(n);
  for (Element g = 0; g < n; ++g) {
    // L(g) e_h = e_{gh}
    CMatrix m = CMatrix::Zero(n, n);
    std::vector<int> perm(n);
    for (Element h = 0; h < n; ++h) {
      perm[h] = group->mul(g, h);
      m(perm[h], h) = 1.0;
    }
    mats.push_back(std::move(m));
    perms.push_back(std::move(perm));
  }
  Representation rep(group, std::move(mats), "left_regular");
  rep.set_permutations(std::move(perms));
  return rep;
}

Representation trivial_rep(const GroupPtr& group, int degree) {
  if (degree < 1) throw std::invalid_argument("trivial representation degree must be positive");
  std::vector<CMatrix> mats(group->order(), CMatrix::Identity(degree, degree));
  std::vector<int> identity_perm(degree);
  for (int i = 0; i < degree; ++i) identity_perm[i] = i;
  Representation rep(group, std::move(mats), "trivial");
  rep.set_permutations(std::vector<std::vector<int>>(group->order(), identity_perm));
  return rep;
}

Representation character_rep(const GroupPtr& group, std::vector<cplx> values, std::string realization) {
  const int n = group->order();
  if (static_cast<int>(values.size()) != n) throw std::invalid_argument("character needs one value per element");
  for (Element a = 0; a < n; ++a) {
    if (std::abs(std::abs(values[a]) - 1.0) > kUnitaryTol) {
      throw std::invalid_argument("character value at element " + std::to_string(a) + " is not unimodular");
    }
    for (Element b = 0; b < n; ++b) {
      if (std::abs(values[a] * values[b] - values[group->mul(a, b)]) > kUnitaryTol) {
        throw std::invalid_argument("values do not define a homomorphism at (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
      }
    }
  }
  std::vector<CMatrix> mats;
  mats.reserve(n);
  for (cplx v : values) mats.push_back(CMatrix::Constant(1, 1, v));
  return Representation(group, std::move(mats), std::move(realization));
}

Representation affine_rep(const GroupPtr& group) {
  if (group->kind() != GroupKind::affine) throw std::invalid_argument("affine_rep needs an affine group");
  const int p = group->param();
  const int d = p - 1;
  std::vector<CMatrix> mats;
  mats.reserve(group->order());
  for (Element x = 0; x < group->order(); ++x) {
    const int k = x % p, l = x / p + 1;
    CMatrix m = CMatrix::Zero(d, d);
    for (int j = 1; j <= d; ++j) {
      const int col = (j * l) % p;
      m(j - 1, col - 1) = root_of_unity(static_cast<long long>(j) * k, p);
    }
    mats.push_back(std::move(m));
  }
  return Representation(group, std::move(mats), "affine");
}

namespace {

int primitive_root(int p) {
  for (int g = 1; g < p; ++g) {
    int x = 1, period = 0;
    do {
      x = (x * g) % p;
      ++period;
    } while (x != 1);
    if (period == p - 1) return g;
  }
  throw std::logic_error("no primitive root");
}

std::vector<Representation> cyclic_catalog(const GroupPtr& group) {
  const int n = group->order();
  std::vector<Representation> out;
  for (int l = 0; l < n; ++l) {
    std::vector<cplx> values(n);
    for (int k = 0; k < n; ++k) values[k] = root_of_unity(static_cast<long long>(k) * l, n);
    out.push_back(character_rep(group, std::move(values), "chi_" + std::to_string(l)));
  }
  return out;
}

std::vector<Representation> dihedral_catalog(const GroupPtr& group) {
  const int n = group->param();
  const int order = group->order();
  std::vector<Representation> out;
  auto linear = [&](int rot_sign, int refl_sign, const std::string& name) {
    std::vector<cplx> values(order);
    for (Element x = 0; x < order; ++x) {
      const int a = x % n, b = x / n;
      values[x] = ((a % 2 && rot_sign < 0) ? -1.0 : 1.0) * ((b && refl_sign < 0) ? -1.0 : 1.0);
    }
    out.push_back(character_rep(group, std::move(values), name));
  };
  linear(1, 1, "trivial");
  linear(1, -1, "sign");
  if (n % 2 == 0) {
    linear(-1, 1, "alt_rot");
    linear(-1, -1, "alt_rot_sign");
  }
  for (int h = 1; 2 * h < n; ++h) {
    std::vector<CMatrix> mats;
    mats.reserve(order);
    for (Element x = 0; x < order; ++x) {
      const int a = x % n, b = x / n;
      CMatrix rot = CMatrix::Zero(2, 2);
      rot(0, 0) = root_of_unity(static_cast<long long>(h) * a, n);
      rot(1, 1) = root_of_unity(-static_cast<long long>(h) * a, n);
      if (b) {
        CMatrix swap = CMatrix::Zero(2, 2);
        swap(0, 1) = 1.0;
        swap(1, 0) = 1.0;
        rot = rot * swap;
      }
      mats.push_back(std::move(rot));
    }
    out.emplace_back(group, std::move(mats), "rho_" + std::to_string(h));
  }
  return out;
}

std::vector<Representation> affine_catalog(const GroupPtr& group) {
  const int p = group->param();
  const int order = group->order();
  std::vector<Representation> out;
  // Characters of Z_p^* pulled back along (k,l) -> l; l = g^e.
  std::vector<int> log_table(p, 0);
  if (p > 2) {
    const int g = primitive_root(p);
    int x = 1;
    for (int e = 0; e < p - 1; ++e) {
      log_table[x] = e;
      x = (x * g) % p;
    }
  }
  for (int t = 0; t < p - 1; ++t) {
    std::vector<cplx> values(order);
    for (Element x = 0; x < order; ++x) {
      const int l = x / p + 1;
      values[x] = root_of_unity(static_cast<long long>(t) * log_table[l], p - 1);
    }
    out.push_back(character_rep(group, std::move(values), "psi_" + std::to_string(t)));
  }
  // For p = 2 this is the one-dimensional sign character.
  out.push_back(affine_rep(group));
  return out;
}

}  // namespace

std::vector<Representation> irreducible_reps(const GroupPtr& group) {
  switch (group->kind()) {
    case GroupKind::cyclic: return cyclic_catalog(group);
    case GroupKind::dihedral: return dihedral_catalog(group);
    case GroupKind::affine: return affine_catalog(group);
    default: break;
  }
  throw std::invalid_argument("no irreducible catalog for group kind " + to_string(group->kind()));
}

cplx character_inner_product(const Representation& a, const Representation& b) {
  const auto ca = a.character();
  const auto cb = b.character();
  cplx sum = 0.0;
  for (std::size_t g = 0; g < ca.size(); ++g) sum += ca[g] * std::conj(cb[g]);
  return sum / static_cast<double>(ca.size());
}

Representation block_diagonal(const std::vector<std::pair<Representation, int>>& blocks, std::vector<int> irrep_ids) {
  if (blocks.empty()) throw std::invalid_argument("block_diagonal needs at least one constituent");
  if (irrep_ids.empty()) {
    for (std::size_t i = 0; i < blocks.size(); ++i) irrep_ids.push_back(static_cast<int>(i));
  }
  if (irrep_ids.size() != blocks.size()) throw std::invalid_argument("one irrep id per constituent");
  const GroupPtr& group = blocks.front().first.group();
  std::vector<Block> layout;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& [rep, mult] = blocks[i];
    if (!rep.group()->same_table(*group)) throw std::invalid_argument("block_diagonal constituents live on different groups");
    if (mult < 1) throw std::invalid_argument("multiplicities must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(character_inner_product(rep, blocks[j].first)) > kEquivalenceTol) {
        throw std::invalid_argument("constituents " + std::to_string(j) + " and " + std::to_string(i) +
                                    " are equivalent; merge them into one block with a multiplicity");
      }
    }
    layout.push_back({irrep_ids[i], rep.degree(), mult});
  }
  BlockStructure structure(layout);
  const int n = structure.total_degree();
  std::vector<CMatrix> mats(group->order(), CMatrix::Zero(n, n));
  for (Element g = 0; g < group->order(); ++g) {
    int pos = 0;
    for (const auto& [rep, mult] : blocks) {
      const int d = rep.degree();
      for (int c = 0; c < mult; ++c, pos += d) mats[g].block(pos, pos, d, d) = rep.matrix(g);
    }
  }
  std::string name = "block_diagonal";
  Representation out(group, std::move(mats), name);
  out.set_block(std::move(structure));
  return out;
}

Representation block_diagonal_from_catalog(const std::vector<Representation>& catalog,
                                           const std::vector<std::pair<int, int>>& id_and_multiplicity) {
  std::vector<std::pair<Representation, int>> blocks;
  std::vector<int> ids;
  for (const auto& [id, mult] : id_and_multiplicity) {
    if (id < 0 || id >= static_cast<int>(catalog.size())) {
      throw std::out_of_range("irrep id " + std::to_string(id) + " not in catalog of size " +
                              std::to_string(catalog.size()));
    }
    blocks.emplace_back(catalog[id], mult);
    ids.push_back(id);
  }
  return block_diagonal(blocks, ids);
}

BlockStructure regular_block_structure(const std::vector<Representation>& catalog) {
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    blocks.push_back({static_cast<int>(i), catalog[i].degree(), catalog[i].degree()});
  }
  return BlockStructure(blocks);
}

Representation conjugate_rep(const Representation& pi, const CMatrix& v) {
  if (v.rows() != pi.degree() || v.cols() != pi.degree()) throw std::invalid_argument("conjugator degree mismatch");
  const double defect = unitarity_defect(v);
  if (defect > kUnitaryTol) {
    throw std::invalid_argument("conjugator is not unitary (defect " + std::to_string(defect) + ")");
  }
  std::vector<CMatrix> mats;
  mats.reserve(pi.matrices().size());
  for (const CMatrix& m : pi.matrices()) mats.push_back(v * m * v.adjoint());
  Representation out(pi.group(), std::move(mats), pi.realization() + "+conjugated");
  if (pi.cocycle()) out.set_cocycle(*pi.cocycle());
  return out;
}

CMatrix realization_transform_u(const BlockStructure& block) {
  const int n = block.total_degree();
  Eigen::VectorXcd diag(n);
  for (int tau = 1; tau <= block.num_blocks(); ++tau) {
    const Block& b = block.blocks()[tau - 1];
    for (int kappa = 1; kappa <= b.multiplicity; ++kappa) {
      int residue = kappa % b.degree;
      if (residue == 0) residue = b.degree;
      for (int iota = 1; iota <= b.degree; ++iota) {
        diag(block.alpha(tau, kappa, iota) - 1) = root_of_unity(static_cast<long long>(residue) * iota, b.degree);
      }
    }
  }
  return dft_matrix(n) * diag.asDiagonal();
}

double u_subrow_defect(const BlockStructure& block) {
  const int n = block.total_degree();
  const CMatrix u = realization_transform_u(block);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int tau = 1; tau <= block.num_blocks(); ++tau) {
      const Block& b = block.blocks()[tau - 1];
      const int d = b.degree;
      for (int k1 = 1; k1 <= b.multiplicity; ++k1) {
        const auto r1 = u.row(j).segment(block.alpha(tau, k1, 1) - 1, d);
        for (int k2 = 1; k2 <= b.multiplicity; ++k2) {
          const auto r2 = u.row(j).segment(block.alpha(tau, k2, 1) - 1, d);
          const cplx ip = (r1.array() * r2.array().conjugate()).sum();
          const double expected = (k1 - k2) % d == 0 ? static_cast<double>(d) / n : 0.0;
          worst = std::max(worst, std::abs(std::abs(ip) - expected));
        }
      }
    }
  }
  return worst;
}

double schur_orthogonality_defect(const std::vector<Representation>& catalog) {
  if (catalog.empty()) throw std::invalid_argument("empty catalog");
  const int order = catalog.front().group()->order();
  int cols = 0;
  for (const Representation& r : catalog) cols += r.degree() * r.degree();
  CMatrix w(order, cols);
  int c = 0;
  for (const Representation& r : catalog) {
    const int d = r.degree();
    const double scale = std::sqrt(static_cast<double>(d) / order);
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l, ++c) {
        for (Element g = 0; g < order; ++g) w(g, c) = scale * r.matrix(g)(k, l);
      }
    }
  }
  return (w.adjoint() * w - CMatrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
}

Representation induce(const CosetPartition& partition, const Representation& sigma, const CrossSection& gamma) {
  const FiniteGroup& g = *partition.parent();
  if (!sigma.group()->same_table(*partition.subgroup_group())) {
    throw std::invalid_argument("sigma is defined on a different subgroup than the partition");
  }
  const int cosets = partition.num_cosets();
  if (static_cast<int>(gamma.representatives().size()) != cosets) {
    throw std::invalid_argument("cross-section inconsistent with the coset partition");
  }
  for (int c = 0; c < cosets; ++c) {
    if (partition.coset_of(gamma.representative(c)) != c) {
      throw std::invalid_argument("cross-section inconsistent with the coset partition");
    }
  }
  const int k = sigma.degree();
  const int n = k * cosets;
  std::vector<CMatrix> mats;
  mats.reserve(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    CMatrix m = CMatrix::Zero(n, n);
    for (int c = 0; c < cosets; ++c) {
      const Element moved = g.mul(gamma.representative(c), x);
      const int target = partition.coset_of(moved);
      const Element h = g.mul(moved, g.inverse(gamma.representative(target)));
      m.block(c * k, target * k, k, k) = sigma.matrix(partition.local_index(h));
    }
    mats.push_back(std::move(m));
  }
  return Representation(partition.parent(), std::move(mats), "induced");
}

}  // namespace orbitcs
