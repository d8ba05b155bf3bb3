#include "orbitcs/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orbitcs {

std::string to_string(XiScheme scheme) {
  switch (scheme) {
    case XiScheme::complex_gaussian: return "complex_gaussian";
    case XiScheme::rademacher: return "rademacher";
    case XiScheme::steinhaus: return "steinhaus";
    case XiScheme::structured_block: return "structured_block";
  }
  return "unknown";
}

XiScheme parse_xi_scheme(const std::string& name) {
  if (name == "complex_gaussian" || name == "gaussian") return XiScheme::complex_gaussian;
  if (name == "rademacher") return XiScheme::rademacher;
  if (name == "steinhaus") return XiScheme::steinhaus;
  if (name == "structured_block" || name == "structured") return XiScheme::structured_block;
  throw std::invalid_argument("unknown generating-vector scheme '" + name + "'");
}

std::string to_string(SamplingMode mode) {
  switch (mode) {
    case SamplingMode::fixed_set: return "fixed_set";
    case SamplingMode::uniform_iid: return "uniform_iid";
    case SamplingMode::coset_admissible: return "coset_admissible";
    case SamplingMode::adversarial: return "adversarial";
  }
  return "unknown";
}

SamplingMode parse_sampling_mode(const std::string& name) {
  if (name == "fixed_set") return SamplingMode::fixed_set;
  if (name == "uniform_iid") return SamplingMode::uniform_iid;
  if (name == "coset_admissible") return SamplingMode::coset_admissible;
  if (name == "adversarial") return SamplingMode::adversarial;
  throw std::invalid_argument("unknown sampling mode '" + name + "'");
}

GeneratingVector sample_generating_vector(int n, XiScheme scheme, std::uint64_t seed,
                                          const std::optional<BlockStructure>& block) {
  Rng rng(seed);
  GeneratingVector xi = sample_generating_vector(n, scheme, rng, block);
  xi.seed = seed;
  return xi;
}

GeneratingVector sample_generating_vector(int n, XiScheme scheme, Rng& rng,
                                          const std::optional<BlockStructure>& block) {
  if (n < 1) throw std::invalid_argument("generating vector length must be positive");
  GeneratingVector xi;
  xi.scheme = scheme;
  xi.values = CVector::Zero(n);
  switch (scheme) {
    case XiScheme::complex_gaussian:
      for (int j = 0; j < n; ++j) xi.values(j) = rng.complex_gaussian();
      break;
    case XiScheme::rademacher:
      for (int j = 0; j < n; ++j) xi.values(j) = rng.rademacher();
      break;
    case XiScheme::steinhaus:
      for (int j = 0; j < n; ++j) xi.values(j) = rng.steinhaus();
      break;
    case XiScheme::structured_block: {
      if (!block) throw std::invalid_argument("structured_block generating vector needs a block structure");
      if (block->total_degree() != n) {
        throw std::invalid_argument("block structure degree " + std::to_string(block->total_degree()) +
                                    " does not match n = " + std::to_string(n));
      }
      for (int tau = 1; tau <= block->num_blocks(); ++tau) {
        const Block& b = block->blocks()[tau - 1];
        const int d = b.degree, m = b.multiplicity;
        if (m > d) {
          throw std::invalid_argument("structured generating vector needs multiplicity <= degree in block " +
                                      std::to_string(tau));
        }
        const double tail_scale = std::sqrt(static_cast<double>(d) / (d - m + 1));
        for (int iota = 1; iota <= d; ++iota) {
          const cplx eps = rng.steinhaus();
          const double scale = iota < m ? std::sqrt(static_cast<double>(d)) : tail_scale;
          xi.values(block->beta(tau, iota) - 1) = scale * eps;
        }
      }
      xi.block = block;
      break;
    }
  }
  return xi;
}

double structured_block_norm_defect(const GeneratingVector& xi) {
  if (!xi.block) throw std::invalid_argument("generating vector carries no block structure");
  const BlockStructure& bs = *xi.block;
  double worst = 0.0;
  for (int tau = 1; tau <= bs.num_blocks(); ++tau) {
    const Block& b = bs.blocks()[tau - 1];
    for (int kappa = 1; kappa <= b.multiplicity; ++kappa) {
      const int start = bs.alpha(tau, kappa, 1) - 1;
      const double energy = xi.values.segment(start, b.degree).squaredNorm();
      worst = std::max(worst, std::abs(energy - b.degree));
    }
  }
  return worst;
}

SamplingSet sample_omega(const FiniteGroup& group, int m, SamplingMode mode, std::uint64_t seed,
                         const CosetPartition* partition) {
  Rng rng(seed);
  SamplingSet omega = sample_omega(group, m, mode, rng, partition);
  omega.seed = seed;
  return omega;
}

namespace {

// k distinct values from 0..n-1, sorted.
std::vector<int> distinct_subset(int n, int k, Rng& rng) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

SamplingSet sample_omega(const FiniteGroup& group, int m, SamplingMode mode, Rng& rng,
                         const CosetPartition* partition) {
  const int order = group.order();
  if (m < 1) throw std::invalid_argument("sampling set size must be positive");
  SamplingSet omega;
  omega.mode = mode;
  switch (mode) {
    case SamplingMode::fixed_set:
    case SamplingMode::adversarial:
      if (m > order) {
        throw std::invalid_argument("fixed sampling set of size " + std::to_string(m) + " exceeds |G| = " +
                                    std::to_string(order));
      }
      if (m == order) {
        omega.indices.resize(order);
        std::iota(omega.indices.begin(), omega.indices.end(), 0);
      } else {
        omega.indices = distinct_subset(order, m, rng);
      }
      break;
    case SamplingMode::uniform_iid:
      omega.indices.resize(m);
      for (int r = 0; r < m; ++r) omega.indices[r] = static_cast<Element>(rng.below(order));
      break;
    case SamplingMode::coset_admissible: {
      if (!partition) throw std::invalid_argument("coset_admissible sampling needs a coset partition");
      if (m > partition->num_cosets()) {
        throw std::invalid_argument("coset-admissible set of size " + std::to_string(m) + " exceeds the " +
                                    std::to_string(partition->num_cosets()) + " cosets");
      }
      for (int c : distinct_subset(partition->num_cosets(), m, rng)) {
        const auto& coset = partition->cosets()[c];
        omega.indices.push_back(coset[rng.below(coset.size())]);
      }
      std::sort(omega.indices.begin(), omega.indices.end());
      break;
    }
  }
  return omega;
}

SamplingSet explicit_omega(const FiniteGroup& group, std::vector<Element> indices, SamplingMode mode) {
  if (indices.empty()) throw std::invalid_argument("sampling set must not be empty");
  std::vector<Element> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= group.order()) {
      throw std::invalid_argument("sampling index " + std::to_string(sorted[i]) + " is not a group element");
    }
    if (i > 0 && sorted[i] == sorted[i - 1] && mode != SamplingMode::uniform_iid) {
      throw std::invalid_argument("duplicate element " + std::to_string(sorted[i]) + " in a fixed sampling set");
    }
  }
  SamplingSet omega;
  omega.indices = std::move(indices);
  omega.mode = mode;
  return omega;
}

MeasurementEnsemble build_measurement(std::shared_ptr<const Representation> rep, GeneratingVector xi,
                                      SamplingSet omega, CMatrix basis, bool normalize) {
  if (!rep) throw std::invalid_argument("measurement needs a representation");
  const int n = rep->degree();
  if (xi.values.size() != n) {
    throw std::invalid_argument("generating vector length " + std::to_string(xi.values.size()) +
                                " does not match representation degree " + std::to_string(n));
  }
  if (basis.size() != 0) {
    if (basis.rows() != n || basis.cols() != n) throw std::invalid_argument("basis dimension mismatch");
    const double defect = unitarity_defect(basis);
    if (defect > kUnitaryTol) {
      throw std::invalid_argument("basis is not unitary (defect " + std::to_string(defect) + ")");
    }
  }
  const int m = static_cast<int>(omega.indices.size());
  if (m < 1) throw std::invalid_argument("empty sampling set");
  CMatrix phi(m, n);
  for (int r = 0; r < m; ++r) {
    const Element g = omega.indices[r];
    if (g < 0 || g >= rep->group()->order()) throw std::invalid_argument("sampling index outside the group");
    phi.row(r) = rep->apply(g, xi.values).adjoint();
  }
  if (basis.size() != 0) phi = phi * basis;
  if (normalize) phi /= std::sqrt(static_cast<double>(m));
  MeasurementEnsemble ens;
  ens.phi = std::move(phi);
  ens.rep = std::move(rep);
  ens.xi = std::move(xi);
  ens.omega = std::move(omega);
  ens.basis = basis.size() != 0 ? std::move(basis) : CMatrix::Identity(n, n);
  ens.normalized = normalize;
  return ens;
}

}  // namespace orbitcs
