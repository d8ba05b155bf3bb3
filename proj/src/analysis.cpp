#include "orbitcs/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace orbitcs {

namespace {

double largest_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double spectral_norm_hermitian(const CMatrix& hermitian) {
  if (hermitian.rows() == 1) return std::abs(hermitian(0, 0).real());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

// Advance a strictly increasing k-subset of 0..n-1 in lexicographic order.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::vector<int> first_combination(int k) {
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  return c;
}

}  // namespace

ConstantReport orbit_column_constant(const Representation& rep, std::span<const Element> omega) {
  if (omega.empty()) throw std::invalid_argument("orbit column constant needs a nonempty sampling set");
  std::vector<Element> sorted(omega.begin(), omega.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("orbit column constant is defined for sets; sampling set has repeated elements");
  }
  const int n = rep.degree();
  const int m = static_cast<int>(omega.size());
  ConstantReport report;
  report.per_coordinate.resize(n);
  CMatrix rows(m, n);
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < m; ++r) {
      const Element g = omega[r];
      if (g < 0 || g >= rep.group()->order()) throw std::invalid_argument("sampling index outside the group");
      rows.row(r) = rep.matrix(g).row(j);
    }
    const double value = m <= n ? largest_eigenvalue(rows * rows.adjoint()) : largest_eigenvalue(rows.adjoint() * rows);
    report.per_coordinate[j] = value;
  }
  const auto best = std::max_element(report.per_coordinate.begin(), report.per_coordinate.end());
  report.value = *best;
  report.argmax_coordinate = static_cast<int>(best - report.per_coordinate.begin());
  return report;
}

std::string to_string(ConstantFamily family) {
  switch (family) {
    case ConstantFamily::single: return "single";
    case ConstantFamily::all_subsets: return "all_subsets";
    case ConstantFamily::coset_admissible: return "coset_admissible";
    case ConstantFamily::sampled: return "sampled";
  }
  return "unknown";
}

ConstantFamily parse_constant_family(const std::string& name) {
  if (name == "single") return ConstantFamily::single;
  if (name == "all_subsets") return ConstantFamily::all_subsets;
  if (name == "coset_admissible") return ConstantFamily::coset_admissible;
  if (name == "sampled") return ConstantFamily::sampled;
  throw std::invalid_argument("unknown constant family '" + name + "'");
}

std::uint64_t for_each_admissible_set(const CosetPartition& partition,
                                      const std::function<void(const std::vector<Element>&)>& visit) {
  const std::uint64_t total = count_admissible_sets(partition) - 1;
  if (total > kEnumerationBudget) {
    throw BudgetExceeded("coset-admissible family has " + std::to_string(total) +
                         " sets, above the enumeration budget; use a smaller group or the sampled family");
  }
  const int cosets = partition.num_cosets();
  const int radix = static_cast<int>(partition.subgroup().size()) + 1;
  std::vector<int> digit(cosets, 0);
  std::vector<Element> omega;
  std::uint64_t visited = 0;
  while (true) {
    int i = 0;
    while (i < cosets && digit[i] == radix - 1) digit[i++] = 0;
    if (i == cosets) break;
    ++digit[i];
    omega.clear();
    for (int c = 0; c < cosets; ++c) {
      if (digit[c] > 0) omega.push_back(partition.cosets()[c][digit[c] - 1]);
    }
    std::sort(omega.begin(), omega.end());
    visit(omega);
    ++visited;
  }
  return visited;
}

FamilyReport constant_over_family(const Representation& rep, const FamilySpec& family) {
  FamilyReport report;
  const int order = rep.group()->order();
  auto consider = [&](const std::vector<Element>& omega) {
    const double v = orbit_column_constant(rep, omega).value;
    if (report.sets_evaluated == 0 || v > report.value) {
      report.value = v;
      report.argmax_omega = omega;
    }
    ++report.sets_evaluated;
  };
  switch (family.kind) {
    case ConstantFamily::single:
      consider(family.omega);
      break;
    case ConstantFamily::all_subsets: {
      if (order > kAllSubsetsMaxOrder) {
        throw BudgetExceeded("all_subsets family needs |G| <= " + std::to_string(kAllSubsetsMaxOrder) +
                             " (got " + std::to_string(order) + "); use the sampled family");
      }
      if (family.subset_size < 0 || family.subset_size > order) throw std::invalid_argument("subset size out of range");
      const int lo = family.subset_size == 0 ? 1 : family.subset_size;
      const int hi = family.subset_size == 0 ? order : family.subset_size;
      for (int k = lo; k <= hi; ++k) {
        std::vector<int> c = first_combination(k);
        do {
          consider(c);
        } while (next_combination(c, order));
      }
      break;
    }
    case ConstantFamily::coset_admissible:
      if (!family.partition) throw std::invalid_argument("coset_admissible family needs a coset partition");
      if (!family.partition->parent()->same_table(*rep.group())) {
        throw std::invalid_argument("coset partition belongs to a different group");
      }
      for_each_admissible_set(*family.partition, consider);
      break;
    case ConstantFamily::sampled: {
      if (family.samples < 1) throw std::invalid_argument("sampled family needs at least one sample");
      if (family.subset_size < 0 || family.subset_size > order) throw std::invalid_argument("subset size out of range");
      Rng rng(family.seed);
      for (int t = 0; t < family.samples; ++t) {
        const int k = family.subset_size == 0 ? 1 + static_cast<int>(rng.below(order)) : family.subset_size;
        consider(sample_omega(*rep.group(), k, SamplingMode::fixed_set, rng).indices);
      }
      break;
    }
  }
  return report;
}

int affine_omega1(const FiniteGroup& group, std::span<const Element> omega) {
  if (group.kind() != GroupKind::affine) throw std::invalid_argument("affine_omega1 needs an affine group");
  const int p = group.param();
  std::set<int> first;
  for (Element x : omega) {
    if (x < 0 || x >= group.order()) throw std::invalid_argument("sampling index outside the group");
    first.insert(x % p);
  }
  return static_cast<int>(first.size());
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

RipReport rip_constant(const CMatrix& phi, int s, int threads) {
  const int n = static_cast<int>(phi.cols());
  if (s < 1 || s > n) throw std::invalid_argument("sparsity must lie in 1..n");
  const std::uint64_t total = binomial(n, s);
  if (total > kEnumerationBudget) {
    throw BudgetExceeded("RIP enumeration over C(" + std::to_string(n) + "," + std::to_string(s) +
                         ") supports exceeds the budget of " + std::to_string(kEnumerationBudget) +
                         "; reduce n or s");
  }
  const CMatrix gram = phi.adjoint() * phi;
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::uint64_t>(total, 64))));

  struct Best {
    double delta = -1.0;
    std::uint64_t rank = 0;
    std::vector<int> support;
  };
  std::vector<Best> best(threads);
  auto work = [&](int tid) {
    std::vector<int> c = first_combination(s);
    CMatrix sub(s, s);
    std::uint64_t rank = 0;
    do {
      if (static_cast<int>(rank % threads) == tid) {
        for (int a = 0; a < s; ++a) {
          for (int b = 0; b < s; ++b) sub(a, b) = gram(c[a], c[b]);
          sub(a, a) -= 1.0;
        }
        const double d = spectral_norm_hermitian(sub);
        if (d > best[tid].delta) best[tid] = {d, rank, c};
      }
      ++rank;
    } while (next_combination(c, n));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  const Best* winner = &best[0];
  for (const Best& b : best) {
    if (b.delta > winner->delta || (b.delta == winner->delta && b.rank < winner->rank)) winner = &b;
  }
  RipReport report;
  report.s = s;
  report.delta = winner->delta;
  report.witness_support = winner->support;
  report.supports_checked = total;
  return report;
}

namespace {

CMatrix full_orbit_matrix(const Representation& rep, const CVector& xi, const CMatrix& basis) {
  const int n = rep.degree();
  if (xi.size() != n) throw std::invalid_argument("generating vector length does not match representation degree");
  const int order = rep.group()->order();
  CMatrix a(order, n);
  for (Element g = 0; g < order; ++g) a.row(g) = rep.apply(g, xi).adjoint();
  if (basis.size() != 0) {
    if (basis.rows() != n || basis.cols() != n) throw std::invalid_argument("basis dimension mismatch");
    a = a * basis;
  }
  return a;
}

}  // namespace

double bos_constant(const Representation& rep, const CVector& xi, const CMatrix& basis) {
  return full_orbit_matrix(rep, xi, basis).cwiseAbs().maxCoeff();
}

double column_orthonormality_defect(const Representation& rep, const CVector& xi, const CMatrix& basis) {
  const CMatrix a = full_orbit_matrix(rep, xi, basis) / std::sqrt(static_cast<double>(rep.group()->order()));
  return (a.adjoint() * a - CMatrix::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
}

int d_max(const BlockStructure& block) {
  int best = 1;
  for (const Block& b : block.blocks()) {
    if (b.multiplicity > 1) best = std::max(best, b.degree);
  }
  return best;
}

namespace {

void check_bound_domain(int s, int n, double delta, double eta, double c) {
  if (s < 1 || n < 1) throw std::invalid_argument("s and n must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
  if (!(c > 0.0)) throw std::invalid_argument("formula constant must be positive");
}

std::int64_t ceil_count(double v) {
  if (!std::isfinite(v) || v > 9.0e18) throw std::overflow_error("measurement bound overflows");
  return static_cast<std::int64_t>(std::ceil(v));
}

}  // namespace

std::int64_t orbit_measurement_bound(int s, int n, double c_const, double delta, double eta, double c) {
  check_bound_domain(s, n, delta, eta, c);
  if (!(c_const > 0.0)) throw std::invalid_argument("orbit column constant must be positive");
  const double l = std::log(s * c_const);
  const double first = l * l * std::log(static_cast<double>(n)) * std::log(4.0 * n);
  const double second = std::log(1.0 / eta);
  return ceil_count(c / (delta * delta) * s * c_const * std::max(first, second));
}

std::int64_t structured_measurement_bound(int s, int n, int group_order, int dmax, double delta, double eta, double c) {
  check_bound_domain(s, n, delta, eta, c);
  if (group_order < 1 || dmax < 1) throw std::invalid_argument("group order and d_max must be positive");
  const double l2eta = std::log(2.0 / eta);
  const double core = s * static_cast<double>(dmax) * std::log(8.0 * group_order) * l2eta / (delta * delta);
  const double l4s = std::log(4.0 * s);
  const double first = l4s * l4s * std::log(8.0 * n) * std::log(core);
  return ceil_count(c * core * std::max(first, l2eta));
}

}  // namespace orbitcs
