#include "orbitcs/recovery.hpp"

#include "orbitcs/analysis.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orbitcs {

namespace {

void check_system(const CMatrix& phi, const CVector& y) {
  if (phi.rows() == 0 || phi.cols() == 0) throw std::invalid_argument("empty measurement matrix");
  if (y.size() != phi.rows()) throw std::invalid_argument("measurement vector length does not match phi");
}

RecoveryResult finish(const CMatrix& phi, const CVector& y, CVector estimate, int iterations, bool converged,
                      const char* solver) {
  RecoveryResult r;
  r.residual_norm = (phi * estimate - y).norm();
  r.estimate = std::move(estimate);
  r.iterations = iterations;
  r.converged = converged;
  r.solver = solver;
  return r;
}

CVector soft_threshold(const CVector& v, double t) {
  CVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    out(i) = a > t ? v(i) * ((a - t) / a) : cplx(0.0);
  }
  return out;
}

struct LeastSquares {
  CVector coef;
  double residual;
  bool rank_deficient;
};

LeastSquares solve_on_support(const CMatrix& phi, const CVector& y, const std::vector<int>& support) {
  CMatrix sub(phi.rows(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) sub.col(k) = phi.col(support[k]);
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(sub);
  LeastSquares ls;
  ls.coef = cod.solve(y);
  ls.residual = (sub * ls.coef - y).norm();
  ls.rank_deficient = cod.rank() < static_cast<Eigen::Index>(support.size());
  return ls;
}

CVector scatter(const std::vector<int>& support, const CVector& coef, Eigen::Index n) {
  CVector x = CVector::Zero(n);
  for (std::size_t k = 0; k < support.size(); ++k) x(support[k]) = coef(k);
  return x;
}

}  // namespace

CVector hard_threshold(const CVector& x, int s) {
  const int n = static_cast<int>(x.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(x(a)) > std::abs(x(b)); });
  CVector out = CVector::Zero(n);
  for (int k = 0; k < std::min(s, n); ++k) out(order[k]) = x(order[k]);
  return out;
}

RecoveryResult basis_pursuit(const CMatrix& phi, const CVector& y, const BasisPursuitOptions& options) {
  check_system(phi, y);
  const Eigen::Index n = phi.cols();

  // Jacobi rather than divide-and-conquer: the latter loses orthogonality on the heavily repeated
  // singular values that duplicate sampling rows produce.
  Eigen::JacobiSVD<CMatrix> svd(phi, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? 1e-10 * std::max(1.0, sv(0)) : 0.0;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  const CMatrix ur = svd.matrixU().leftCols(rank);
  const CMatrix vr = svd.matrixV().leftCols(rank);
  const RVector sr = sv.head(rank);

  const double feas_scale = std::max(1.0, y.norm());
  const CVector uy = ur.adjoint() * y;
  if ((y - ur * uy).norm() > options.tol_feas * feas_scale) {
    throw std::invalid_argument("basis pursuit: measurement vector is not in the range of phi");
  }
  const CVector x_ls = vr * (uy.array() / sr.array().cast<cplx>()).matrix();
  auto project = [&](const CVector& v) -> CVector { return v - vr * (vr.adjoint() * v) + x_ls; };
  auto l1 = [](const CVector& v) { return v.cwiseAbs().sum(); };

  CVector z = x_ls;
  CVector u = CVector::Zero(n);
  CVector x = x_ls;
  double rho = 1.0;
  CVector best = x_ls;
  double best_l1 = l1(x_ls);
  bool converged = false;
  int iter = 0;

  auto certify = [&]() {
    // Candidate primal points: projection of z and least squares on supp(z).
    std::vector<CVector> candidates{project(z)};
    std::vector<int> support;
    const double zmax = z.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(z(i)) > 1e-9 * std::max(1.0, zmax)) support.push_back(static_cast<int>(i));
    }
    if (!support.empty() && static_cast<Eigen::Index>(support.size()) <= phi.rows()) {
      const LeastSquares ls = solve_on_support(phi, y, support);
      candidates.push_back(scatter(support, ls.coef, n));
    } else if (support.empty()) {
      candidates.push_back(CVector::Zero(n));
    }
    for (const CVector& c : candidates) {
      if ((phi * c - y).norm() <= options.tol_feas * feas_scale) {
        const double v = l1(c);
        if (v < best_l1) {
          best_l1 = v;
          best = c;
        }
      }
    }
    // Dual point from the scaled multiplier, pushed into range(phi^*) and made feasible.
    const CVector w = rho * u;
    const CVector vw = vr.adjoint() * w;
    CVector nu = ur * (vw.array() / sr.array().cast<cplx>()).matrix();
    const double infnorm = rank > 0 ? (vr * vw).cwiseAbs().maxCoeff() : 0.0;
    nu /= std::max(1.0, infnorm);
    const double dual = nu.dot(y).real();
    const double gap = best_l1 - dual;
    const double feas = (phi * best - y).norm();
    return feas <= options.tol_feas * feas_scale && gap <= options.tol_opt * (1.0 + best_l1);
  };

  if (x_ls.cwiseAbs().maxCoeff() == 0.0) {
    return finish(phi, y, CVector::Zero(n), 0, true, "basis_pursuit");
  }

  for (iter = 1; iter <= options.max_iter; ++iter) {
    x = project(z - u);
    const CVector z_old = z;
    z = soft_threshold(x + u, 1.0 / rho);
    u += x - z;
    const double r_primal = (x - z).norm();
    const double r_dual = rho * (z - z_old).norm();
    if (r_primal > 10.0 * r_dual) {
      rho *= 2.0;
      u /= 2.0;
    } else if (r_dual > 10.0 * r_primal) {
      rho /= 2.0;
      u *= 2.0;
    }
    if (iter % 10 == 0 && certify()) {
      converged = true;
      break;
    }
  }
  return finish(phi, y, best, std::min(iter, options.max_iter), converged, "basis_pursuit");
}

RecoveryResult omp(const CMatrix& phi, const CVector& y, int s) {
  check_system(phi, y);
  const Eigen::Index n = phi.cols();
  if (s < 0 || s > phi.rows()) throw std::invalid_argument("OMP needs 0 <= s <= m");
  std::vector<int> support;
  std::vector<char> chosen(n, 0);
  CVector coef;
  CVector residual = y;
  bool rank_deficient = false;
  int steps = 0;
  while (steps < s && residual.norm() > 1e-10) {
    const CVector corr = phi.adjoint() * residual;
    int pick = -1;
    double best = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!chosen[j] && std::abs(corr(j)) > best) {
        best = std::abs(corr(j));
        pick = static_cast<int>(j);
      }
    }
    if (pick < 0) break;
    chosen[pick] = 1;
    support.push_back(pick);
    const LeastSquares ls = solve_on_support(phi, y, support);
    rank_deficient = rank_deficient || ls.rank_deficient;
    coef = ls.coef;
    residual = y - phi * scatter(support, coef, n);
    ++steps;
  }
  CVector x = support.empty() ? CVector::Zero(n) : scatter(support, coef, n);
  RecoveryResult r = finish(phi, y, std::move(x), steps, true, "omp");
  r.converged = r.residual_norm <= 1e-10 || steps == s;
  r.rank_deficient = rank_deficient;
  return r;
}

RecoveryResult iht(const CMatrix& phi, const CVector& y, int s, const IhtOptions& options) {
  check_system(phi, y);
  const Eigen::Index n = phi.cols();
  if (s < 0) throw std::invalid_argument("IHT needs s >= 0");
  double step = options.step;
  if (step <= 0.0) {
    Eigen::JacobiSVD<CMatrix> svd(phi);
    const double norm = svd.singularValues()(0);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("IHT needs a nonzero finite phi");
    step = 1.0 / (norm * norm);
  }
  CVector x = CVector::Zero(n);
  double res = y.norm();
  double min_res = res;
  int iter = 0;
  bool converged = res <= 1e-10;
  while (!converged && iter < options.max_iter) {
    ++iter;
    CVector next = hard_threshold(x + step * (phi.adjoint() * (y - phi * x)), s);
    const bool fixed_point = (next - x).norm() <= 1e-15 * (1.0 + x.norm());
    x = std::move(next);
    res = (phi * x - y).norm();
    if (res <= 1e-10 || fixed_point) {
      converged = true;
      break;
    }
    min_res = std::min(min_res, res);
    if (res > 10.0 * min_res) break;
  }
  return finish(phi, y, std::move(x), iter, converged, "iht");
}

RecoveryResult l0_oracle(const CMatrix& phi, const CVector& y, int s) {
  check_system(phi, y);
  const int n = static_cast<int>(phi.cols());
  if (s < 0 || s > n) throw std::invalid_argument("oracle sparsity must lie in 0..n");
  std::uint64_t total = 0;
  for (int k = 0; k <= s; ++k) {
    total += binomial(n, k);
    if (total > kEnumerationBudget) {
      throw BudgetExceeded("l0 oracle would enumerate more than " + std::to_string(kEnumerationBudget) +
                           " supports; reduce n or s");
    }
  }
  CVector best = CVector::Zero(n);
  double best_res = y.norm();
  bool rank_deficient = false;
  int checked = 1;
  if (best_res <= kOracleFeasTol) return finish(phi, y, best, checked, true, "l0_oracle");

  for (int k = 1; k <= s; ++k) {
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 0);
    CVector size_best;
    double size_res = std::numeric_limits<double>::infinity();
    bool size_rd = false;
    while (true) {
      const LeastSquares ls = solve_on_support(phi, y, c);
      ++checked;
      if (ls.residual < size_res) {
        size_res = ls.residual;
        size_best = scatter(c, ls.coef, n);
        size_rd = ls.rank_deficient;
      }
      int i = k - 1;
      while (i >= 0 && c[i] == n - k + i) --i;
      if (i < 0) break;
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
    if (size_res < best_res) {
      best_res = size_res;
      best = size_best;
      rank_deficient = size_rd;
    }
    if (size_res <= kOracleFeasTol) {
      RecoveryResult r = finish(phi, y, size_best, checked, true, "l0_oracle");
      r.rank_deficient = size_rd;
      return r;
    }
  }
  RecoveryResult r = finish(phi, y, best, checked, false, "l0_oracle");
  r.rank_deficient = rank_deficient;
  return r;
}

}  // namespace orbitcs
