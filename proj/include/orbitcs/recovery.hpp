#pragma once

#include "orbitcs/types.hpp"

#include <string>

namespace orbitcs {

struct RecoveryResult {
  CVector estimate;
  double residual_norm = 0.0;  // ||phi * estimate - y||_2
  int iterations = 0;
  bool converged = false;
  bool rank_deficient = false;  // OMP / oracle: a least-squares step fell back to the pseudo-inverse
  std::string solver;
};

struct BasisPursuitOptions {
  double tol_feas = 1e-8;
  double tol_opt = 1e-7;
  int max_iter = 50000;
};

// min ||z||_1 subject to phi z = y over C^n, by ADMM with a duality-gap stopping rule.
// Throws std::invalid_argument when y is not in the range of phi.
RecoveryResult basis_pursuit(const CMatrix& phi, const CVector& y, const BasisPursuitOptions& options = {});

RecoveryResult omp(const CMatrix& phi, const CVector& y, int s);

struct IhtOptions {
  double step = 0.0;  // 0 selects 1/||phi||^2
  int max_iter = 5000;
};

RecoveryResult iht(const CMatrix& phi, const CVector& y, int s, const IhtOptions& options = {});

inline constexpr double kOracleFeasTol = 1e-8;

RecoveryResult l0_oracle(const CMatrix& phi, const CVector& y, int s);

// Keep the s largest-modulus entries, ties to the lowest index.
CVector hard_threshold(const CVector& x, int s);

}  // namespace orbitcs
