#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace orbitcs {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Dense index of a group element under the constructor-defined numbering.
using Element = int;

inline constexpr double kPi = 3.14159265358979323846;

// e^{2 pi i num / den}, with num reduced mod den before forming the angle.
inline cplx root_of_unity(long long num, long long den) {
  long long r = num % den;
  if (r < 0) r += den;
  const double angle = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

// Thrown when an exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown for malformed or unresolvable experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orbitcs
