#pragma once

#include "orbitcs/representation.hpp"

#include <memory>
#include <vector>

namespace orbitcs {

struct FourierCoefficients {
  std::shared_ptr<const std::vector<Representation>> catalog;
  std::vector<CMatrix> coefficient;  // one d x d matrix per catalog entry
};

// Throws std::invalid_argument unless sum of squared degrees equals |G|.
void require_complete_catalog(const std::vector<Representation>& catalog);

// fhat(pi) = sum_g f(g) pi(g), by direct summation.
FourierCoefficients group_fourier(const CVector& f, std::shared_ptr<const std::vector<Representation>> catalog);
// f(g) = (1/|G|) sum_pi d_pi tr(A(pi) pi(g^{-1})).
CVector group_inverse_fourier(const FourierCoefficients& a);

// (1/|G|) sum_pi d_pi tr(A(pi) B(pi)^*); equals <f, h> for the transforms of f and h.
cplx fourier_inner_product(const FourierCoefficients& a, const FourierCoefficients& b);

// (x * y)(g) = sum_h x(h) y(g^{-1} h).
CVector group_convolve(const FiniteGroup& group, const CVector& x, const CVector& y);

// (Fx)_l = sum_{j=1}^n x_j e^{2 pi i jl/n}; position p holds index p+1.
CVector classical_dft(const CVector& x);
CVector classical_idft(const CVector& y);

// v_j = 1 iff j = 1 mod n/s (1-based j).
CVector delta_train(int n, int s);

}  // namespace orbitcs
