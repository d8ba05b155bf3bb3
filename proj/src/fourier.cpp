#include "orbitcs/fourier.hpp"

#include <stdexcept>

namespace orbitcs {

void require_complete_catalog(const std::vector<Representation>& catalog) {
  if (catalog.empty()) throw std::invalid_argument("empty irreducible catalog");
  const int order = catalog.front().group()->order();
  int dim = 0;
  for (const Representation& r : catalog) dim += r.degree() * r.degree();
  if (dim != order) {
    throw std::invalid_argument("incomplete catalog: sum of squared degrees is " + std::to_string(dim) +
                                ", group order is " + std::to_string(order));
  }
}

FourierCoefficients group_fourier(const CVector& f, std::shared_ptr<const std::vector<Representation>> catalog) {
  if (!catalog) throw std::invalid_argument("missing catalog");
  require_complete_catalog(*catalog);
  const int order = catalog->front().group()->order();
  if (f.size() != order) throw std::invalid_argument("function length does not match group order");
  FourierCoefficients out;
  out.coefficient.reserve(catalog->size());
  for (const Representation& pi : *catalog) {
    CMatrix acc = CMatrix::Zero(pi.degree(), pi.degree());
    for (Element g = 0; g < order; ++g) acc += f(g) * pi.matrix(g);
    out.coefficient.push_back(std::move(acc));
  }
  out.catalog = std::move(catalog);
  return out;
}

CVector group_inverse_fourier(const FourierCoefficients& a) {
  if (!a.catalog) throw std::invalid_argument("missing catalog");
  require_complete_catalog(*a.catalog);
  const auto& catalog = *a.catalog;
  if (a.coefficient.size() != catalog.size()) throw std::invalid_argument("one coefficient per irreducible");
  const FiniteGroup& group = *catalog.front().group();
  CVector f = CVector::Zero(group.order());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const Representation& pi = catalog[i];
    for (Element g = 0; g < group.order(); ++g) {
      f(g) += static_cast<double>(pi.degree()) * (a.coefficient[i] * pi.matrix(group.inverse(g))).trace();
    }
  }
  return f / static_cast<double>(group.order());
}

cplx fourier_inner_product(const FourierCoefficients& a, const FourierCoefficients& b) {
  if (!a.catalog || a.catalog != b.catalog) throw std::invalid_argument("coefficients must share one catalog");
  const auto& catalog = *a.catalog;
  cplx sum = 0.0;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    sum += static_cast<double>(catalog[i].degree()) * (a.coefficient[i] * b.coefficient[i].adjoint()).trace();
  }
  return sum / static_cast<double>(catalog.front().group()->order());
}

CVector group_convolve(const FiniteGroup& group, const CVector& x, const CVector& y) {
  const int n = group.order();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("convolution operands must live on the group");
  CVector out = CVector::Zero(n);
  for (Element g = 0; g < n; ++g) {
    const Element gi = group.inverse(g);
    for (Element h = 0; h < n; ++h) out(g) += x(h) * y(group.mul(gi, h));
  }
  return out;
}

CVector classical_dft(const CVector& x) {
  const long long n = x.size();
  CVector y = CVector::Zero(n);
  for (long long l = 1; l <= n; ++l) {
    for (long long j = 1; j <= n; ++j) y(l - 1) += x(j - 1) * root_of_unity(j * l, n);
  }
  return y;
}

CVector classical_idft(const CVector& y) {
  const long long n = y.size();
  CVector x = CVector::Zero(n);
  for (long long j = 1; j <= n; ++j) {
    for (long long l = 1; l <= n; ++l) x(j - 1) += y(l - 1) * root_of_unity(-j * l, n);
  }
  return x / static_cast<double>(n);
}

CVector delta_train(int n, int s) {
  if (n < 1 || s < 1 || n % s != 0) {
    throw std::invalid_argument("delta train needs s dividing n (got n=" + std::to_string(n) + ", s=" +
                                std::to_string(s) + ")");
  }
  const int spacing = n / s;
  CVector v = CVector::Zero(n);
  for (int j = 1; j <= n; ++j) {
    if ((j - 1) % spacing == 0) v(j - 1) = 1.0;
  }
  return v;
}

}  // namespace orbitcs
