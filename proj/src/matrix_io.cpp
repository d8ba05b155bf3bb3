#include "orbitcs/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace orbitcs {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
  return in;
}

}  // namespace

CMatrix read_complex_matrix(std::istream& in) {
  long rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw std::runtime_error("matrix file: missing 'rows cols' header");
  if (rows < 1 || cols < 1) throw std::runtime_error("matrix file: dimensions must be positive");
  CMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im)) {
        throw std::runtime_error("matrix file: expected " + std::to_string(rows * cols) + " entries, stopped at row " +
                                 std::to_string(r + 1) + " column " + std::to_string(c + 1));
      }
      m(r, c) = cplx(re, im);
    }
  }
  return m;
}

std::vector<CMatrix> read_complex_matrices(std::istream& in) {
  std::vector<CMatrix> out;
  while (true) {
    in >> std::ws;
    if (in.eof()) break;
    out.push_back(read_complex_matrix(in));
  }
  if (out.empty()) throw std::runtime_error("matrix file holds no records");
  return out;
}

CMatrix load_complex_matrix(const std::string& path) {
  auto in = open_input(path);
  return read_complex_matrix(in);
}

std::vector<CMatrix> load_complex_matrices(const std::string& path) {
  auto in = open_input(path);
  return read_complex_matrices(in);
}

CVector load_complex_vector(const std::string& path) {
  const CMatrix m = load_complex_matrix(path);
  if (m.cols() != 1) throw std::runtime_error("vector file '" + path + "' must have a single column");
  return m.col(0);
}

void write_complex_matrix(std::ostream& out, const CMatrix& m) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << m(r, c).real() << ' ' << m(r, c).imag();
    }
    out << '\n';
  }
  out.precision(old);
}

void save_complex_matrix(const std::string& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file '" + path + "'");
  write_complex_matrix(out, m);
}

}  // namespace orbitcs
