#pragma once

#include "orbitcs/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitcs {

// Plain-text complex matrix: a header line "rows cols", then `rows` lines of `cols` "re im" pairs.
// A vector is a rows x 1 matrix. Files may hold several records back to back.

CMatrix read_complex_matrix(std::istream& in);
std::vector<CMatrix> read_complex_matrices(std::istream& in);

CMatrix load_complex_matrix(const std::string& path);
std::vector<CMatrix> load_complex_matrices(const std::string& path);
CVector load_complex_vector(const std::string& path);

void write_complex_matrix(std::ostream& out, const CMatrix& m);
void save_complex_matrix(const std::string& path, const CMatrix& m);

}  // namespace orbitcs
