#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace orbitcs {

struct ExperimentConfig {
  // [experiment]
  std::string kind = "verify";
  std::uint64_t seed = 1;
  int trials = 10;
  int threads = 1;

  // [group]
  std::string group_kind = "cyclic";
  int group_param = 8;

  // [representation]
  std::string realization = "left_regular";
  int degree = 1;                 // trivial
  int irrep = 0;                  // irreducible
  std::string blocks;             // block_diagonal: "id:mult,id:mult"
  std::vector<int> subgroup;      // induced
  std::string sigma = "trivial";  // induced: trivial | regular
  std::string conjugate_by;       // dft | u_transform | matrix file path
  std::string rep_file;           // matrices

  // [sensing]
  std::string xi = "complex_gaussian";
  std::string xi_file;  // explicit generating vector, overrides the scheme
  std::string omega = "fixed_set";
  std::vector<int> omega_indices;
  std::vector<int> sensing_subgroup;
  int m = 0;  // 0 selects |G|
  std::string basis = "identity";
  bool normalize = true;

  // [grid]
  std::vector<int> grid_s;
  std::vector<int> grid_m;
  std::vector<int> grid_n;

  // [solver]
  std::string solver = "basis_pursuit";
  double tol_feas = 1e-8;
  double tol_opt = 1e-7;
  int max_iter = 50000;

  // [constant]
  std::string family = "single";
  int subset_size = 0;
  int samples = 100;

  // [rip]
  std::vector<int> rip_s;

  // [bound]
  double bound_c = 1.0;
  double bound_C = 1.0;
  double delta = 0.5;
  double eta = 0.01;
  std::string c_const = "auto";

  // [phase]
  std::string plant = "random";

  // [counterexample]
  int cx_n = 8;
  int cx_s = 2;
  std::string cx_case = "fourier";

  // [output]
  std::string output;
};

// Comma list of integers, or an inclusive range "start:stop" / "start:stop:step".
std::vector<int> parse_int_list(const std::string& text);

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

}  // namespace orbitcs
