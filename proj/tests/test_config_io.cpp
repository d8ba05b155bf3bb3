#include "doctest.h"

#include "orbitcs/config.hpp"
#include "orbitcs/matrix_io.hpp"
#include "orbitcs/types.hpp"

#include <sstream>

using namespace orbitcs;

TEST_CASE("integer lists and ranges") {
  CHECK(parse_int_list("1, 2,4") == std::vector<int>{1, 2, 4});
  CHECK(parse_int_list("2:8:3") == std::vector<int>{2, 5, 8});
  CHECK(parse_int_list("3:5") == std::vector<int>{3, 4, 5});
  CHECK(parse_int_list("").empty());
  CHECK_THROWS_AS(parse_int_list("5:1"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("1,x"), ConfigError);
}

TEST_CASE("config parsing") {
  std::istringstream in(R"([experiment]
kind = rip
seed = 77
trials = 3

[group]
kind = dihedral
param = 4

[representation]
realization = block_diagonal
blocks = 4:2,0:1

[grid]
s = 1:3

[solver]
tol_feas = 1e-9
)");
  const ExperimentConfig c = parse_config(in);
  CHECK(c.kind == "rip");
  CHECK(c.seed == 77);
  CHECK(c.trials == 3);
  CHECK(c.group_kind == "dihedral");
  CHECK(c.group_param == 4);
  CHECK(c.blocks == "4:2,0:1");
  CHECK(c.grid_s == std::vector<int>{1, 2, 3});
  CHECK(c.tol_feas == 1e-9);
  CHECK(c.tol_opt == 1e-7);
}

TEST_CASE("config errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  };
  CHECK_THROWS_WITH_AS(parse("[group]\nknd = cyclic\n"), doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse("[nope]\na = 1\n"), doctest::Contains("unknown section"), ConfigError);
  CHECK_THROWS_AS(parse("[experiment]\ntrials = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse("[group]\nparam = eight\n"), ConfigError);
  CHECK_THROWS_AS(parse("[sensing]\nnormalize = maybe\n"), ConfigError);
}

TEST_CASE("complex matrix text format round trip") {
  CMatrix m(2, 3);
  m << cplx(1, 2), cplx(-0.5, 0), cplx(1e-17, 3), cplx(0, 0), cplx(2.25, -1), cplx(1.0 / 3.0, 0.1);
  std::stringstream ss;
  write_complex_matrix(ss, m);
  write_complex_matrix(ss, m.transpose());
  const auto back = read_complex_matrices(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == m);
  CHECK(back[1] == m.transpose());
  std::istringstream truncated("2 2\n1 0 0 0\n0 0\n");
  CHECK_THROWS_WITH(read_complex_matrix(truncated), doctest::Contains("expected 4 entries"));
}
