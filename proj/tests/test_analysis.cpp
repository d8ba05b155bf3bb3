#include "doctest.h"

#include "orbitcs/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <numeric>
#include <set>

using namespace orbitcs;

namespace {

std::vector<Element> whole(const FiniteGroup& g) {
  std::vector<Element> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

}  // namespace

TEST_CASE("orbit column constant: equality cases") {
  const auto d8 = make_group(GroupKind::dihedral, 8);
  const Representation l = left_regular(d8);
  const std::vector<Element> omega{1, 4, 9, 13};
  CHECK(orbit_column_constant(l, omega).value == doctest::Approx(1.0).epsilon(1e-12));

  const Representation t = trivial_rep(d8, 3);
  CHECK(orbit_column_constant(t, omega).value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(orbit_column_constant(t, whole(*d8)).value == doctest::Approx(16.0).epsilon(1e-12));

  const auto catalog = irreducible_reps(d8);
  const ConstantReport two_dim = orbit_column_constant(catalog.back(), whole(*d8));
  CHECK(two_dim.value == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(two_dim.per_coordinate.size() == 2);

  CHECK_THROWS_AS(orbit_column_constant(l, std::vector<Element>{}), std::invalid_argument);
  CHECK_THROWS_AS(orbit_column_constant(l, std::vector<Element>{2, 2}), std::invalid_argument);
}

TEST_CASE("constant over families") {
  const auto z6 = make_group(GroupKind::cyclic, 6);
  FamilySpec all;
  all.kind = ConstantFamily::all_subsets;
  all.subset_size = 3;
  const FamilyReport r = constant_over_family(left_regular(z6), all);
  CHECK(r.sets_evaluated == 20);
  CHECK(r.value == doctest::Approx(1.0));

  CosetPartition p(z6, {0, 3});
  FamilySpec adm;
  adm.kind = ConstantFamily::coset_admissible;
  adm.partition = &p;
  const Representation ind = induce(p, left_regular(p.subgroup_group()), CrossSection(p));
  const FamilyReport ri = constant_over_family(ind, adm);
  CHECK(ri.sets_evaluated == 26);
  CHECK(ri.value == doctest::Approx(1.0).epsilon(1e-10));

  const auto big = make_group(GroupKind::cyclic, 17);
  CHECK_THROWS_AS(constant_over_family(left_regular(big), all), BudgetExceeded);
}

TEST_CASE("affine omega_1") {
  const int p = 7;
  const auto g = make_group(GroupKind::affine, p);
  auto idx = [p](int k, int l) { return (l - 1) * p + k; };
  CHECK(affine_omega1(*g, std::vector<Element>{idx(0, 1)}) == 1);
  std::vector<Element> row;
  for (int k = 0; k < p; ++k) row.push_back(idx(k, 1));
  CHECK(affine_omega1(*g, row) == p);
  const Representation rho = affine_rep(g);
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto omega = sample_omega(*g, 5, SamplingMode::fixed_set, rng).indices;
    std::set<int> first;
    for (Element e : omega) first.insert(e % p);
    CHECK(affine_omega1(*g, omega) == static_cast<int>(first.size()));
    CHECK(orbit_column_constant(rho, omega).value <= affine_omega1(*g, omega) + 1e-8);
  }
  // Omega inside {1} x Z_p^*: constant 1.
  std::vector<Element> column;
  for (int l = 1; l < p; ++l) column.push_back(idx(1, l));
  CHECK(orbit_column_constant(rho, column).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(affine_omega1(*make_group(GroupKind::cyclic, 5), row), std::invalid_argument);
}

TEST_CASE("restricted isometry constants") {
  SUBCASE("orthonormal columns") {
    CHECK(rip_constant(CMatrix::Identity(6, 6), 3).delta <= 1e-14);
  }
  SUBCASE("zero column") {
    CMatrix phi = CMatrix::Identity(5, 5);
    phi.col(2).setZero();
    const RipReport r = rip_constant(phi, 1);
    CHECK(r.delta == doctest::Approx(1.0));
    CHECK(r.witness_support == std::vector<int>{2});
  }
  SUBCASE("dense oracle on a seeded Z/12 ensemble") {
    const auto g = make_group(GroupKind::cyclic, 12);
    auto rep = std::make_shared<const Representation>(left_regular(g));
    const auto ens = build_measurement(rep, sample_generating_vector(12, XiScheme::complex_gaussian, 21),
                                       sample_omega(*g, 7, SamplingMode::fixed_set, 21));
    const RipReport r = rip_constant(ens, 2);
    CHECK(r.supports_checked == 66);
    double oracle = 0.0;
    for (int a = 0; a < 12; ++a) {
      for (int b = a + 1; b < 12; ++b) {
        CMatrix sub(ens.phi.rows(), 2);
        sub << ens.phi.col(a), ens.phi.col(b);
        const CMatrix dev = sub.adjoint() * sub - CMatrix::Identity(2, 2);
        Eigen::ComplexEigenSolver<CMatrix> es(dev);
        oracle = std::max(oracle, es.eigenvalues().cwiseAbs().maxCoeff());
      }
    }
    CHECK(std::abs(r.delta - oracle) <= 1e-10);
    CHECK(rip_constant(ens, 1).delta <= r.delta + 1e-14);
    CHECK(rip_constant(ens, 3).delta >= r.delta - 1e-14);
    const RipReport threaded = rip_constant(ens, 2, 3);
    CHECK(threaded.delta == r.delta);
    CHECK(threaded.witness_support == r.witness_support);
  }
  SUBCASE("budget guard") {
    CHECK(binomial(64, 3) == 41664);
    CHECK_THROWS_WITH_AS(rip_constant(CMatrix::Identity(64, 64), 6), doctest::Contains("reduce n or s"),
                         BudgetExceeded);
    CHECK_NOTHROW(rip_constant(CMatrix::Identity(20, 20), 3));
  }
}

TEST_CASE("BOS constant and d_max") {
  const auto g1 = make_group(GroupKind::cyclic, 1);
  CHECK(bos_constant(trivial_rep(g1, 1), CVector::Ones(1), CMatrix::Identity(1, 1)) == doctest::Approx(1.0));
  CHECK(d_max(BlockStructure({{0, 1, 1}, {1, 2, 1}})) == 1);
  CHECK(d_max(BlockStructure({{0, 3, 2}, {1, 5, 1}})) == 3);
  const auto catalog = irreducible_reps(make_group(GroupKind::dihedral, 6));
  CHECK(d_max(regular_block_structure(catalog)) == 2);
}

TEST_CASE("measurement bounds (frozen oracle values)") {
  CHECK(orbit_measurement_bound(4, 64, 1.0, 0.5, 0.01) == 710);
  CHECK(orbit_measurement_bound(4, 64, 2.0, 0.5, 0.01) == 3192);
  // s = 1, C = 1: only ln(1/eta) survives.
  CHECK(orbit_measurement_bound(1, 64, 1.0, 0.5, 0.01) == static_cast<std::int64_t>(std::ceil(4.0 * std::log(100.0))));
  CHECK(orbit_measurement_bound(1, 64, 1.0, 0.5, 0.01) == 19);
  CHECK(structured_measurement_bound(4, 64, 64, 1, 0.5, 0.01) == 159031);
  CHECK(structured_measurement_bound(4, 64, 64, 2, 0.5, 0.01) == 353219);
  std::int64_t prev = 0;
  for (double c = 1.0; c <= 10.0; c += 1.0) {
    const auto b = orbit_measurement_bound(3, 32, c, 0.3, 0.05);
    CHECK(b >= prev);
    prev = b;
  }
  CHECK(structured_measurement_bound(5, 64, 64, 1, 0.5, 0.01) >= structured_measurement_bound(4, 64, 64, 1, 0.5, 0.01));
  CHECK(structured_measurement_bound(4, 64, 128, 1, 0.5, 0.01) >= structured_measurement_bound(4, 64, 64, 1, 0.5, 0.01));
  CHECK_THROWS_AS(orbit_measurement_bound(4, 64, 1.0, 1.5, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(structured_measurement_bound(0, 64, 64, 1, 0.5, 0.01), std::invalid_argument);
}
