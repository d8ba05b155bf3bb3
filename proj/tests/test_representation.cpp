#include "doctest.h"

#include "orbitcs/representation.hpp"
#include "orbitcs/rng.hpp"

using namespace orbitcs;

namespace {

double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("left regular representation permutes basis vectors") {
  const auto g = make_group(GroupKind::dihedral, 4);
  const Representation l = left_regular(g);
  CHECK(l.degree() == 8);
  CHECK(l.max_unitarity_defect() <= 1e-12);
  CHECK(l.max_homomorphism_defect() <= 1e-12);
  // L(g) e_h = e_{gh}
  for (Element a = 0; a < g->order(); ++a) {
    for (Element h = 0; h < g->order(); ++h) CHECK(l.matrix(a)(g->mul(a, h), h) == cplx(1.0));
  }
  Rng rng(3);
  CVector x(8);
  for (int i = 0; i < 8; ++i) x(i) = rng.complex_gaussian();
  CHECK((l.apply(5, x) - l.matrix(5) * x).norm() <= 1e-14);
}

TEST_CASE("catalog sizes and degrees") {
  auto degrees = [](GroupKind kind, int param) {
    std::vector<int> d;
    for (const auto& r : irreducible_reps(make_group(kind, param))) d.push_back(r.degree());
    return d;
  };
  CHECK(degrees(GroupKind::cyclic, 5) == std::vector<int>(5, 1));
  CHECK(degrees(GroupKind::dihedral, 3) == std::vector<int>{1, 1, 2});
  CHECK(degrees(GroupKind::dihedral, 4) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(degrees(GroupKind::affine, 5) == std::vector<int>{1, 1, 1, 1, 4});
}

TEST_CASE("catalogs are unitary, orthogonal and complete") {
  for (auto [kind, param] : std::vector<std::pair<GroupKind, int>>{
           {GroupKind::cyclic, 7}, {GroupKind::dihedral, 5}, {GroupKind::dihedral, 6}, {GroupKind::affine, 7}}) {
    const auto g = make_group(kind, param);
    const auto catalog = irreducible_reps(g);
    int dim = 0;
    for (const auto& r : catalog) {
      CHECK(r.max_unitarity_defect() <= 1e-10);
      CHECK(r.max_homomorphism_defect() <= 1e-10);
      CHECK(std::abs(character_inner_product(r, r) - 1.0) <= 1e-10);
      dim += r.degree() * r.degree();
    }
    CHECK(dim == g->order());
    CHECK(schur_orthogonality_defect(catalog) <= 1e-10);
  }
}

TEST_CASE("irreducible catalog missing for subgroup kinds") {
  const auto g = make_group(GroupKind::cyclic, 4);
  CosetPartition p(g, {0, 2});
  CHECK_THROWS_WITH(irreducible_reps(p.subgroup_group()), doctest::Contains("no irreducible catalog"));
}

TEST_CASE("affine representation formula") {
  const int p = 5;
  const auto g = make_group(GroupKind::affine, p);
  const Representation r = affine_rep(g);
  CHECK(r.degree() == 4);
  CHECK(r.max_unitarity_defect() <= 1e-12);
  CHECK(r.max_homomorphism_defect() <= 1e-12);
  // (rho(k,l) y)(j) = e^{2 pi i jk/p} y(jl)
  const int k = 3, l = 2;
  CVector y(4);
  for (int j = 0; j < 4; ++j) y(j) = cplx(j + 1.0, -0.5 * j);
  const CVector out = r.matrix((l - 1) * p + k) * y;
  for (int j = 1; j <= 4; ++j) {
    const cplx expected = root_of_unity(j * k, p) * y((j * l) % p - 1);
    CHECK(std::abs(out(j - 1) - expected) <= 1e-12);
  }
}

TEST_CASE("block structure index maps") {
  BlockStructure b({{0, 3, 2}, {1, 5, 1}});
  CHECK(b.total_degree() == 11);
  CHECK(b.alpha(1, 1, 1) == 1);
  CHECK(b.alpha(1, 2, 3) == 6);
  CHECK(b.alpha(2, 1, 5) == 11);
  for (int c = 1; c <= 11; ++c) {
    const auto [tau, kappa, iota] = b.alpha_inverse(c);
    CHECK(b.alpha(tau, kappa, iota) == c);
  }
  // beta(tau, iota) = alpha(tau, min(m, iota), iota)
  CHECK(b.beta(1, 1) == 1);
  CHECK(b.beta(1, 2) == 5);
  CHECK(b.beta(1, 3) == 6);
  CHECK(b.beta(2, 4) == 10);
  CHECK_THROWS_AS(b.alpha(3, 1, 1), std::out_of_range);
  CHECK_THROWS_AS(b.alpha(1, 3, 1), std::out_of_range);
  CHECK_THROWS_AS(b.alpha_inverse(12), std::out_of_range);
}

TEST_CASE("block diagonal assembly") {
  const auto g = make_group(GroupKind::dihedral, 4);
  const auto catalog = irreducible_reps(g);
  const Representation r = block_diagonal_from_catalog(catalog, {{4, 2}, {1, 1}});
  CHECK(r.degree() == 5);
  REQUIRE(r.block());
  CHECK(r.block()->num_blocks() == 2);
  CHECK(r.max_homomorphism_defect() <= 1e-12);
  CHECK(max_diff(r.matrix(3).block(2, 2, 2, 2), catalog[4].matrix(3)) == 0.0);
  CHECK_THROWS_WITH(block_diagonal({{catalog[0], 1}, {catalog[0], 2}}), doctest::Contains("equivalent"));
  const auto other = irreducible_reps(make_group(GroupKind::cyclic, 8));
  CHECK_THROWS_WITH(block_diagonal({{catalog[0], 1}, {other[1], 1}}), doctest::Contains("different groups"));
}

TEST_CASE("DFT block-diagonalizes the regular representation of Z/n") {
  const int n = 6;
  const auto g = make_group(GroupKind::cyclic, n);
  const Representation rho = conjugate_rep(left_regular(g), dft_matrix(n));
  for (Element k = 0; k < n; ++k) {
    CMatrix expected = CMatrix::Zero(n, n);
    for (int l = 1; l <= n; ++l) expected(l - 1, l - 1) = root_of_unity(l * k, n);
    CHECK(max_diff(rho.matrix(k), expected) <= 1e-12);
  }
  CHECK_THROWS_WITH(conjugate_rep(left_regular(g), 2.0 * dft_matrix(n)), doctest::Contains("not unitary"));
}

TEST_CASE("U transform is unitary with the sub-row dichotomy") {
  for (const auto& blocks : std::vector<std::vector<Block>>{{{0, 3, 5}, {1, 2, 1}}, {{0, 1, 1}, {1, 4, 4}},
                                                          {{0, 2, 7}}}) {
    BlockStructure b(blocks);
    CHECK(unitarity_defect(realization_transform_u(b)) <= 1e-10);
    CHECK(u_subrow_defect(b) <= 1e-10);
  }
}

TEST_CASE("induced representations") {
  SUBCASE("H = G returns sigma") {
    const auto g = make_group(GroupKind::dihedral, 3);
    CosetPartition p(g, {0, 1, 2, 3, 4, 5});
    const Representation sigma = left_regular(p.subgroup_group());
    const Representation ind = induce(p, sigma, CrossSection(p));
    for (Element x = 0; x < g->order(); ++x) CHECK(max_diff(ind.matrix(x), left_regular(g).matrix(x)) == 0.0);
  }
  SUBCASE("trivial subgroup gives a permutation representation") {
    const auto g = make_group(GroupKind::affine, 3);
    CosetPartition p(g, {g->identity()});
    const Representation ind = induce(p, trivial_rep(p.subgroup_group(), 1), CrossSection(p));
    CHECK(ind.degree() == 6);
    CHECK(ind.max_homomorphism_defect() <= 1e-12);
    for (const auto& m : ind.matrices()) {
      for (int r = 0; r < 6; ++r) CHECK(m.row(r).cwiseAbs().sum() == doctest::Approx(1.0));
    }
  }
  SUBCASE("Z/4 over {0,2} with the sign character") {
    const auto g = make_group(GroupKind::cyclic, 4);
    CosetPartition p(g, {0, 2});
    const Representation sign = character_rep(p.subgroup_group(), {1.0, -1.0}, "sign");
    const Representation ind = induce(p, sign, CrossSection(p));
    CHECK(ind.degree() == 2);
    CHECK(ind.max_unitarity_defect() <= 1e-12);
    CHECK(ind.max_homomorphism_defect() <= 1e-12);
    CHECK(max_diff(ind.matrix(1) * ind.matrix(1), ind.matrix(2)) <= 1e-12);
  }
  SUBCASE("sigma on a different subgroup is rejected") {
    const auto g = make_group(GroupKind::cyclic, 6);
    CosetPartition p(g, {0, 3});
    CosetPartition q(g, {0, 2, 4});
    CHECK_THROWS_WITH(induce(p, trivial_rep(q.subgroup_group(), 1), CrossSection(p)),
                      doctest::Contains("different subgroup"));
  }
}

TEST_CASE("character_rep rejects non-homomorphisms") {
  const auto g = make_group(GroupKind::cyclic, 3);
  CHECK_THROWS_AS(character_rep(g, {1.0, -1.0, 1.0}, "bad"), std::invalid_argument);
}
