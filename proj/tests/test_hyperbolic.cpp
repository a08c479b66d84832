#include "doctest.h"
#include "hyperlat/hyperbolic.hpp"
#include "hyperlat/standard_lattices.hpp"

using namespace hyperlat;

TEST_CASE("cone rays of an orthant") {
  // {x : -x_i <= 0} = positive orthant
  std::vector<QVec> fs = {{Rat(-1), Rat(0)}, {Rat(0), Rat(-1)}};
  auto rays = cone_extreme_rays(fs, 2);
  REQUIRE(rays.size() == 2);
}

TEST_CASE("finite volume detection in a toy Lorentzian lattice") {
  // II_1,1 + a1: roots bounding a finite triangle exist; a single root does not
  Lattice l = direct_sum(hyperbolic_plane(), root_lattice('a', 1));
  std::vector<ZVec> one = {{Int(0), Int(0), Int(1)}};
  CHECK(!finite_volume(l, one));
}

TEST_CASE("vinberg on II_9,1 finds the 10-node e10 diagram") {
  Lattice l = even_lorentzian(1);
  // controlling vector of norm -4 inside the positive cone
  QVec w0(10, Rat(0));
  w0[0] = 2;
  w0[1] = 1;
  VinbergOptions opt;
  opt.root_norms = {Rat(2)};
  opt.max_roots = 24;
  opt.max_distance = 30;
  auto run = vinberg(l, w0, opt);
  CHECK(run.finite_volume_proven);
  REQUIRE(run.simple_roots.size() == 10);
  // acceptance order keys are nondecreasing
  for (size_t i = 1; i < run.distance_keys.size(); ++i)
    CHECK(run.distance_keys[i - 1] <= run.distance_keys[i]);
  // pairwise nonpositive products
  for (size_t i = 0; i < run.simple_roots.size(); ++i)
    for (size_t j = i + 1; j < run.simple_roots.size(); ++j)
      CHECK(l.inner(to_qvec(run.simple_roots[i]), to_qvec(run.simple_roots[j])) <= 0);
  auto shape = diagram_shape(l, run.simple_roots);
  REQUIRE(shape.tree_legs.has_value());
  CHECK(*shape.tree_legs == std::vector<int>{1, 2, 6});
}

TEST_CASE("vinberg on II_17,1 finds the 19-root diagram") {
  Lattice l = even_lorentzian(2);
  QVec w0(18, Rat(0));
  w0[0] = 2;
  w0[1] = 1;
  VinbergOptions opt;
  opt.root_norms = {Rat(2)};
  opt.max_roots = 40;
  opt.max_distance = 40;
  auto run = vinberg(l, w0, opt);
  CHECK(run.finite_volume_proven);
  REQUIRE(run.simple_roots.size() == 19);
  // a line of 17 points with 2 more points joined onto the 3rd and 15th
  auto shape = diagram_shape(l, run.simple_roots);
  std::vector<int> degs;
  int bonds = 0;
  for (int i = 0; i < 19; ++i) {
    int deg = 0;
    for (int j = 0; j < 19; ++j)
      if (i != j && shape.adjacency[i][j] != 0) {
        CHECK(shape.adjacency[i][j] == 1);
        ++deg;
        ++bonds;
      }
    degs.push_back(deg);
  }
  std::sort(degs.begin(), degs.end());
  // chain of 17 with two extra pendants: degree sequence 1,1,1,1,2x13,3,3
  std::vector<int> expect = {1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3};
  CHECK(degs == expect);
  CHECK(bonds / 2 == 18);  // a tree on 19 nodes
}
