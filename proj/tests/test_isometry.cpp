#include "doctest.h"
#include "hyperlat/isometry.hpp"
#include "hyperlat/standard_lattices.hpp"

using namespace hyperlat;

TEST_CASE("permuted e8 is isometric to e8") {
  Lattice l = e8();
  QMat p(8, 8);
  int perm[8] = {3, 1, 0, 2, 7, 6, 5, 4};
  for (int i = 0; i < 8; ++i) p(i, perm[i]) = 1;
  Lattice scr(p * l.gram * p.transpose());
  auto cert = is_isometric(scr, l);
  REQUIRE(cert.isometric);
  CHECK((cert.map * l.gram * cert.map.transpose()) == scr.gram);
}

TEST_CASE("sheared e8 is isometric to e8") {
  Lattice l = e8();
  QMat t = QMat::identity(8);
  t(0, 5) = 2;
  t(6, 1) = -3;
  Lattice scr(t * l.gram * t.transpose());
  auto cert = is_isometric(scr, l);
  REQUIRE(cert.isometric);
  CHECK((cert.map * l.gram * cert.map.transpose()) == scr.gram);
}

TEST_CASE("a2 and the norm-2 square lattice are not isometric") {
  QMat sq{{Rat(2), Rat(0)}, {Rat(0), Rat(2)}};
  auto cert = is_isometric(root_lattice('a', 2), Lattice(sq));
  CHECK(!cert.isometric);
  CHECK(cert.decided);
}

TEST_CASE("even versus odd refutes immediately") {
  auto cert = is_isometric(identity_lattice(2), Lattice(QMat{{Rat(2), Rat(1)}, {Rat(1), Rat(2)}}));
  CHECK(!cert.isometric);
  CHECK(cert.refuted_by == "determinant");
}
