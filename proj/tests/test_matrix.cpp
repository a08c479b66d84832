#include "doctest.h"
#include "hyperlat/matrix.hpp"
#include "hyperlat/standard_lattices.hpp"

using namespace hyperlat;

TEST_CASE("hnf basics") {
  QMat a{{Rat(2), Rat(0)}, {Rat(1), Rat(1)}, {Rat(3), Rat(3)}};
  QMat u;
  QMat h = hnf(a, &u);
  CHECK(h.rows() == 2);
  CHECK(h(0, 0) == 1);
  // row span is preserved: determinant of the 2x2 part is the lattice index
  CHECK(h(0, 0) * h(1, 1) == 2);
}

TEST_CASE("smith normal form of a gram matrix") {
  QMat a{{Rat(2), Rat(0)}, {Rat(0), Rat(4)}};
  auto s = smith_normal_form(a);
  CHECK(s.d(0, 0) == 2);
  CHECK(s.d(1, 1) == 4);
  CHECK((s.u * a * s.v) == s.d);
}

TEST_CASE("smith divisibility chain") {
  QMat a{{Rat(4), Rat(0)}, {Rat(0), Rat(6)}};
  auto s = smith_normal_form(a);
  CHECK(s.d(0, 0) == 2);
  CHECK(s.d(1, 1) == 12);
  CHECK((s.u * a * s.v) == s.d);
}

TEST_CASE("integer kernel") {
  QMat a{{Rat(1)}, {Rat(2)}, {Rat(3)}};
  QMat k = integer_kernel(a);
  CHECK(k.rows() == 2);
  QMat prod = k * a;
  for (int i = 0; i < prod.rows(); ++i) CHECK(prod(i, 0) == 0);
}

TEST_CASE("det, rank, inverse") {
  Lattice l = e8();
  CHECK(l.gram.det() == 1);
  CHECK(l.gram.rank() == 8);
  auto inv = l.gram.inverse();
  REQUIRE(inv);
  CHECK((*inv * l.gram) == QMat::identity(8));
}

TEST_CASE("cholesky_q rejects indefinite") {
  QMat g{{Rat(1), Rat(0)}, {Rat(0), Rat(-1)}};
  QMat q;
  CHECK(!cholesky_q(g, q));
}

TEST_CASE("lll preserves determinant and shrinks entries") {
  // scramble e8 by a shear and reduce back
  Lattice l = e8();
  QMat t = QMat::identity(8);
  t(0, 7) = 5;
  t(3, 2) = -7;
  QMat g = t * l.gram * t.transpose();
  QMat red;
  QMat u = lll_gram(g, &red);
  CHECK((u * g * u.transpose()) == red);
  CHECK(red.det() == 1);
  for (int i = 0; i < 8; ++i) CHECK(red(i, i) <= 4);
}
