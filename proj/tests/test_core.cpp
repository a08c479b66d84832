#include <set>

#include "doctest.h"
#include "hyperlat/lattice.hpp"
#include "hyperlat/standard_lattices.hpp"

using namespace hyperlat;

TEST_CASE("inner products") {
  Lattice l = e8();
  QVec x(8, Rat(0)), y(8, Rat(0));
  x[0] = 1;
  CHECK(inner_product(l, x, x) == 2);
  Lattice u = hyperbolic_plane();
  QVec z{Rat(1), Rat(0)}, zp{Rat(0), Rat(1)};
  CHECK(inner_product(u, z, zp) == -1);
  CHECK(u.norm(z) == 0);
  // 0^2 + 1^2 + ... + 24^2 = 70^2 as a Lorentzian norm
  Lattice i251 = odd_lorentzian(25, 1);
  QVec w(26);
  for (int i = 0; i < 25; ++i) w[i] = i;
  w[25] = 70;
  CHECK(i251.norm(w) == 0);
}

TEST_CASE("dual basis") {
  Lattice i3 = identity_lattice(3);
  auto d = dual_basis(i3);
  CHECK(d[0] == QVec{Rat(1), Rat(0), Rat(0)});

  Lattice a1 = root_lattice('a', 1);
  auto da = dual_basis(a1);
  CHECK(a1.norm(da[0]) == Rat(1, 2));

  // e8 is self dual: every dual generator is integral
  for (const auto& v : dual_basis(e8()))
    for (const auto& c : v) CHECK(is_integer(c));
}

TEST_CASE("discriminant groups") {
  CHECK(discriminant_group(e8()).order() == 1);

  auto a1 = discriminant_group(root_lattice('a', 1));
  REQUIRE(a1.orders.size() == 1);
  CHECK(a1.orders[0] == 2);
  CHECK(a1.q_values[0] == Rat(1, 2));

  auto d4 = discriminant_group(root_lattice('d', 4));
  REQUIRE(d4.orders.size() == 2);
  CHECK(d4.orders[0] == 2);
  CHECK(d4.orders[1] == 2);
  // brute force over the nonzero cosets of d4'/d4: all three have norm 1 mod 2
  Lattice l = root_lattice('d', 4);
  std::multiset<Rat> norms;
  for (int s = 1; s < 4; ++s) {
    QVec rep(4, Rat(0));
    for (int b = 0; b < 2; ++b)
      if (s & (1 << b))
        for (int t = 0; t < 4; ++t) rep[t] += d4.generators[b][t];
    // reduce mod lattice by brute force over small shifts
    Rat best = l.norm(rep);
    for (int a0 = -2; a0 <= 2; ++a0)
      for (int a1_ = -2; a1_ <= 2; ++a1_)
        for (int a2 = -2; a2 <= 2; ++a2)
          for (int a3 = -2; a3 <= 2; ++a3) {
            QVec v = rep;
            v[0] += a0;
            v[1] += a1_;
            v[2] += a2;
            v[3] += a3;
            best = std::min(best, l.norm(v));
          }
    norms.insert(best);
  }
  CHECK(norms == std::multiset<Rat>{Rat(1), Rat(1), Rat(1)});
}

TEST_CASE("direct sums") {
  Lattice d = direct_sum(e8(), e8());
  CHECK(d.rank == 16);
  CHECK(d.det() == 1);
  Lattice aa = direct_sum(root_lattice('a', 1), root_lattice('a', 1));
  CHECK(aa.gram(0, 0) == 2);
  CHECK(aa.gram(1, 1) == 2);
  CHECK(aa.gram(0, 1) == 0);
}

TEST_CASE("glue d4 to the odd cubic lattice") {
  Lattice d4 = root_lattice('d', 4);
  auto dg = discriminant_group(d4);
  // pick a coset representative of norm 1
  QVec g;
  for (size_t i = 0; i < dg.generators.size(); ++i)
    if (d4.norm(dg.generators[i]) == 1) g = dg.generators[i];
  if (g.empty()) {
    // a norm-1 class exists among sums of generators
    g = add(dg.generators[0], dg.generators[1]);
  }
  Rat n = d4.norm(g);
  // brute-force reduce to the minimal representative
  REQUIRE(d4.norm(g) >= 1);
  auto ov = glue(d4, {g});
  CHECK(ov.index == 2);
  CHECK(abs(ov.result.det()) == 1);
  CHECK(!ov.result.is_even());
  CHECK(ov.index * ov.index * abs(ov.result.det()) == abs(d4.det()));
}

TEST_CASE("glue with empty set returns the base") {
  Lattice l = direct_sum(direct_sum(e8(), e8()), e8());
  auto ov = glue(l, {});
  CHECK(ov.index == 1);
  CHECK(ov.result.gram == l.gram);
}

TEST_CASE("signatures") {
  CHECK(identity_lattice(4).signature().pos == 4);
  Lattice u = hyperbolic_plane();
  auto s = u.signature();
  CHECK(s.pos == 1);
  CHECK(s.neg == 1);
  CHECK(even_lorentzian(1).is_lorentzian());
  CHECK(e8().is_positive_definite());
  CHECK(!odd_lorentzian(3, 1).is_positive_definite());
}

TEST_CASE("isotropic quotient of II_9,1 is e8") {
  Lattice l = even_lorentzian(1);  // U + e8, U coords first
  QVec w(10, Rat(0));
  w[0] = 1;  // isotropic
  auto q = isotropic_quotient(l, w);
  CHECK(q.lattice.rank == 8);
  CHECK(q.lattice.det() == 1);
  CHECK(q.lattice.is_even());
}

TEST_CASE("characteristic vectors of I1 and I2") {
  auto cs = characteristic_vectors(identity_lattice(1), 1);
  CHECK(cs.size() == 2);  // +-1
  for (auto& c : cs) CHECK((c[0] == 1 || c[0] == -1));
  // I2: characteristic vectors are (odd, odd); norm 2 gives four of them
  auto c2 = characteristic_vectors(identity_lattice(2), 2);
  CHECK(c2.size() == 4);
}
