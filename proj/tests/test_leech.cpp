#include "doctest.h"
#include "hyperlat/leech.hpp"
#include "hyperlat/standard_lattices.hpp"

using namespace hyperlat;

TEST_CASE("halving chain reaches the rootless lattice") {
  auto nb = even_neighbors(identity_lattice(24));
  NiemeierRecord rec = make_niemeier_record(nb.first);
  CHECK(rec.datum.to_string() == "d24");
  CHECK(rec.coxeter == 46);
  CHECK(rec.glue_count == 2);
  int prev = rec.coxeter;
  while (rec.coxeter > 0) {
    rec = halve_step(rec);
    CHECK(2 * rec.coxeter <= prev);
    prev = rec.coxeter;
  }
  CHECK(rec.datum.empty());
}

TEST_CASE("the canonical rootless lattice") {
  const Lattice& lam = leech_lattice();
  CHECK(lam.rank == 24);
  CHECK(lam.is_even());
  CHECK(lam.det() == 1);
  auto sh = short_vectors(lam, 4);
  REQUIRE(sh.size() == 1);  // no norm-2 shell
  CHECK(sh[0].norm_sq == 4);
  CHECK(sh[0].vectors.size() == 196560);
}

TEST_CASE("construction from the empty lattice") {
  Lattice lam = leech_from_small(Lattice(QMat(0, 0)));
  CHECK(lam.rank == 24);
  CHECK(lam.is_even());
  CHECK(lam.det() == 1);
  CHECK(short_vectors(lam, 2).empty());
  auto cert = is_isometric(lam, leech_lattice());
  CHECK(cert.isometric);
}

TEST_CASE("holy construction from d24") {
  auto nb = even_neighbors(identity_lattice(24));
  NiemeierRecord rec = make_niemeier_record(nb.first);
  auto holy = holy_construction(rec);
  CHECK(holy.glue_count == 2);
  CHECK(holy.f.size() == 25);
  CHECK(holy.result.is_even());
  CHECK(holy.result.det() == 1);
  CHECK(short_vectors(holy.result, 2).empty());
  CHECK(is_isometric(holy.result, leech_lattice()).isometric);
}

TEST_CASE("deep hole of d24") {
  auto nb = even_neighbors(identity_lattice(24));
  NiemeierRecord rec = make_niemeier_record(nb.first);
  auto hole = deep_hole_of(rec);
  CHECK(hole.radius_sq == 2);
  CHECK(hole.vertices.size() == 25);  // extended d24
  CHECK(hole.vertex_datum.to_string() == "d24");
}

TEST_CASE("deep hole of the a1^24 class has 48 vertices") {
  // reach the a1^24 class through the odd neighbor of the rootless lattice
  auto odds = odd_neighbors(leech_lattice());
  const OddNeighbor* no_units = nullptr;
  for (auto& od : odds)
    if (short_vectors(od.lattice, 1).empty()) no_units = &od;
  REQUIRE(no_units);
  auto ev = even_neighbors(no_units->lattice);
  Lattice a124 = identify_roots(ev.first).datum.empty() ? ev.second : ev.first;
  NiemeierRecord rec = make_niemeier_record(a124);
  CHECK(rec.datum.to_string() == "a1^24");
  CHECK(rec.coxeter == 2);
  auto hole = deep_hole_of(rec);
  CHECK(hole.radius_sq == 2);
  CHECK(hole.vertices.size() == 48);
  CHECK(hole.vertex_datum.to_string() == "a1^24");
  // holy construction with 2^12 glue vectors
  auto holy = holy_construction(rec);
  CHECK(holy.glue_count == 4096);
  CHECK(is_isometric(holy.result, leech_lattice()).isometric);
}

TEST_CASE("even overlattice search") {
  RootDatum e83;
  e83.add('e', 8, 3);
  auto l = even_overlattice_no_new_roots(e83);
  REQUIRE(l);
  CHECK(l->det() == 1);
  CHECK(identify_roots(*l).datum.to_string() == "e8^3");

  RootDatum d16e8 = RootDatum::parse("d16 e8");
  auto l2 = even_overlattice_no_new_roots(d16e8);
  REQUIRE(l2);
  CHECK(identify_roots(*l2).datum.to_string() == "d16 e8");

  RootDatum a46 = RootDatum::parse("a4^6");
  auto l3 = even_overlattice_no_new_roots(a46);
  REQUIRE(l3);
  CHECK(l3->det() == 1);
  CHECK(identify_roots(*l3).datum.to_string() == "a4^6");
  NiemeierRecord rec = make_niemeier_record(*l3);
  CHECK(rec.coxeter == 5);
  CHECK(rec.glue_count == 125);
}

TEST_CASE("leech from e8") {
  Lattice lam = leech_from_small(e8());
  CHECK(short_vectors(lam, 2).empty());
  CHECK(is_isometric(lam, leech_lattice()).isometric);
}
