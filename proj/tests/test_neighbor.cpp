#include <set>

#include "doctest.h"
#include "hyperlat/neighbor.hpp"
#include "hyperlat/standard_lattices.hpp"

using namespace hyperlat;

TEST_CASE("even sublattice of I8 is d8") {
  auto s = even_sublattice(identity_lattice(8));
  CHECK(s.lattice.is_even());
  CHECK(abs(s.lattice.det()) == 4);
  CHECK(identify_roots(s.lattice).datum.to_string() == "d8");
}

TEST_CASE("even neighbors of I8 are both e8") {
  auto nb = even_neighbors(identity_lattice(8));
  for (const Lattice* l : {&nb.first, &nb.second}) {
    CHECK(l->is_even());
    CHECK(abs(l->det()) == 1);
    CHECK(identify_roots(*l).root_count() == 240);
  }
}

TEST_CASE("even neighbors of I16 are two copies of the d16 overlattice") {
  // I16 has norm-1 vectors, so its two even neighbors are exchanged by a
  // reflection and are isometric
  auto nb = even_neighbors(identity_lattice(16));
  CHECK(identify_roots(nb.first).datum.to_string() == "d16");
  CHECK(identify_roots(nb.second).datum.to_string() == "d16");
  auto cert = is_isometric(nb.first, nb.second);
  CHECK(cert.isometric);
}

TEST_CASE("e8+e8 and the d16 overlattice share theta but differ") {
  auto nb = even_neighbors(identity_lattice(16));
  Lattice e8e8 = direct_sum(e8(), e8());
  // same determinant, parity, and root count, but different root data
  auto i1 = lattice_invariants(e8e8, 2);
  auto i2 = lattice_invariants(nb.first, 2);
  CHECK(i1.shell_counts == i2.shell_counts);  // 480 roots each
  auto cert = is_isometric(e8e8, nb.first);
  CHECK(!cert.isometric);
  CHECK(cert.decided);
}

TEST_CASE("odd neighbors of e8 reduce to I8") {
  auto odds = odd_neighbors(e8());
  REQUIRE(!odds.empty());
  for (const auto& od : odds) {
    auto stripped = strip_unit_vectors(od.lattice);
    CHECK(stripped.unit_count > 0);
  }
}

TEST_CASE("neighbor symmetry: parity bookkeeping of B_b dual classes") {
  // for admissible b, gluing the odd class back recovers a lattice whose even
  // neighbors include B itself
  Lattice b = e8();
  auto sh = short_vectors(b, 4);
  ZVec v;
  for (auto& s : sh)
    if (s.norm_sq == 4) v = s.vectors.front();
  auto od = odd_neighbor_of(b, v);
  CHECK(!od.lattice.is_even());
  CHECK(abs(od.lattice.det()) == 1);
  auto ev = even_neighbors(od.lattice);
  CHECK((is_isometric(ev.first, b).isometric || is_isometric(ev.second, b).isometric));
}

TEST_CASE("classify dimension 8") {
  auto g = classify_dimension(8, identity_lattice(8));
  CHECK(g.complete);
  CHECK(g.even_nodes.size() == 1);
  CHECK(g.even_nodes[0].datum == "e8");
  // the unique odd class I8 strips to the 0-dimensional lattice
  REQUIRE(g.odd_unit_classes.size() == 1);
  CHECK(g.odd_unit_classes[0].lattice.rank == 0);
  CHECK(g.odd_edges.empty());
}

TEST_CASE("classify dimension 16 finds all eight classes") {
  auto g = classify_dimension(16, identity_lattice(16));
  CHECK(g.complete);
  CHECK(g.even_nodes.size() == 2);
  std::set<std::string> data;
  for (auto& n : g.even_nodes) data.insert(n.datum);
  CHECK(data == std::set<std::string>{"d16", "e8^2"});
  CHECK(g.class_count() == 8);
  // the single no-unit odd class in dimension 16 has root system d8^2
  REQUIRE(g.odd_edges.size() == 1);
  CHECK(g.odd_edges[0].datum == "d8^2");
}
