#include <set>
#include "doctest.h"
#include "hyperlat/rootsys.hpp"
#include "hyperlat/standard_lattices.hpp"

using namespace hyperlat;

TEST_CASE("root datum string grammar") {
  RootDatum d;
  d.add('a', 1, 24);
  CHECK(d.to_string() == "a1^24");
  RootDatum d2;
  d2.add('d', 16);
  d2.add('e', 8);
  CHECK(d2.to_string() == "d16 e8");
  CHECK(RootDatum::parse("d16 e8") == d2);
  CHECK(RootDatum::parse("a1^24") == d);
  // canonicalization
  RootDatum d3;
  d3.add('d', 2);
  CHECK(d3.to_string() == "a1^2");
  RootDatum d4;
  d4.add('d', 3);
  CHECK(d4.to_string() == "a3");
}

TEST_CASE("identify a2") {
  RootSystem rs = identify_roots(root_lattice('a', 2));
  CHECK(rs.datum.to_string() == "a2");
  CHECK(rs.root_count() == 6);
  REQUIRE(rs.components.size() == 1);
  CHECK(rs.components[0].coxeter == 3);
  for (const auto& r : rs.simple) CHECK(rs.lattice.inner(rs.rho, to_qvec(r)) == -1);
}

TEST_CASE("coxeter numbers across families") {
  CHECK(identify_roots(root_lattice('a', 7)).components[0].coxeter == 8);
  CHECK(identify_roots(root_lattice('d', 9)).components[0].coxeter == 16);
  CHECK(identify_roots(root_lattice('e', 6)).components[0].coxeter == 12);
  CHECK(identify_roots(root_lattice('e', 7)).components[0].coxeter == 18);
  CHECK(identify_roots(root_lattice('e', 8)).components[0].coxeter == 30);
}

TEST_CASE("weyl vector norms") {
  RootDatum e8d;
  e8d.add('e', 8);
  CHECK(weyl_vector_norm(e8d) == 620);
  RootDatum e6d;
  e6d.add('e', 6);
  CHECK(weyl_vector_norm(e6d) == 78);
  RootDatum e7d;
  e7d.add('e', 7);
  CHECK(weyl_vector_norm(e7d) == Rat(399, 2));
  RootDatum a1d;
  a1d.add('a', 1);
  CHECK(weyl_vector_norm(a1d) == Rat(1, 2));
  RootDatum d24;
  d24.add('d', 24);
  CHECK(weyl_vector_norm(d24) == 4324);
  CHECK(Rat(2 * 46 * 47) == 4324);
  // rho computed from explicit roots matches the formula
  RootSystem rs = identify_roots(root_lattice('e', 8));
  CHECK(rs.rho_norm == 620);
}

TEST_CASE("number of roots is h times rank") {
  for (auto [fam, n] : {std::pair<char, int>{'a', 4}, {'d', 6}, {'e', 7}}) {
    RootSystem rs = identify_roots(root_lattice(fam, n));
    CHECK(rs.root_count() == (long long)rs.components[0].coxeter * n);
  }
}

TEST_CASE("weights sum to h - 1") {
  for (auto [fam, n] : {std::pair<char, int>{'a', 3}, {'d', 5}, {'e', 6}, {'e', 8}}) {
    RootSystem rs = identify_roots(root_lattice(fam, n));
    Int s = 0;
    for (const auto& w : rs.components[0].weights) s += w;
    CHECK(s == rs.components[0].coxeter - 1);
  }
}

TEST_CASE("minimal vector norms per dual coset") {
  auto mv = minimal_vectors(root_lattice('e', 7));
  std::multiset<Rat> norms(mv.norms.begin(), mv.norms.end());
  CHECK(norms == std::multiset<Rat>{Rat(0), Rat(3, 2)});

  auto d6 = minimal_vectors(root_lattice('d', 6));
  std::multiset<Rat> nd(d6.norms.begin(), d6.norms.end());
  CHECK(nd == std::multiset<Rat>{Rat(0), Rat(1), Rat(3, 2), Rat(3, 2)});

  auto e8v = minimal_vectors(e8());
  CHECK(e8v.norms == std::vector<Rat>{Rat(0)});

  // a_n: norms m(n+1-m)/(n+1)
  auto a4 = minimal_vectors(root_lattice('a', 4));
  std::multiset<Rat> na(a4.norms.begin(), a4.norms.end());
  CHECK(na == std::multiset<Rat>{Rat(0), Rat(4, 5), Rat(6, 5), Rat(6, 5), Rat(4, 5)});
}

TEST_CASE("opposition involution") {
  CHECK(opposition_flips('a', 5));
  CHECK(!opposition_flips('a', 1));
  CHECK(!opposition_flips('d', 6));
  CHECK(opposition_flips('d', 7));
  CHECK(opposition_flips('e', 6));
  CHECK(!opposition_flips('e', 7));
  CHECK(!opposition_flips('e', 8));
}

TEST_CASE("s invariant") {
  RootDatum e7d;
  e7d.add('e', 7);
  CHECK(s_invariant(e7d) == 7);
  RootDatum e6d;
  e6d.add('e', 6);
  CHECK(s_invariant(e6d) == 4);
  RootDatum a124;
  a124.add('a', 1, 24);
  CHECK(s_invariant(a124) == 24);
}

TEST_CASE("maximum orthogonal root sets match the s invariant") {
  for (auto [fam, n] : {std::pair<char, int>{'a', 3}, {'a', 4}, {'d', 4}, {'d', 5}, {'e', 6}}) {
    RootSystem rs = identify_roots(root_lattice(fam, n));
    CHECK(max_orthogonal_roots(rs) == rs.datum.s_invariant());
  }
}

TEST_CASE("S + 4 rho^2 + roots/2 = 0 mod 4") {
  for (auto [fam, n] :
       {std::pair<char, int>{'a', 2}, {'a', 5}, {'d', 4}, {'d', 7}, {'e', 6}, {'e', 7}, {'e', 8}}) {
    RootSystem rs = identify_roots(root_lattice(fam, n));
    Rat total = Rat(rs.datum.s_invariant()) + 4 * rs.rho_norm + Rat((long)rs.root_count()) / 2;
    REQUIRE(is_integer(total));
    CHECK(total.get_num() % 4 == 0);
  }
}

TEST_CASE("maximal subsystems of e8") {
  auto subs = maximal_subsystems('e', 8);
  std::set<std::string> p2, p3, p5, corank;
  for (const auto& s : subs) {
    if (s.kind == SubsystemEntry::Kind::prime_index) {
      if (s.prime == 2) p2.insert(s.datum.to_string());
      if (s.prime == 3) p3.insert(s.datum.to_string());
      if (s.prime == 5) p5.insert(s.datum.to_string());
    } else {
      corank.insert(s.datum.to_string());
    }
  }
  CHECK(p2 == std::set<std::string>{"d8", "e7 a1"});
  CHECK(p3 == std::set<std::string>{"e6 a2", "a8"});
  CHECK(p5 == std::set<std::string>{"a4^2"});
}

TEST_CASE("maximal subsystems of a_n are corank one only") {
  for (const auto& s : maximal_subsystems('a', 5))
    CHECK(s.kind == SubsystemEntry::Kind::corank_one);
}

TEST_CASE("extended diagrams") {
  RootSystem a1 = identify_roots(root_lattice('a', 1));
  auto ext1 = extended_diagram(a1);
  REQUIRE(ext1.nodes.size() == 2);
  CHECK(ext1.bonds(0, 1) == -2);

  RootSystem e8s = identify_roots(e8());
  CHECK(extended_diagram(e8s).nodes.size() == 9);

  RootSystem d4 = identify_roots(root_lattice('d', 4));
  auto ext4 = extended_diagram(d4);
  REQUIRE(ext4.nodes.size() == 5);
  // central node has degree 4
  int max_deg = 0;
  for (size_t i = 0; i < 5; ++i) {
    int deg = 0;
    for (size_t j = 0; j < 5; ++j)
      if (i != j && ext4.bonds(int(i), int(j)) != 0) ++deg;
    max_deg = std::max(max_deg, deg);
  }
  CHECK(max_deg == 4);
}

TEST_CASE("norm 4 classification in e8") {
  RootSystem rs = identify_roots(e8());
  auto sh = short_vectors(e8(), 4);
  ZVec r;
  for (auto& s : sh)
    if (s.norm_sq == 4) r = s.vectors.front();
  auto row = classify_norm4(rs, r);
  CHECK(row.r.to_string() == "e8");
  CHECK(row.r1.to_string() == "e7");
  CHECK(row.r2.to_string() == "d7");
  CHECK(row.m == 14);
  CHECK(row.t == 46);
  CHECK(row.c == 1);
}

TEST_CASE("norm 4 classification in d4: triality orbits") {
  Lattice d4 = root_lattice('d', 4);
  RootSystem rs = identify_roots(d4);
  auto sh = short_vectors(d4, 4);
  std::set<std::string> r2s;
  for (auto& s : sh)
    if (s.norm_sq == 4)
      for (auto& r : s.vectors) {
        auto row = classify_norm4(rs, r);
        CHECK(row.m == 6);
        CHECK(row.c == 0);
        CHECK(row.r1.to_string() == "a1");
        r2s.insert(row.r2.to_string());
      }
  CHECK(r2s == std::set<std::string>{"a3"});
}

TEST_CASE("norm 4 cross-component case") {
  Lattice aa = direct_sum(root_lattice('a', 1), root_lattice('a', 1));
  RootSystem rs = identify_roots(aa);
  ZVec r{Int(1), Int(1)};
  auto row = classify_norm4(rs, r);
  CHECK(row.m == 2);
  CHECK(row.r.to_string() == "a1^2");
  CHECK(!row.minimal_case);
}

TEST_CASE("opposition matrix fixes rho and squares to identity") {
  for (auto [fam, n] : {std::pair<char, int>{'a', 3}, {'d', 4}, {'e', 6}}) {
    RootSystem rs = identify_roots(root_lattice(fam, n));
    QMat s = opposition_matrix(rs);
    CHECK((s * s) == QMat::identity(rs.lattice.rank));
    QVec img = mat_vec_left(rs.rho, s);
    CHECK(img == rs.rho);
  }
}
