#include "doctest.h"
#include "hyperlat/enumerate.hpp"
#include "hyperlat/standard_lattices.hpp"

using namespace hyperlat;

namespace {

// Independent oracle: box search over coefficient cubes.
std::vector<ZVec> box_search(const Lattice& l, const QVec& center, const Rat& radius_sq,
                             int box) {
  std::vector<ZVec> out;
  int n = l.rank;
  ZVec x(n, Int(-box));
  while (true) {
    QVec diff(n);
    for (int i = 0; i < n; ++i) diff[i] = Rat(x[i]) - center[i];
    if (l.norm(diff) <= radius_sq) out.push_back(x);
    int i = 0;
    while (i < n && x[i] == box) x[i++] = -box;
    if (i == n) break;
    ++x[i];
  }
  return out;
}

}  // namespace

TEST_CASE("shells of small lattices") {
  auto sh = short_vectors(identity_lattice(3), 1);
  REQUIRE(sh.size() == 1);
  CHECK(sh[0].norm_sq == 1);
  CHECK(sh[0].vectors.size() == 6);

  auto e8sh = short_vectors(e8(), 2);
  REQUIRE(!e8sh.empty());
  CHECK(e8sh.back().norm_sq == 2);
  CHECK(e8sh.back().vectors.size() == 240);
}

TEST_CASE("e8 theta prefix from shells") {
  auto sh = short_vectors(e8(), 8);
  long long c2 = 0, c4 = 0, c6 = 0, c8 = 0;
  for (auto& s : sh) {
    if (s.norm_sq == 2) c2 = s.vectors.size();
    if (s.norm_sq == 4) c4 = s.vectors.size();
    if (s.norm_sq == 6) c6 = s.vectors.size();
    if (s.norm_sq == 8) c8 = s.vectors.size();
  }
  CHECK(c2 == 240);
  CHECK(c4 == 2160);
  CHECK(c6 == 6720);
  CHECK(c8 == 17520);
}

TEST_CASE("enumeration agrees with box search oracle") {
  // rank <= 6, radius <= 8, including rational centers
  std::vector<Lattice> cases = {root_lattice('a', 2), root_lattice('d', 4),
                                root_lattice('a', 5), identity_lattice(4)};
  for (const auto& l : cases) {
    QVec zero(l.rank, Rat(0));
    QVec center(l.rank, Rat(0));
    center[0] = Rat(1, 3);
    if (l.rank > 2) center[2] = Rat(-1, 2);
    for (Rat radius : {Rat(2), Rat(5), Rat(8)}) {
      auto got = Enumerator(l).shells(zero, radius);
      size_t total = 0;
      for (auto& s : got) total += s.vectors.size();
      CHECK(total == box_search(l, zero, radius, 6).size());

      auto got_c = Enumerator(l).shells(center, radius);
      size_t total_c = 0;
      for (auto& s : got_c) total_c += s.vectors.size();
      CHECK(total_c == box_search(l, center, radius, 6).size());
    }
  }
}

TEST_CASE("shell sizes are even away from the origin") {
  for (auto& s : short_vectors(root_lattice('d', 5), 6)) CHECK(s.vectors.size() % 2 == 0);
}

TEST_CASE("closest vector basics") {
  Lattice l = root_lattice('a', 2);
  QVec pt{Rat(1), Rat(1)};
  auto c = closest_vectors(l, pt);
  CHECK(c.norm_sq == 0);
  REQUIRE(c.vectors.size() == 1);
  CHECK(c.vectors[0] == ZVec{Int(1), Int(1)});

  // deep hole of a1: midpoint has squared distance 1/2
  Lattice a1 = root_lattice('a', 1);
  auto h = closest_vectors(a1, {Rat(1, 2)});
  CHECK(h.norm_sq == Rat(1, 2));
  CHECK(h.vectors.size() == 2);
}

TEST_CASE("budget errors are typed") {
  EnumerateOptions opt;
  opt.max_vectors = 10;
  CHECK_THROWS_AS(short_vectors(e8(), 2, opt), BudgetExceeded);
}

TEST_CASE("lll_reduce on scrambled d4") {
  Lattice d4 = root_lattice('d', 4);
  QMat t = QMat::identity(4);
  t(0, 1) = 3;
  t(2, 0) = -4;
  Lattice scrambled(t * d4.gram * t.transpose());
  auto red = lll_reduce(scrambled);
  CHECK(red.lattice.det() == d4.det());
  for (int i = 0; i < 4; ++i) CHECK(red.lattice.gram(i, i) == 2);
  CHECK((red.transform * scrambled.gram * red.transform.transpose()) == red.lattice.gram);
}
