#include "hyperlat/standard_lattices.hpp"

namespace hyperlat {

Lattice identity_lattice(int n) {
  QMat g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 1;
  return Lattice(g, "I" + std::to_string(n));
}

Lattice root_lattice(char family, int n) {
  if (family == 'a' && n < 1) throw DomainError("root_lattice: a_n needs n >= 1");
  if (family == 'd' && n < 2) throw DomainError("root_lattice: d_n needs n >= 2");
  if (family == 'e' && (n < 6 || n > 8)) throw DomainError("root_lattice: e_n needs n in 6..8");
  QMat g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = 2;
  auto join = [&](int i, int j) {
    g(i, j) = -1;
    g(j, i) = -1;
  };
  if (family == 'a') {
    for (int i = 0; i + 1 < n; ++i) join(i, i + 1);
  } else if (family == 'd') {
    for (int i = 0; i + 1 < n - 1; ++i) join(i, i + 1);
    if (n >= 3) join(n - 3, n - 1);
    // d2 is the disconnected a1^2; the loop above adds nothing for n = 2
  } else {
    for (int i = 0; i + 1 < n - 1; ++i) join(i, i + 1);
    join(2, n - 1);
  }
  return Lattice(g, std::string(1, family) + std::to_string(n));
}

Lattice hyperbolic_plane() {
  QMat g(2, 2);
  g(0, 1) = -1;
  g(1, 0) = -1;
  return Lattice(g, "U");
}

Lattice rescale(const Lattice& l, const Rat& c) {
  QMat g = l.gram;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) *= c;
  return Lattice(g, l.label);
}

Lattice even_lorentzian(int k) {
  Lattice acc = hyperbolic_plane();
  for (int i = 0; i < k; ++i) acc = direct_sum(acc, e8());
  acc.label = "II" + std::to_string(8 * k + 1) + ",1";
  return acc;
}

Lattice odd_lorentzian(int m, int n) {
  QMat g(m + n, m + n);
  for (int i = 0; i < m; ++i) g(i, i) = 1;
  for (int i = m; i < m + n; ++i) g(i, i) = -1;
  return Lattice(g, "I" + std::to_string(m) + "," + std::to_string(n));
}

}  // namespace hyperlat
