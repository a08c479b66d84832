#include "hyperlat/lattice.hpp"

#include <cassert>

#include "hyperlat/enumerate.hpp"

namespace hyperlat {

Lattice::Lattice(QMat g, std::string lab) : rank(g.rows()), gram(std::move(g)), label(std::move(lab)) {
  if (!gram.is_symmetric()) throw DomainError("gram matrix must be symmetric");
}

bool Lattice::is_even() const {
  if (!is_integral()) return false;
  for (int i = 0; i < rank; ++i)
    if (gram(i, i).get_num() % 2 != 0) return false;
  return true;
}

Lattice::Signature Lattice::signature() const {
  QMat w = gram;
  int n = rank;
  Signature s;
  std::vector<bool> used(n, false);
  for (int step = 0; step < n; ++step) {
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i] && w(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // all remaining diagonal entries vanish; mix in an off-diagonal pair
      int a = -1, b = -1;
      for (int i = 0; i < n && a < 0; ++i)
        if (!used[i])
          for (int j = 0; j < n; ++j)
            if (!used[j] && j != i && w(i, j) != 0) {
              a = i;
              b = j;
              break;
            }
      if (a < 0) break;  // all zero
      for (int k = 0; k < n; ++k) w(a, k) += w(b, k);
      for (int k = 0; k < n; ++k) w(k, a) += w(k, b);
      piv = a;
    }
    used[piv] = true;
    if (w(piv, piv) > 0)
      ++s.pos;
    else
      ++s.neg;
    Rat d = w(piv, piv);
    for (int i = 0; i < n; ++i) {
      if (used[i] || w(i, piv) == 0) continue;
      Rat f = w(i, piv) / d;
      for (int k = 0; k < n; ++k) w(i, k) -= f * w(piv, k);
      for (int k = 0; k < n; ++k) w(k, i) -= f * w(k, piv);
    }
  }
  s.zero = n - s.pos - s.neg;
  return s;
}

bool Lattice::is_positive_definite() const {
  QMat q;
  return cholesky_q(gram, q);
}

bool Lattice::is_lorentzian() const {
  Signature s = signature();
  return s.neg == 1 && s.zero == 0 && s.pos == rank - 1;
}

Rat inner_product(const Lattice& l, const QVec& x, const QVec& y) {
  if (int(x.size()) != l.rank || int(y.size()) != l.rank)
    throw DomainError("inner_product: dimension mismatch");
  return l.inner(x, y);
}

std::vector<QVec> dual_basis(const Lattice& l) {
  auto inv = l.gram.inverse();
  if (!inv) throw DomainError("dual_basis: singular lattice");
  std::vector<QVec> out;
  out.reserve(l.rank);
  for (int i = 0; i < l.rank; ++i) out.push_back(inv->row(i));
  return out;
}

DiscriminantGroup discriminant_group(const Lattice& l) {
  if (!l.is_integral()) throw DomainError("discriminant_group: lattice must be integral");
  if (l.det() == 0) throw DomainError("discriminant_group: singular lattice");
  SmithResult snf = smith_normal_form(l.gram);
  auto vinv = snf.v.inverse();
  auto ginv = l.gram.inverse();
  assert(vinv && ginv);
  QMat gens = *vinv * *ginv;  // row i generates a cyclic factor of order d_i
  DiscriminantGroup dg;
  bool even = l.is_even();
  for (int i = 0; i < l.rank; ++i) {
    Int d = snf.d(i, i).get_num();
    if (d <= 1) continue;
    QVec g = gens.row(i);
    Rat q = l.norm(g);
    Rat modulus = even ? 2 : 1;
    // reduce q into [0, modulus)
    Rat q_red = q - modulus * Rat(rat_floor(q / modulus));
    dg.generators.push_back(g);
    dg.orders.push_back(d);
    dg.q_values.push_back(q_red);
  }
  return dg;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  QMat g(a.rank + b.rank, a.rank + b.rank);
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < a.rank; ++j) g(i, j) = a.gram(i, j);
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.rank; ++j) g(a.rank + i, a.rank + j) = b.gram(i, j);
  std::string lab;
  if (!a.label.empty() || !b.label.empty()) lab = a.label + "+" + b.label;
  return Lattice(std::move(g), lab);
}

GluedOverlattice glue(const Lattice& base, const std::vector<QVec>& glue_vectors) {
  int n = base.rank;
  Int d = 1;
  for (const auto& v : glue_vectors)
    for (const auto& x : v) {
      Int g;
      mpz_lcm(g.get_mpz_t(), d.get_mpz_t(), x.get_den().get_mpz_t());
      d = g;
    }
  QMat stack(n + int(glue_vectors.size()), n);
  for (int i = 0; i < n; ++i) stack(i, i) = Rat(d);
  for (size_t k = 0; k < glue_vectors.size(); ++k)
    for (int j = 0; j < n; ++j) stack(n + int(k), j) = glue_vectors[k][j] * Rat(d);
  QMat h = hnf(stack);
  if (h.rows() != n) throw DomainError("glue: degenerate glue system");
  QMat basis(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis(i, j) = h(i, j) / Rat(d);
  QMat g2 = basis * base.gram * basis.transpose();
  // all pairings must stay integral; parity of the result is up to the caller
  if (base.is_integral() && !g2.is_integral())
    throw DomainError("glue: non-integral pairing among glue vectors");
  GluedOverlattice out;
  out.base = base;
  out.glue = glue_vectors;
  out.result = Lattice(g2, base.label.empty() ? "" : base.label + "~");
  out.result_basis = basis;
  Rat idx = 1 / basis.det();
  if (idx < 0) idx = -idx;
  assert(is_integer(idx));
  out.index = idx.get_num();
  return out;
}

namespace {

// Completes a primitive integer row c to a unimodular matrix whose first row
// is c (rows are basis vectors).
QMat complete_primitive(const ZVec& c) {
  int n = int(c.size());
  QMat m(1, n);
  for (int j = 0; j < n; ++j) m(0, j) = Rat(c[j]);
  SmithResult s = smith_normal_form(m);
  assert(s.d(0, 0) == 1);
  // c * V = e_1, so c is the first row of V^-1.
  auto vinv = s.v.inverse();
  assert(vinv);
  QMat comp = *vinv;
  // s.u is 1x1 = [±1]; fold its sign in.
  if (s.u(0, 0) == -1)
    for (int j = 0; j < n; ++j) comp(0, j) = -comp(0, j);
  return comp;
}

}  // namespace

IsotropicQuotient isotropic_quotient(const Lattice& l, const QVec& w_in) {
  ZVec w = to_zvec(w_in);
  if (!is_primitive(w)) throw DomainError("isotropic_quotient: w not primitive");
  if (l.norm(w_in) != 0) throw DomainError("isotropic_quotient: w not isotropic");
  int n = l.rank;
  // w^perp: integer kernel of the single column gram * w^T.
  QMat col(n, 1);
  for (int i = 0; i < n; ++i) {
    Rat s = 0;
    for (int j = 0; j < n; ++j) s += l.gram(i, j) * w_in[j];
    col(i, 0) = s;
  }
  Int d = col.denominator();
  for (int i = 0; i < n; ++i) col(i, 0) *= Rat(d);
  QMat perp = integer_kernel(col);  // rows span w^perp, saturated
  assert(perp.rows() == n - 1);
  // coordinates of w in the perp basis
  auto cw = perp.solve_left(w_in);
  assert(cw);
  ZVec c = to_zvec(*cw);
  QMat comp = complete_primitive(c);  // (n-1)x(n-1), first row = c
  QMat newbasis = comp * perp;        // rows in l's coordinates, first row = w
  QMat full_gram = newbasis * l.gram * newbasis.transpose();
  QMat q(n - 2, n - 2);
  for (int i = 1; i < n - 1; ++i)
    for (int j = 1; j < n - 1; ++j) q(i - 1, j - 1) = full_gram(i, j);
  IsotropicQuotient out;
  out.lattice = Lattice(q);
  out.lift = QMat(n - 2, n);
  for (int i = 1; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) out.lift(i - 1, j) = newbasis(i, j);
  out.w = w_in;
  return out;
}

ZVec characteristic_class(const Lattice& l) {
  if (!l.is_integral()) throw DomainError("characteristic_class: integral lattice required");
  int n = l.rank;
  // Solve c * G = diag(G) mod 2.
  std::vector<std::vector<int>> a(n, std::vector<int>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Int v = l.gram(j, i).get_num() % 2;
      a[i][j] = int(mpz_tstbit(v.get_mpz_t(), 0));
    }
    Int rhs = l.gram(i, i).get_num() % 2;
    a[i][n] = int(mpz_tstbit(rhs.get_mpz_t(), 0));
  }
  // Gaussian elimination over GF(2).
  std::vector<int> pivot_of_row(n, -1);
  int r = 0;
  for (int col = 0; col < n && r < n; ++col) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (a[i][col]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    for (int i = 0; i < n; ++i)
      if (i != r && a[i][col])
        for (int j = col; j <= n; ++j) a[i][j] ^= a[r][j];
    pivot_of_row[r] = col;
    ++r;
  }
  ZVec c(n, Int(0));
  for (int i = 0; i < r; ++i) c[pivot_of_row[i]] = a[i][n];
  for (int i = r; i < n; ++i)
    if (a[i][n]) throw DomainError("characteristic_class: no solution (lattice not unimodular?)");
  return c;
}

std::vector<ZVec> characteristic_vectors(const Lattice& l, const Rat& norm_bound) {
  if (!l.is_positive_definite() || !l.is_unimodular())
    throw DomainError("characteristic_vectors: positive definite unimodular lattice required");
  ZVec c0 = l.is_even() ? ZVec(l.rank, Int(0)) : characteristic_class(l);
  // c = c0 + 2x, c^2 <= bound  <=>  |x + c0/2|^2 <= bound/4.
  QVec center(l.rank);
  for (int i = 0; i < l.rank; ++i) center[i] = frac(-c0[i], 2);
  auto shells = enumerate_shells(l, center, norm_bound / 4);
  std::vector<ZVec> out;
  for (const auto& sh : shells)
    for (const auto& x : sh.vectors) {
      ZVec c(l.rank);
      for (int i = 0; i < l.rank; ++i) c[i] = c0[i] + 2 * x[i];
      out.push_back(c);
    }
  return out;
}

bool is_primitive(const ZVec& v) {
  Int g = 0;
  for (const auto& x : v) {
    Int t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    g = t;
  }
  return g == 1;
}

ZVec primitive_part(const ZVec& v) {
  Int g = 0;
  for (const auto& x : v) {
    Int t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    g = t;
  }
  if (g == 0) throw DomainError("primitive_part: zero vector");
  ZVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

}  // namespace hyperlat
