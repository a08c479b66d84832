#pragma once

#include <initializer_list>
#include <optional>

#include "hyperlat/arith.hpp"

namespace hyperlat {

// Dense matrix of exact rationals, row-major.  Basis vectors are rows
// throughout the library: a lattice point with coordinate row x has norm
// x * G * x^T.
class QMat {
 public:
  QMat() : rows_(0), cols_(0) {}
  QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  QMat(std::initializer_list<std::initializer_list<Rat>> init);

  static QMat identity(int n);
  static QMat zero(int rows, int cols) { return QMat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  bool operator==(const QMat& o) const = default;

  QMat transpose() const;
  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QVec row(int i) const;
  void set_row(int i, const QVec& v);

  bool is_symmetric() const;
  bool is_integral() const;

  // Common denominator of all entries.
  Int denominator() const;

  Rat det() const;
  int rank() const;
  std::optional<QMat> inverse() const;

  // Solves x * A = b for a row vector x; empty if inconsistent.
  std::optional<QVec> solve_left(const QVec& b) const;

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

// Integer matrices reuse QMat storage; these helpers operate on integral ones.

// Hermite normal form (row style, lower-left echelon): returns H with the same
// row span over Z, pivots positive, entries above each pivot reduced.
// Zero rows are dropped.  If transform != nullptr it receives U with
// U * A = H-padded-with-zero-rows (U unimodular, square of size A.rows()).
QMat hnf(const QMat& a, QMat* transform = nullptr);

// Smith normal form: returns diagonal d_1 | d_2 | ... along with unimodular
// U, V such that U * A * V = D.
struct SmithResult {
  QMat d, u, v;
};
SmithResult smith_normal_form(const QMat& a);

// Basis of the left integer kernel {x : x * A = 0} of an integral matrix.
QMat integer_kernel(const QMat& a);

// q-decomposition of a symmetric positive definite rational matrix:
// Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2.
// Fails (returns false) when the matrix is not positive definite.
bool cholesky_q(const QMat& g, QMat& q);

// Exact LLL reduction of a positive definite Gram matrix (delta = 3/4).
// Returns unimodular U with reduced Gram U * G * U^T.
QMat lll_gram(const QMat& g, QMat* reduced = nullptr);

Rat inner(const QMat& g, const QVec& x, const QVec& y);
QVec mat_vec_left(const QVec& x, const QMat& a);  // x * A
QVec add(const QVec& x, const QVec& y);
QVec sub(const QVec& x, const QVec& y);
QVec scale(const Rat& c, const QVec& x);
ZVec to_zvec(const QVec& x);
QVec to_qvec(const ZVec& x);

}  // namespace hyperlat
