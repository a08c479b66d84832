#include "hyperlat/matrix.hpp"

#include <algorithm>
#include <cassert>

namespace hyperlat {

QMat::QMat(std::initializer_list<std::initializer_list<Rat>> init) {
  rows_ = int(init.size());
  cols_ = rows_ ? int(init.begin()->size()) : 0;
  a_.reserve(size_t(rows_) * cols_);
  for (const auto& r : init) {
    assert(int(r.size()) == cols_);
    for (const auto& x : r) a_.push_back(x);
  }
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMat QMat::operator*(const QMat& o) const {
  assert(cols_ == o.rows_);
  QMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

QVec QMat::row(int i) const {
  QVec v(cols_);
  for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

void QMat::set_row(int i, const QVec& v) {
  assert(int(v.size()) == cols_);
  for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

bool QMat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool QMat::is_integral() const {
  for (const auto& x : a_)
    if (!is_integer(x)) return false;
  return true;
}

Int QMat::denominator() const {
  Int d = 1;
  for (const auto& x : a_) {
    Int g;
    mpz_lcm(g.get_mpz_t(), d.get_mpz_t(), x.get_den().get_mpz_t());
    d = g;
  }
  return d;
}

Rat QMat::det() const {
  assert(rows_ == cols_);
  QMat w = *this;
  Rat d = 1;
  for (int col = 0; col < cols_; ++col) {
    int piv = -1;
    for (int i = col; i < rows_; ++i)
      if (w(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < cols_; ++j) std::swap(w(piv, j), w(col, j));
      d = -d;
    }
    d *= w(col, col);
    Rat inv = 1 / w(col, col);
    for (int i = col + 1; i < rows_; ++i) {
      if (w(i, col) == 0) continue;
      Rat f = w(i, col) * inv;
      for (int j = col; j < cols_; ++j) w(i, j) -= f * w(col, j);
    }
  }
  return d;
}

int QMat::rank() const {
  QMat w = *this;
  int r = 0;
  for (int col = 0; col < cols_ && r < rows_; ++col) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (w(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; ++j) std::swap(w(piv, j), w(r, j));
    Rat inv = 1 / w(r, col);
    for (int i = r + 1; i < rows_; ++i) {
      if (w(i, col) == 0) continue;
      Rat f = w(i, col) * inv;
      for (int j = col; j < cols_; ++j) w(i, j) -= f * w(r, j);
    }
    ++r;
  }
  return r;
}

std::optional<QMat> QMat::inverse() const {
  assert(rows_ == cols_);
  int n = rows_;
  QMat w = *this;
  QMat inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (w(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(w(piv, j), w(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Rat f = 1 / w(col, col);
    for (int j = 0; j < n; ++j) {
      w(col, j) *= f;
      inv(col, j) *= f;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || w(i, col) == 0) continue;
      Rat g = w(i, col);
      for (int j = 0; j < n; ++j) {
        w(i, j) -= g * w(col, j);
        inv(i, j) -= g * inv(col, j);
      }
    }
  }
  return inv;
}

std::optional<QVec> QMat::solve_left(const QVec& b) const {
  // Solve x * A = b: transpose to A^T x^T = b^T and eliminate.
  QMat at = transpose();
  int n = at.rows(), m = at.cols();
  QVec rhs = b;
  assert(int(b.size()) == n);
  std::vector<int> pivot_col;
  int r = 0;
  for (int col = 0; col < m && r < n; ++col) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < m; ++j) std::swap(at(piv, j), at(r, j));
      std::swap(rhs[piv], rhs[r]);
    }
    Rat f = 1 / at(r, col);
    for (int j = 0; j < m; ++j) at(r, j) *= f;
    rhs[r] *= f;
    for (int i = 0; i < n; ++i) {
      if (i == r || at(i, col) == 0) continue;
      Rat g = at(i, col);
      for (int j = 0; j < m; ++j) at(i, j) -= g * at(r, j);
      rhs[i] -= g * rhs[r];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (int i = r; i < n; ++i)
    if (rhs[i] != 0) return std::nullopt;
  QVec x(m, Rat(0));
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

namespace {

// Reduces row j by row i at pivot column using floor division.
void hnf_reduce(QMat& h, QMat* u, int i, int j, int col) {
  if (h(j, col) == 0) return;
  Int q = floor_div(h(j, col).get_num(), h(i, col).get_num());
  if (q == 0) return;
  Rat qr(q);
  for (int k = 0; k < h.cols(); ++k) h(j, k) -= qr * h(i, k);
  if (u)
    for (int k = 0; k < u->cols(); ++k) (*u)(j, k) -= qr * (*u)(i, k);
}

}  // namespace

QMat hnf(const QMat& a, QMat* transform) {
  assert(a.is_integral());
  QMat h = a;
  QMat u = QMat::identity(a.rows());
  int n = a.rows(), m = a.cols();
  int r = 0;
  for (int col = 0; col < m && r < n; ++col) {
    // Euclidean elimination in this column below row r.
    while (true) {
      int piv = -1;
      for (int i = r; i < n; ++i)
        if (h(i, col) != 0 && (piv < 0 || abs(h(i, col).get_num()) < abs(h(piv, col).get_num())))
          piv = i;
      if (piv < 0) break;
      if (piv != r) {
        for (int k = 0; k < m; ++k) std::swap(h(piv, k), h(r, k));
        for (int k = 0; k < n; ++k) std::swap(u(piv, k), u(r, k));
      }
      bool done = true;
      for (int i = r + 1; i < n; ++i) {
        hnf_reduce(h, &u, r, i, col);
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, col) == 0) continue;
    if (h(r, col) < 0) {
      for (int k = 0; k < m; ++k) h(r, k) = -h(r, k);
      for (int k = 0; k < n; ++k) u(r, k) = -u(r, k);
    }
    for (int i = 0; i < r; ++i) hnf_reduce(h, &u, r, i, col);
    ++r;
  }
  if (transform) *transform = u;
  QMat out(r, m);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = h(i, j);
  return out;
}

QMat integer_kernel(const QMat& a) {
  QMat u;
  QMat h = hnf(a, &u);
  int r = h.rows();
  QMat ker(a.rows() - r, a.rows());
  for (int i = r; i < a.rows(); ++i)
    for (int j = 0; j < a.rows(); ++j) ker(i - r, j) = u(i, j);
  return ker;
}

SmithResult smith_normal_form(const QMat& a) {
  assert(a.is_integral());
  int n = a.rows(), m = a.cols();
  SmithResult res{a, QMat::identity(n), QMat::identity(m)};
  QMat& d = res.d;
  QMat& u = res.u;
  QMat& v = res.v;

  auto row_op = [&](int i, int j, const Int& q) {  // row j -= q * row i
    Rat qr(q);
    for (int k = 0; k < m; ++k) d(j, k) -= qr * d(i, k);
    for (int k = 0; k < n; ++k) u(j, k) -= qr * u(i, k);
  };
  auto col_op = [&](int i, int j, const Int& q) {  // col j -= q * col i
    Rat qr(q);
    for (int k = 0; k < n; ++k) d(k, j) -= qr * d(k, i);
    for (int k = 0; k < m; ++k) v(k, j) -= qr * v(k, i);
  };
  auto swap_rows = [&](int i, int j) {
    for (int k = 0; k < m; ++k) std::swap(d(i, k), d(j, k));
    for (int k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    for (int k = 0; k < n; ++k) std::swap(d(k, i), d(k, j));
    for (int k = 0; k < m; ++k) std::swap(v(k, i), v(k, j));
  };

  int t = std::min(n, m);
  for (int s = 0; s < t; ++s) {
    // Find nonzero pivot of smallest absolute value.
    int pi = -1, pj = -1;
    for (int i = s; i < n; ++i)
      for (int j = s; j < m; ++j)
        if (d(i, j) != 0 &&
            (pi < 0 || abs(d(i, j).get_num()) < abs(d(pi, pj).get_num()))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    swap_rows(s, pi);
    swap_cols(s, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = s + 1; i < n; ++i)
        if (d(i, s) != 0) {
          Int q = floor_div(d(i, s).get_num(), d(s, s).get_num());
          row_op(s, i, q);
          if (d(i, s) != 0) {
            swap_rows(s, i);
            clean = false;
          }
        }
      for (int j = s + 1; j < m; ++j)
        if (d(s, j) != 0) {
          Int q = floor_div(d(s, j).get_num(), d(s, s).get_num());
          col_op(s, j, q);
          if (d(s, j) != 0) {
            swap_cols(s, j);
            clean = false;
          }
        }
    }
    if (d(s, s) < 0) {
      for (int k = 0; k < m; ++k) d(s, k) = -d(s, k);
      for (int k = 0; k < n; ++k) u(s, k) = -u(s, k);
    }
  }
  // Enforce divisibility chain.
  for (int s = 0; s + 1 < t; ++s) {
    if (d(s, s) == 0) continue;
    for (int j = s + 1; j < t; ++j) {
      if (d(j, j).get_num() % d(s, s).get_num() == 0) continue;
      // col s += col j, then redo elimination at s.
      col_op(j, s, Int(-1));
      bool clean = false;
      while (!clean) {
        clean = true;
        Int g;
        mpz_gcd(g.get_mpz_t(), d(s, s).get_num().get_mpz_t(), d(j, s).get_num().get_mpz_t());
        if (d(j, s) != 0) {
          Int q = floor_div(d(j, s).get_num(), d(s, s).get_num());
          row_op(s, j, q);
          if (d(j, s) != 0) {
            swap_rows(s, j);
            clean = false;
          }
        }
        if (d(s, j) != 0) {
          Int q = floor_div(d(s, j).get_num(), d(s, s).get_num());
          col_op(s, j, q);
          if (d(s, j) != 0) {
            swap_cols(s, j);
            clean = false;
          }
        }
      }
      if (d(s, s) < 0) {
        for (int k = 0; k < d.cols(); ++k) d(s, k) = -d(s, k);
        for (int k = 0; k < u.cols(); ++k) u(s, k) = -u(s, k);
      }
      if (d(j, j) < 0) {
        for (int k = 0; k < d.cols(); ++k) d(j, k) = -d(j, k);
        for (int k = 0; k < u.cols(); ++k) u(j, k) = -u(j, k);
      }
      j = s;  // recheck chain from here
    }
  }
  return res;
}

bool cholesky_q(const QMat& g, QMat& q) {
  assert(g.is_symmetric());
  int n = g.rows();
  q = g;
  for (int i = 0; i < n; ++i) {
    if (q(i, i) <= 0) return false;
    for (int j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);        // keep unscaled copy
      q(i, j) /= q(i, i);
    }
    for (int k = i + 1; k < n; ++k)
      for (int l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  return true;
}

QMat lll_gram(const QMat& g, QMat* reduced) {
  assert(g.is_symmetric());
  int n = g.rows();
  QMat u = QMat::identity(n);
  QMat w = g;

  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  QVec bb(n, Rat(0));  // squared Gram-Schmidt norms
  auto gs = [&]() {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        Rat ip = w(i, j);
        for (int k = 0; k < j; ++k) ip -= m[i][k] * m[j][k] * bb[k];
        m[i][j] = bb[j] == 0 ? Rat(0) : ip / bb[j];
      }
      Rat norm = w(i, i);
      for (int k = 0; k < i; ++k) norm -= m[i][k] * m[i][k] * bb[k];
      bb[i] = norm;
    }
  };
  auto row_sub = [&](int i, int j, const Int& q) {  // basis_i -= q * basis_j
    if (q == 0) return;
    Rat qr(q);
    for (int k = 0; k < n; ++k) u(i, k) -= qr * u(j, k);
    Rat wii = w(i, i) - 2 * qr * w(i, j) + qr * qr * w(j, j);
    for (int k = 0; k < n; ++k) {
      w(i, k) -= qr * w(j, k);
      w(k, i) = w(i, k);
    }
    w(i, i) = wii;
  };
  auto row_swap = [&](int i, int j) {
    for (int k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
    for (int k = 0; k < n; ++k) std::swap(w(i, k), w(j, k));
    for (int k = 0; k < n; ++k) std::swap(w(k, i), w(k, j));
  };

  gs();
  int k = 1;
  const Rat delta(3, 4);
  long guard = 0;
  while (k < n) {
    if (++guard > 2000000) throw BudgetExceeded("lll iteration bound");
    for (int j = k - 1; j >= 0; --j) {
      Int q = rat_floor(m[k][j] + Rat(1, 2));
      if (q != 0) {
        row_sub(k, j, q);
        gs();
      }
    }
    if (bb[k] >= (delta - m[k][k - 1] * m[k][k - 1]) * bb[k - 1]) {
      ++k;
    } else {
      row_swap(k, k - 1);
      gs();
      k = std::max(k - 1, 1);
    }
  }
  if (reduced) *reduced = w;
  return u;
}

Rat inner(const QMat& g, const QVec& x, const QVec& y) {
  assert(int(x.size()) == g.rows() && int(y.size()) == g.cols());
  Rat s = 0;
  for (int i = 0; i < g.rows(); ++i) {
    if (x[i] == 0) continue;
    Rat t = 0;
    for (int j = 0; j < g.cols(); ++j)
      if (y[j] != 0) t += g(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

QVec mat_vec_left(const QVec& x, const QMat& a) {
  assert(int(x.size()) == a.rows());
  QVec r(a.cols(), Rat(0));
  for (int i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < a.cols(); ++j) r[j] += x[i] * a(i, j);
  }
  return r;
}

QVec add(const QVec& x, const QVec& y) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

QVec sub(const QVec& x, const QVec& y) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

QVec scale(const Rat& c, const QVec& x) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

ZVec to_zvec(const QVec& x) {
  ZVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!is_integer(x[i])) throw DomainError("vector is not integral");
    r[i] = x[i].get_num();
  }
  return r;
}

QVec to_qvec(const ZVec& x) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = Rat(x[i]);
  return r;
}

}  // namespace hyperlat
