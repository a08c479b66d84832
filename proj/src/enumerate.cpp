#include "hyperlat/enumerate.hpp"

#include <algorithm>
#include <cassert>

namespace hyperlat {

Enumerator::Enumerator(const Lattice& l) : l_(l) {
  if (l_.rank == 0) {
    red_ = l_;
    return;
  }
  if (!l_.is_positive_definite()) throw DomainError("enumerate: lattice is not positive definite");
  auto red = lll_reduce(l_);
  red_ = red.lattice;
  u_ = red.transform;
  auto inv = u_.inverse();
  assert(inv);
  u_inv_ = *inv;
  bool ok = cholesky_q(red_.gram, q_);
  assert(ok);
  // cache the basis change small-integer rows for the hot emit path
  bool fits = true;
  for (int i = 0; i < l_.rank && fits; ++i)
    for (int j = 0; j < l_.rank && fits; ++j)
      if (!u_(i, j).get_num().fits_slong_p()) fits = false;
  if (fits) {
    u64_.assign(l_.rank, std::vector<long long>(l_.rank));
    for (int i = 0; i < l_.rank; ++i)
      for (int j = 0; j < l_.rank; ++j) u64_[i][j] = u_(i, j).get_num().get_si();
  }
}

namespace {

// Per-level state of the zig-zag traversal.  Candidates x_i are visited
// outward from the rounded center, so the level term q_ii (x_i - alpha)^2 is
// nondecreasing on each side and a failed side stays failed.
struct Level {
  Rat u;         // sum_{j>i} q_ij y_j
  Rat alpha;     // center_i - u
  Rat consumed;  // weight used by the levels above
  Int up, down;  // next candidates on each side (up >= alpha side)
  bool up_open = true, down_open = true;
  bool has_current = false;
  Int current;
  Rat current_used;  // consumed + q_ii (current - alpha)^2
};

}  // namespace

namespace {

using int128 = __int128;

Int int128_to_mpz(int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  Int hi, lo, r;
  mpz_set_ui(hi.get_mpz_t(), (unsigned long)(u >> 64));
  mpz_set_ui(lo.get_mpz_t(), (unsigned long)(u & ~0ULL));
  r = (hi << 64) + lo;
  return neg ? Int(-r) : r;
}

// Returns false when the value does not fit comfortably below 2^100.
bool mpz_to_int128(const Int& v, int128& out) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 100) return false;
  Int a = abs(v);
  Int mask;
  mpz_set_str(mask.get_mpz_t(), "ffffffffffffffff", 16);
  Int alo = a & mask;
  Int ahi = a >> 64;
  unsigned long long lo = mpz_get_ui(alo.get_mpz_t());
  unsigned long long hi = mpz_get_ui(ahi.get_mpz_t());
  unsigned __int128 u = ((unsigned __int128)hi << 64) | lo;
  out = v < 0 ? -(int128)u : (int128)u;
  return true;
}

}  // namespace

// Scaled-integer traversal: exact arithmetic over a machine integer type
// after clearing all denominators.  Falls back to the rational path when
// magnitudes could overflow.  Scaling: S = R * Dc clears q-rows and the
// center; every level term is carried at the fixed scale M = R^3 * Dc^2.
template <class I>
bool Enumerator::enumerate_dynamic_typed(
    const QVec& center, Rat bound, int bits,
    const std::function<Rat(const ZVec&, const Rat&, const Rat&)>* visit,
    const std::function<Rat(const long long*, const Rat&, const Rat&)>* visit64,
    const EnumerateOptions& opt) const {
  int n = l_.rank;
  // common denominators
  Int r_den = 1, c_den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Int g;
      mpz_lcm(g.get_mpz_t(), r_den.get_mpz_t(), q_(i, j).get_den().get_mpz_t());
      r_den = g;
    }
  for (int i = 0; i < n; ++i) {
    Int g;
    mpz_lcm(g.get_mpz_t(), c_den.get_mpz_t(), center[i].get_den().get_mpz_t());
    c_den = g;
  }
  Int s_int = r_den * c_den;            // scale of linear terms
  Int m_int = r_den * s_int * s_int;    // scale of quadratic terms
  // conservative magnitude estimate: the window of x_i is bounded through
  // bound / q_ii; overall |T| <= S * (|x| + |c| + window)
  Rat max_abs = 0;
  for (int i = 0; i < n; ++i) {
    Rat c = center[i] < 0 ? -center[i] : center[i];
    if (c > max_abs) max_abs = c;
  }
  Rat min_q = q_(0, 0);
  Rat max_q = 0;
  for (int i = 0; i < n; ++i) {
    if (q_(i, i) < min_q) min_q = q_(i, i);
    for (int j = i; j < n; ++j) {
      Rat a = q_(i, j) < 0 ? -q_(i, j) : q_(i, j);
      if (a > max_q) max_q = a;
    }
  }
  if (bound < 0) return true;
  Rat win = bound / min_q + 1;
  // |y_i| <= sqrt(win) + ..., take a crude upper envelope
  Int winr = isqrt(rat_ceil(win)) + 2;
  Rat t_max = Rat(s_int) * (Rat(winr) * (1 + Rat(n) * max_q) + max_abs + 1);
  Rat c_max = Rat(r_den) * max_q * t_max * t_max;
  Int worst = rat_ceil(c_max) * (n + 1);
  if ((int)mpz_sizeinbase(worst.get_mpz_t(), 2) > bits) return false;

  std::vector<std::vector<I>> qs(n, std::vector<int128>(n));  // R * q_ij
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rat v = q_(i, j) * Rat(r_den);
      assert(is_integer(v));
      int128 tmp;
      if (!mpz_to_int128(v.get_num(), tmp)) return false;
      qs[i][j] = (I)tmp;
    }
  std::vector<I> cs(n);  // Dc * c_i
  for (int i = 0; i < n; ++i) {
    Rat v = center[i] * Rat(c_den);
    assert(is_integer(v));
    int128 tmp;
    if (!mpz_to_int128(v.get_num(), tmp)) return false;
    cs[i] = (I)tmp;
  }
  I s128, m128;
  {
    int128 t1, t2;
    if (!mpz_to_int128(s_int, t1) || !mpz_to_int128(m_int, t2)) return false;
    s128 = (I)t1;
    m128 = (I)t2;
  }

  auto scale_bound = [&](const Rat& b) {
    // floor(b * M), exact
    Rat scaled = b * Rat(m_int);
    return rat_floor(scaled);
  };
  I bound128;
  {
    int128 t;
    if (!mpz_to_int128(scale_bound(bound), t)) return false;
    bound128 = (I)t;
  }

  struct ILevel {
    I u;         // scaled by S (= R * Dc): sum_{j>i} (R q_ij) (Dc y_j)
    I alpha;     // scaled by S: S c_i ... - u
    I consumed;  // scaled by M
    long long up, down;
    bool up_open, down_open;
    long long current;
    I current_used;
  };
  std::vector<ILevel> lv(n);
  std::vector<I> y(n, 0);  // Dc * y_j
  ZVec x(n, Int(0));
  std::vector<long long> xi(n, 0);
  long long nodes = 0, found = 0;
  I cden128, rden128;
  {
    int128 t1, t2;
    if (!mpz_to_int128(c_den, t1) || !mpz_to_int128(r_den, t2)) return false;
    cden128 = (I)t1;
    rden128 = (I)t2;
  }

  auto open_level = [&](int i, I consumed) {
    ILevel& f = lv[i];
    I u = 0;
    for (int j = i + 1; j < n; ++j)
      if (y[j] != 0) u += qs[i][j] * y[j];
    f.u = u;
    f.alpha = rden128 * cs[i] - u;  // scaled by S
    f.consumed = consumed;
    // x0 = floor(alpha/S + 1/2) = floor((2 alpha + S) / (2 S))
    I num = 2 * f.alpha + s128;
    I den = 2 * s128;
    I q = num / den;
    if (num % den != 0 && (num < 0) != (den < 0)) --q;
    f.up = (long long)q;
    f.down = f.up - 1;
    f.up_open = true;
    f.down_open = true;
  };

  auto advance = [&](int i) -> bool {
    ILevel& f = lv[i];
    while (f.up_open || f.down_open) {
      if (++nodes > opt.max_nodes) throw BudgetExceeded("enumerate: node budget exceeded");
      bool take_up;
      if (!f.up_open)
        take_up = false;
      else if (!f.down_open)
        take_up = true;
      else {
        I du = (I)f.up * s128 - f.alpha;
        I dd = f.alpha - (I)f.down * s128;
        take_up = du <= dd;
      }
      long long cand = take_up ? f.up : f.down;
      I diff = (I)cand * s128 - f.alpha;  // scaled by S
      I used = f.consumed + qs[i][i] * diff * diff;  // scaled by R*S^2 = M
      if (used > bound128) {
        if (take_up)
          f.up_open = false;
        else
          f.down_open = false;
        continue;
      }
      if (take_up)
        f.up += 1;
      else
        f.down -= 1;
      f.current = cand;
      f.current_used = used;
      return true;
    }
    return false;
  };

  int i = n - 1;
  open_level(i, 0);
  while (true) {
    if (i >= n) return true;
    if (!advance(i)) {
      ++i;
      continue;
    }
    xi[i] = lv[i].current;
    y[i] = (I)xi[i] * cden128 - cs[i];
    if (i == 0) {
      if (++found > opt.max_vectors) throw BudgetExceeded("enumerate: vector budget exceeded");
      Rat dist = Rat(int128_to_mpz((int128)lv[0].current_used)) / Rat(m_int);
      Rat cur_bound = bound;
      Rat nb;
      if (visit64) {
        // transform to the original basis in machine integers
        static thread_local std::vector<long long> out;
        out.assign(n, 0);
        if (!u64_.empty()) {
          for (int j2 = 0; j2 < n; ++j2) {
            long long s = 0;
            for (int t = 0; t < n; ++t) s += xi[t] * u64_[t][j2];
            out[j2] = s;
          }
        } else {
          for (int t = 0; t < n; ++t) x[t] = (long)xi[t];
          QVec xq = mat_vec_left(to_qvec(x), u_);
          for (int j2 = 0; j2 < n; ++j2) out[j2] = to_long(xq[j2].get_num());
        }
        nb = (*visit64)(out.data(), dist, cur_bound);
      } else {
        for (int t = 0; t < n; ++t) x[t] = (long)xi[t];
        nb = (*visit)(x, dist, cur_bound);
      }
      assert(nb <= cur_bound);
      if (nb != cur_bound) {
        bound = nb;
        Int sb = scale_bound(bound);
        int128 t;
        if (!mpz_to_int128(sb, t)) return false;
        bound128 = (I)t;
      }
    } else {
      open_level(i - 1, lv[i].current_used);
      --i;
    }
  }
}


bool Enumerator::enumerate_dynamic_int(
    const QVec& center, Rat bound,
    const std::function<Rat(const ZVec&, const Rat&, const Rat&)>* visit,
    const std::function<Rat(const long long*, const Rat&, const Rat&)>* visit64,
    const EnumerateOptions& opt) const {
  if (enumerate_dynamic_typed<long long>(center, bound, 61, visit, visit64, opt)) return true;
  return enumerate_dynamic_typed<int128>(center, bound, 100, visit, visit64, opt);
}

// Core traversal shared by all queries.  `visit` may lower the bound (return
// value) which prunes the remaining tree; returning the passed bound keeps it.
void Enumerator::enumerate_dynamic(
    const QVec& center, Rat bound,
    const std::function<Rat(const ZVec&, const Rat&, const Rat&)>& visit,
    const EnumerateOptions& opt) const {
  int n = l_.rank;
  if (bound < 0) return;
  if (n == 0) {
    visit(ZVec{}, Rat(0), bound);
    return;
  }
  assert(int(center.size()) == n);
  // work in the LLL-reduced basis; translate points back on the way out
  QVec center_red = mat_vec_left(center, u_inv_);
  ZVec out(n);
  auto emit = [&](const ZVec& xr, const Rat& d, const Rat& b) -> Rat {
    if (!u64_.empty()) {
      bool small = true;
      long long xi[64];
      for (int i = 0; i < n; ++i) {
        if (!xr[i].fits_slong_p()) {
          small = false;
          break;
        }
        xi[i] = xr[i].get_si();
      }
      if (small) {
        for (int j = 0; j < n; ++j) {
          long long s = 0;
          for (int i = 0; i < n; ++i) s += xi[i] * u64_[i][j];
          out[j] = (long)s;
        }
        return visit(out, d, b);
      }
    }
    QVec xq = mat_vec_left(to_qvec(xr), u_);
    return visit(to_zvec(xq), d, b);
  };
  std::function<Rat(const ZVec&, const Rat&, const Rat&)> emit_fn = emit;
  if (enumerate_dynamic_int(center_red, bound, &emit_fn, nullptr, opt)) return;

  std::vector<Level> lv(n);
  std::vector<Rat> y(n, Rat(0));
  ZVec x(n, Int(0));
  long long nodes = 0, found = 0;

  auto open_level = [&](int i, const Rat& consumed) {
    Level& f = lv[i];
    Rat u = 0;
    for (int j = i + 1; j < n; ++j)
      if (y[j] != 0) u += q_(i, j) * y[j];
    f.u = u;
    f.alpha = center_red[i] - u;
    f.consumed = consumed;
    Int x0 = rat_floor(f.alpha + Rat(1, 2));
    f.up = x0;
    f.down = x0 - 1;
    f.up_open = true;
    f.down_open = true;
    f.has_current = false;
  };

  // Advances level i to its next candidate within the current bound.
  auto advance = [&](int i) -> bool {
    Level& f = lv[i];
    while (f.up_open || f.down_open) {
      if (++nodes > opt.max_nodes) throw BudgetExceeded("enumerate: node budget exceeded");
      bool take_up;
      if (!f.up_open)
        take_up = false;
      else if (!f.down_open)
        take_up = true;
      else {
        Rat du = Rat(f.up) - f.alpha;
        Rat dd = f.alpha - Rat(f.down);
        take_up = du <= dd;
      }
      Int cand = take_up ? f.up : f.down;
      Rat diff = Rat(cand) - f.alpha;
      Rat used = f.consumed + q_(i, i) * diff * diff;
      if (used > bound) {
        if (take_up)
          f.up_open = false;
        else
          f.down_open = false;
        continue;
      }
      if (take_up)
        f.up += 1;
      else
        f.down -= 1;
      f.has_current = true;
      f.current = cand;
      f.current_used = used;
      return true;
    }
    return false;
  };

  int i = n - 1;
  open_level(i, Rat(0));
  while (true) {
    if (i >= n) return;
    if (!advance(i)) {
      ++i;
      continue;
    }
    x[i] = lv[i].current;
    y[i] = Rat(x[i]) - center_red[i];
    if (i == 0) {
      if (++found > opt.max_vectors) throw BudgetExceeded("enumerate: vector budget exceeded");
      Rat nb = emit(x, lv[0].current_used, bound);
      assert(nb <= bound);
      bound = nb;
    } else {
      open_level(i - 1, lv[i].current_used);
      --i;
    }
  }
}

void Enumerator::enumerate(const QVec& center, const Rat& radius_sq,
                           const std::function<void(const ZVec&, const Rat&)>& visit,
                           const EnumerateOptions& opt) const {
  enumerate_dynamic(
      center, radius_sq,
      [&](const ZVec& x, const Rat& d, const Rat& b) {
        visit(x, d);
        return b;
      },
      opt);
}

void Enumerator::enumerate64(const QVec& center, const Rat& radius_sq,
                             const std::function<void(const long long*, const Rat&)>& visit,
                             const EnumerateOptions& opt) const {
  int n = l_.rank;
  if (radius_sq < 0) return;
  if (n == 0) {
    long long none = 0;
    visit(&none, Rat(0));
    return;
  }
  QVec center_red = mat_vec_left(center, u_inv_);
  std::function<Rat(const long long*, const Rat&, const Rat&)> emit64 =
      [&](const long long* x, const Rat& d, const Rat& b) {
        visit(x, d);
        return b;
      };
  if (enumerate_dynamic_int(center_red, radius_sq, nullptr, &emit64, opt)) return;
  // rational fallback with conversion
  enumerate_dynamic(
      center, radius_sq,
      [&](const ZVec& x, const Rat& d, const Rat& b) {
        static thread_local std::vector<long long> buf;
        buf.resize(x.size());
        for (size_t i = 0; i < x.size(); ++i) buf[i] = to_long(x[i]);
        visit(buf.data(), d);
        return b;
      },
      opt);
}

std::vector<VectorShell> Enumerator::shells(const QVec& center, const Rat& radius_sq,
                                            const EnumerateOptions& opt) const {
  std::map<Rat, std::vector<ZVec>> by_norm;
  enumerate(center, radius_sq,
            [&](const ZVec& x, const Rat& d) { by_norm[d].push_back(x); }, opt);
  std::vector<VectorShell> out;
  for (auto& [d, vecs] : by_norm) {
    std::sort(vecs.begin(), vecs.end());
    out.push_back(VectorShell{d, std::move(vecs)});
  }
  return out;
}

std::map<Rat, long long> Enumerator::shell_counts(const QVec& center, const Rat& radius_sq,
                                                  const EnumerateOptions& opt) const {
  std::map<Rat, long long> counts;
  enumerate(center, radius_sq, [&](const ZVec&, const Rat& d) { ++counts[d]; }, opt);
  return counts;
}

Rat Enumerator::babai_bound(const QVec& center) const {
  int n = l_.rank;
  QVec c = mat_vec_left(center, u_inv_);
  QVec y(n);
  ZVec x0(n);
  for (int i = n - 1; i >= 0; --i) {
    Rat u = 0;
    for (int j = i + 1; j < n; ++j) u += q_(i, j) * y[j];
    Rat alpha = c[i] - u;
    x0[i] = rat_floor(alpha + Rat(1, 2));
    y[i] = Rat(x0[i]) - c[i];
  }
  QVec diff(n);
  for (int i = 0; i < n; ++i) diff[i] = Rat(x0[i]) - c[i];
  return red_.norm(diff);
}

VectorShell Enumerator::closest(const QVec& center, const EnumerateOptions& opt) const {
  VectorShell out;
  if (l_.rank == 0) {
    out.norm_sq = 0;
    out.vectors.push_back(ZVec{});
    return out;
  }
  Rat bound = babai_bound(center);
  out.norm_sq = bound;
  enumerate_dynamic(
      center, bound,
      [&](const ZVec& x, const Rat& d, const Rat& b) {
        if (d < out.norm_sq) {
          out.norm_sq = d;
          out.vectors.clear();
        }
        if (d == out.norm_sq) out.vectors.push_back(x);
        (void)b;
        return out.norm_sq;  // shrink: keep enumerating ties at the minimum
      },
      opt);
  std::sort(out.vectors.begin(), out.vectors.end());
  return out;
}

Rat Enumerator::min_distance_sq(const QVec& center, const EnumerateOptions& opt) const {
  if (l_.rank == 0) return 0;
  Rat best = babai_bound(center);
  enumerate_dynamic(
      center, best,
      [&](const ZVec&, const Rat& d, const Rat&) {
        if (d < best) best = d;
        return best;
      },
      opt);
  return best;
}

std::vector<VectorShell> enumerate_shells(const Lattice& l, const QVec& center,
                                          const Rat& radius_sq, const EnumerateOptions& opt) {
  return Enumerator(l).shells(center, radius_sq, opt);
}

std::vector<VectorShell> short_vectors(const Lattice& l, const Rat& radius_sq,
                                       const EnumerateOptions& opt) {
  QVec zero(l.rank, Rat(0));
  auto all = Enumerator(l).shells(zero, radius_sq, opt);
  std::vector<VectorShell> out;
  for (auto& sh : all) {
    if (sh.norm_sq == 0) continue;  // drop the origin shell
    out.push_back(std::move(sh));
  }
  return out;
}

VectorShell closest_vectors(const Lattice& l, const QVec& center, const EnumerateOptions& opt) {
  return Enumerator(l).closest(center, opt);
}

ReducedLattice lll_reduce(const Lattice& l) {
  if (l.det() == 0) throw DomainError("lll_reduce: singular lattice");
  QMat reduced;
  QMat u = lll_gram(l.gram, &reduced);
  return ReducedLattice{Lattice(reduced, l.label), u};
}

}  // namespace hyperlat
