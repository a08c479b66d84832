#include "hyperlat/hyperbolic.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "hyperlat/lattice.hpp"
#include "hyperlat/standard_lattices.hpp"

namespace hyperlat {

namespace {

QVec normalize_ray(QVec v) {
  // scale to integral primitive with positive leading entry
  Int den = 1;
  for (auto& c : v) {
    Int g;
    mpz_lcm(g.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    den = g;
  }
  Int gcd = 0;
  for (auto& c : v) {
    Int num = c.get_num() * (den / c.get_den());
    Int g;
    mpz_gcd(g.get_mpz_t(), gcd.get_mpz_t(), num.get_mpz_t());
    gcd = g;
  }
  if (gcd == 0) return v;
  for (auto& c : v) c = c * Rat(den) / Rat(gcd);
  return v;
}

}  // namespace

std::vector<QVec> cone_extreme_rays(const std::vector<QVec>& functionals, int dim) {
  // rank check: lineality space must be trivial
  {
    QMat a(int(functionals.size()), dim);
    for (size_t i = 0; i < functionals.size(); ++i)
      for (int j = 0; j < dim; ++j) a(int(i), j) = functionals[i][j];
    if (a.rank() < dim) return {};
  }
  // start from a simplicial subcone of the first dim independent functionals
  std::vector<int> first;
  {
    QMat acc(0, 0);
    std::vector<QVec> rows;
    for (size_t i = 0; i < functionals.size() && int(first.size()) < dim; ++i) {
      rows.push_back(functionals[i]);
      QMat m(int(rows.size()), dim);
      for (size_t r = 0; r < rows.size(); ++r)
        for (int j = 0; j < dim; ++j) m(int(r), j) = rows[r][j];
      if (m.rank() == int(rows.size()))
        first.push_back(int(i));
      else
        rows.pop_back();
    }
  }
  QMat a0(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int j = 0; j < dim; ++j) a0(r, j) = functionals[first[r]][j];
  auto inv = a0.inverse();
  assert(inv);
  // rays of {x : a0 x <= 0} are the negated columns of a0^-1
  std::vector<QVec> rays;
  for (int c = 0; c < dim; ++c) {
    QVec ray(dim);
    for (int r = 0; r < dim; ++r) ray[r] = -(*inv)(r, c);
    rays.push_back(normalize_ray(ray));
  }
  auto dot = [&](const QVec& f, const QVec& x) {
    Rat s = 0;
    for (int j = 0; j < dim; ++j) s += f[j] * x[j];
    return s;
  };
  // incremental double description
  for (size_t fi = 0; fi < functionals.size(); ++fi) {
    if (std::find(first.begin(), first.end(), int(fi)) != first.end()) continue;
    const QVec& f = functionals[fi];
    std::vector<QVec> pos, neg, zero;
    for (auto& r : rays) {
      Rat d = dot(f, r);
      if (d > 0)
        pos.push_back(r);
      else if (d < 0)
        neg.push_back(r);
      else
        zero.push_back(r);
    }
    if (pos.empty()) continue;  // nothing cut
    std::vector<QVec> next = neg;
    for (auto& z : zero) next.push_back(z);
    // adjacency: combine each (pos, neg) pair if no other ray is active on
    // all their common active constraints
    auto active_set = [&](const QVec& r) {
      std::set<size_t> s;
      for (size_t gi = 0; gi <= fi; ++gi)
        if (dot(functionals[gi], r) == 0) s.insert(gi);
      return s;
    };
    std::vector<std::set<size_t>> ray_active;
    for (auto& r : rays) ray_active.push_back(active_set(r));
    for (size_t p = 0; p < rays.size(); ++p) {
      if (dot(f, rays[p]) <= 0) continue;
      for (size_t q = 0; q < rays.size(); ++q) {
        Rat dq = dot(f, rays[q]);
        if (dq >= 0) continue;
        std::set<size_t> common;
        for (size_t x : ray_active[p])
          if (ray_active[q].count(x)) common.insert(x);
        bool adjacent = true;
        for (size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == q) continue;
          bool covers = true;
          for (size_t x : common)
            if (dot(functionals[x], rays[o]) != 0) covers = false;
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        Rat dp = dot(f, rays[p]);
        QVec mix(dim);
        for (int j = 0; j < dim; ++j) mix[j] = dp * rays[q][j] - dq * rays[p][j];
        next.push_back(normalize_ray(mix));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays = std::move(next);
  }
  return rays;
}

bool finite_volume(const Lattice& l, const std::vector<ZVec>& roots) {
  int n = l.rank;
  std::vector<QVec> functionals;
  for (const auto& r : roots) {
    QVec f(n, Rat(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f[i] += l.gram(i, j) * Rat(r[j]);
    functionals.push_back(f);
  }
  auto rays = cone_extreme_rays(functionals, n);
  if (rays.empty()) return false;
  for (const auto& y : rays)
    if (l.norm(y) > 0) return false;
  return true;
}

VinbergRun vinberg(const Lattice& l, const QVec& controlling, const VinbergOptions& opt) {
  if (!l.is_lorentzian()) throw DomainError("vinberg: Lorentzian lattice required");
  Rat w_norm = l.norm(controlling);
  if (w_norm >= 0) throw DomainError("vinberg: controlling vector must have negative norm");
  int n = l.rank;

  VinbergRun run;
  run.controlling = controlling;
  run.termination = VinbergRun::Termination::distance_budget;

  // crystallographic condition: 2 (r, x) / r^2 integral for all basis x
  auto is_root = [&](const ZVec& r, const Rat& q) {
    for (int i = 0; i < n; ++i) {
      Rat s = 0;
      for (int j = 0; j < n; ++j) s += l.gram(i, j) * Rat(r[j]);
      if (!is_integer(2 * s / q)) return false;
    }
    return true;
  };
  auto pair_ok = [&](const ZVec& r) {
    QVec rq = to_qvec(r);
    for (const auto& s : run.simple_roots)
      if (l.inner(rq, to_qvec(s)) > 0) return false;
    return true;
  };

  // the definite complement of the controlling vector
  QMat col(n, 1);
  for (int i = 0; i < n; ++i) {
    Rat s = 0;
    for (int j = 0; j < n; ++j) s += l.gram(i, j) * controlling[j];
    col(i, 0) = s;
  }
  Int cden = col.denominator();
  for (int i = 0; i < n; ++i) col(i, 0) *= Rat(cden);
  QMat perp = integer_kernel(col);  // (n-1) x n
  Lattice perp_lat(perp * l.gram * perp.transpose());
  assert(perp_lat.is_positive_definite());
  Enumerator perp_en(perp_lat);

  // step 0: roots orthogonal to the controlling vector form a finite system
  {
    std::vector<ZVec> step0;
    for (const auto& q : opt.root_norms) {
      auto shells = short_vectors(perp_lat, q);
      for (auto& sh : shells) {
        if (sh.norm_sq != q) continue;
        for (auto& y : sh.vectors) {
          QVec amb = mat_vec_left(to_qvec(y), perp);
          ZVec r = to_zvec(amb);
          if (is_root(r, q)) step0.push_back(r);
        }
      }
    }
    RootSystem rs = analyze_root_set(l, step0);
    for (auto& r : rs.simple) {
      run.simple_roots.push_back(r);
      run.distance_keys.push_back(0);
    }
  }

  // batches in increasing distance -(r,w)/r^2: solve (r,w) = -k on the
  // affine slice over the definite complement
  std::vector<std::pair<Rat, std::pair<Rat, Int>>> agenda;  // key -> (q, k)
  for (const auto& q : opt.root_norms) {
    for (Int k = 1;; k += 1) {
      Rat key = Rat(k) / q;
      if (key > opt.max_distance) break;
      agenda.push_back({key, {q, k}});
    }
  }
  std::sort(agenda.begin(), agenda.end());

  // particular solution x0 of (x, w)*den = -k*den over the integers
  // (x, w) = (col . x) / cden
  ZVec col_int(n);
  for (int i = 0; i < n; ++i) col_int[i] = col(i, 0).get_num();
  Int g = 0;
  ZVec bez(n, Int(0));
  for (int i = 0; i < n; ++i) {
    Int t, s0, s1;
    mpz_gcdext(t.get_mpz_t(), s0.get_mpz_t(), s1.get_mpz_t(), g.get_mpz_t(),
               col_int[i].get_mpz_t());
    for (int j = 0; j < i; ++j) bez[j] *= s0;
    bez[i] = s1;
    g = t;
  }

  for (auto& [key, qk] : agenda) {
    if (int(run.simple_roots.size()) >= opt.max_roots) {
      run.termination = VinbergRun::Termination::root_budget;
      return run;
    }
    auto [q, k] = qk;
    // solvability: g | k * cden
    Rat rhs = -Rat(k) * Rat(cden);
    if (!is_integer(rhs / Rat(g))) continue;
    Int mult = rat_floor(rhs / Rat(g));
    QVec x0(n);
    for (int i = 0; i < n; ++i) x0[i] = Rat(bez[i] * mult);
    // slice: x = x0 + y * perp; norm: (x0 + y perp)^2 = q
    // expand: y Gp y^T + 2 y (perp G x0^T) + x0^2 = q
    QVec cross(n - 1);
    for (int i = 0; i < n - 1; ++i) {
      QVec row(n);
      for (int j = 0; j < n; ++j) row[j] = perp(i, j);
      cross[i] = l.inner(row, x0);
    }
    // complete the square: with Gp c^T = -cross^T the slice norm becomes
    // (x0 + y perp)^2 = x0^2 - c Gp c^T + |y - c|^2_Gp
    auto gp_inv = perp_lat.gram.inverse();
    assert(gp_inv);
    QVec center = mat_vec_left(scale(Rat(-1), cross), *gp_inv);
    Rat radius = q - l.norm(x0) + perp_lat.norm(center);
    if (radius < 0) continue;
    std::vector<ZVec> batch;
    perp_en.enumerate(center, radius, [&](const ZVec& y, const Rat& d) {
      if (d != radius) return;  // exact shell
      QVec amb = x0;
      for (int i = 0; i < n - 1; ++i)
        if (y[i] != 0)
          for (int j = 0; j < n; ++j) amb[j] += Rat(y[i]) * perp(i, j);
      ZVec r = to_zvec(amb);
      if (!is_root(r, q)) return;
      batch.push_back(r);
    });
    std::sort(batch.begin(), batch.end());
    for (auto& r : batch) {
      if (int(run.simple_roots.size()) >= opt.max_roots) {
        run.termination = VinbergRun::Termination::root_budget;
        return run;
      }
      if (!pair_ok(r)) continue;
      run.simple_roots.push_back(r);
      run.distance_keys.push_back(key);
      if (finite_volume(l, run.simple_roots)) {
        run.termination = VinbergRun::Termination::finite_volume;
        run.finite_volume_proven = true;
        return run;
      }
    }
  }
  return run;
}

DiagramShape diagram_shape(const Lattice& l, const std::vector<ZVec>& roots) {
  DiagramShape d;
  d.nodes = int(roots.size());
  d.adjacency.assign(d.nodes, std::vector<int>(d.nodes, 0));
  for (int i = 0; i < d.nodes; ++i)
    for (int j = 0; j < d.nodes; ++j)
      if (i != j) {
        Rat b = -l.inner(to_qvec(roots[i]), to_qvec(roots[j]));
        d.adjacency[i][j] = int(b.get_num().get_si());
      }
  // tree-shape analysis for simply laced diagrams
  bool simple = true;
  std::vector<std::vector<int>> adj(d.nodes);
  for (int i = 0; i < d.nodes; ++i)
    for (int j = 0; j < d.nodes; ++j)
      if (i != j && d.adjacency[i][j] != 0) {
        if (d.adjacency[i][j] != 1) simple = false;
        adj[i].push_back(j);
      }
  if (!simple) return d;
  int branch = -1;
  for (int i = 0; i < d.nodes; ++i) {
    if (adj[i].size() > 3) return d;
    if (adj[i].size() == 3) {
      if (branch >= 0) return d;
      branch = i;
    }
  }
  if (branch < 0) return d;
  std::vector<int> legs;
  for (int s : adj[branch]) {
    int len = 1, prev = branch, cur = s;
    while (true) {
      int next = -1;
      for (int w : adj[cur])
        if (w != prev) {
          if (next >= 0) return d;  // second branch: not a T shape
          next = w;
        }
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  d.tree_legs = legs;
  return d;
}

// ---------------------------------------------------------------------------

LeechModel::LeechModel(Lattice leech_gram)
    : leech_(std::move(leech_gram)),
      full_(direct_sum(leech_, hyperbolic_plane())),
      en_(leech_) {
  if (!leech_.is_even() || leech_.det() != 1 || leech_.rank % 8 != 0)
    throw DomainError("LeechModel: even unimodular definite gram required");
}

QVec LeechModel::make(const QVec& lambda, const Rat& m, const Rat& n) const {
  QVec v(dim(), Rat(0));
  for (int i = 0; i < leech_.rank; ++i) v[i] = lambda[i];
  v[leech_.rank] = m;
  v[leech_.rank + 1] = n;
  return v;
}

QVec LeechModel::lambda_part(const QVec& v) const {
  QVec out(leech_.rank);
  for (int i = 0; i < leech_.rank; ++i) out[i] = v[i];
  return out;
}

QVec LeechModel::weyl_w() const { return make(QVec(leech_.rank, Rat(0)), 0, 1); }

QVec LeechModel::simple_root(const QVec& lambda) const {
  Rat n = leech_.norm(lambda) / 2 - 1;
  return make(lambda, 1, n);
}

std::vector<QVec> LeechModel::r_set(const QVec& u, int i) const {
  Rat a = height(u);
  if (a <= 0) throw DomainError("r_set: u must have positive height");
  Rat u2 = norm(u);
  if (u2 == 0 && lambda_part(u) == QVec(leech_.rank, Rat(0)))
    throw DomainError("r_set: u is a multiple of w");
  QVec center = scale(1 / a, lambda_part(u));
  Rat radius = 2 + u2 / (a * a) + Rat(2 * i) / a;
  if (radius < 0) return {};
  std::vector<QVec> out;
  en_.enumerate(center, radius, [&](const ZVec& x, const Rat& d) {
    if (d != radius) return;
    out.push_back(simple_root(to_qvec(x)));
  });
  return out;
}

std::vector<QVec> LeechModel::norm0_vectors(const QVec& u, int i) const {
  Rat t = height(u);
  Rat u2 = norm(u);
  if (u2 >= 0) throw DomainError("norm0_vectors: u must have negative norm");
  std::vector<QVec> out;
  // multiples of w: -(k w, u) = k t
  if (i > 0 && t > 0 && is_integer(Rat(i) / t)) {
    Rat k = Rat(i) / t;
    out.push_back(make(QVec(leech_.rank, Rat(0)), 0, k));
  }
  // z = (lambda, a, lambda^2 / 2a): sphere of squared radius
  // u^2 a^2/t^2 + 2 i a / t around (a/t) * lambda_u
  for (Int a = 1;; a += 1) {
    Rat radius = u2 * Rat(a * a) / (t * t) + Rat(2 * i) * Rat(a) / t;
    if (radius < 0) break;
    QVec center = scale(Rat(a) / t, lambda_part(u));
    en_.enumerate(center, radius, [&](const ZVec& x, const Rat& d) {
      if (d != radius) return;
      QVec lam = to_qvec(x);
      Rat nn = leech_.norm(lam) / (2 * Rat(a));
      out.push_back(make(lam, Rat(a), nn));
    });
  }
  for (auto& z : out) assert(norm(z) == 0 && -inner(z, u) == i);
  return out;
}

long long LeechModel::norm0_count(const QVec& u, int i) const {
  Rat t = height(u);
  Rat u2 = norm(u);
  if (u2 >= 0) throw DomainError("norm0_count: u must have negative norm");
  long long count = 0;
  if (i > 0 && t > 0 && is_integer(Rat(i) / t)) ++count;
  for (Int a = 1;; a += 1) {
    Rat radius = u2 * Rat(a * a) / (t * t) + Rat(2 * i) * Rat(a) / t;
    if (radius < 0) break;
    QVec center = scale(Rat(a) / t, lambda_part(u));
    en_.enumerate(center, radius, [&](const ZVec&, const Rat& d) {
      if (d == radius) ++count;
    });
  }
  return count;
}

int LeechModel::vector_type(const QVec& u, int cap) const {
  if (norm(u) == 0) return 0;
  if (norm(u) > 0) throw DomainError("vector_type: norm must be <= 0");
  for (int i = 1; i <= cap; ++i)
    if (norm0_count(u, i) > 0) return i;
  return cap + 1;  // reported as "> cap"
}

bool LeechModel::in_domain(const QVec& v) const {
  Rat a = height(v);
  if (a < 0) return false;
  if (a == 0) return lambda_part(v) == QVec(leech_.rank, Rat(0));
  // no Leech point strictly inside the sphere of squared radius v^2/a^2 + 2
  QVec center = scale(1 / a, lambda_part(v));
  Rat radius = norm(v) / (a * a) + 2;
  Rat min = en_.min_distance_sq(center);
  return min >= radius;
}

std::pair<QVec, int> LeechModel::reduce_to_domain(const QVec& v_in, unsigned tie_choice) const {
  QVec v = v_in;
  if (height(v) < 0) throw DomainError("reduce_to_domain: wrong cone");
  int words = 0;
  while (true) {
    Rat a = height(v);
    if (a == 0) {
      if (lambda_part(v) == QVec(leech_.rank, Rat(0))) return {v, words};
      throw DomainError("reduce_to_domain: height-zero vector off the w ray");
    }
    QVec center = scale(1 / a, lambda_part(v));
    Rat radius = norm(v) / (a * a) + 2;
    auto cl = en_.closest(center);
    if (cl.norm_sq >= radius) return {v, words};
    const ZVec& pick = cl.vectors[tie_choice % cl.vectors.size()];
    QVec r = simple_root(to_qvec(pick));
    Rat ip = inner(v, r);
    assert(ip > 0);
    for (int i = 0; i < dim(); ++i) v[i] -= ip * r[i];
    ++words;
    if (words > 100000) throw BudgetExceeded("reduce_to_domain: word budget");
  }
}

Lattice LeechModel::norm0_classify(const QVec& z) const {
  auto q = isotropic_quotient(full_, z);
  return lll_reduce(q.lattice).lattice;
}

std::optional<QVec> LeechModel::z_map(const QVec& u) const {
  Rat m = m_of(u);
  if (m == 0) {
    if (lambda_part(u) == QVec(leech_.rank, Rat(0))) return std::nullopt;  // infinity
    throw DomainError("z_map: undefined for height-zero vectors off the w ray");
  }
  return scale(1 / m, lambda_part(u));
}

}  // namespace hyperlat
