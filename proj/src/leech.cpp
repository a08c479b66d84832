#include "hyperlat/leech.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>

#include "hyperlat/standard_lattices.hpp"

namespace hyperlat {

NiemeierRecord make_niemeier_record(const Lattice& n24) {
  if (n24.rank != 24 || !n24.is_even() || n24.det() != 1)
    throw DomainError("make_niemeier_record: even unimodular rank-24 lattice required");
  NiemeierRecord rec;
  rec.lattice = n24;
  RootSystem rs = identify_roots(n24);
  rec.datum = rs.datum;
  if (rs.datum.empty()) {
    rec.coxeter = 0;
    rec.weyl_vector = QVec(24, Rat(0));
    rec.glue_count = 1;
    return rec;
  }
  if (rs.datum.rank() != 24)
    throw DomainError("make_niemeier_record: root system must have rank 0 or 24");
  int h = rs.components[0].coxeter;
  for (const auto& c : rs.components)
    if (c.coxeter != h)
      throw DomainError("make_niemeier_record: components with unequal Coxeter numbers");
  rec.coxeter = h;
  rec.weyl_vector = rs.rho;
  for (const auto& c : rec.weyl_vector)
    if (!is_integer(c)) throw DomainError("make_niemeier_record: Weyl vector is not in N");
  // 24 h roots and rho^2 = 2h(h+1)
  assert((long long)rs.roots.size() == 24LL * h);
  assert(rs.rho_norm == Rat(2 * h) * Rat(h + 1));
  QMat s(24, 24);
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) s(i, j) = Rat(rs.simple[i][j]);
  Rat det_r = (s * n24.gram * s.transpose()).det();
  Int root;
  bool sq = is_square(det_r.get_num(), &root);
  assert(sq && det_r.get_den() == 1);
  rec.glue_count = root;
  return rec;
}

NiemeierRecord halve_step(const NiemeierRecord& n) {
  if (n.coxeter == 0) throw DomainError("halve_step: lattice has no roots");
  Lattice big = direct_sum(n.lattice, hyperbolic_plane());
  QVec w(26, Rat(0));
  for (int i = 0; i < 24; ++i) w[i] = n.weyl_vector[i];
  w[24] = n.coxeter;
  w[25] = n.coxeter + 1;
  assert(big.norm(w) == 0);
  auto q = isotropic_quotient(big, w);
  Lattice next = lll_reduce(q.lattice).lattice;
  NiemeierRecord rec = make_niemeier_record(next);
  assert(2 * rec.coxeter <= n.coxeter);
  return rec;
}

Lattice leech_by_halving(const Lattice& seed_niemeier) {
  NiemeierRecord rec = make_niemeier_record(seed_niemeier);
  while (rec.coxeter > 0) rec = halve_step(rec);
  return rec.lattice;
}

const Lattice& leech_lattice() {
  static Lattice cached = [] {
    auto nb = even_neighbors(identity_lattice(24));
    Lattice lam = leech_by_halving(nb.first);
    lam.label = "leech";
    return lam;
  }();
  return cached;
}

Lattice leech_from_small(const Lattice& a1) {
  if (a1.rank > 23 || abs(a1.det()) != 1)
    throw DomainError("leech_from_small: unimodular lattice of dimension <= 23 required");
  {
    auto units = short_vectors(a1, 1);
    if (!units.empty() && a1.rank > 0)
      throw DomainError("leech_from_small: input must have no norm-1 vectors");
  }
  int n = 25 - a1.rank;
  Lattice a = a1.rank ? direct_sum(a1, identity_lattice(n)) : identity_lattice(25);
  RootSystem rs = identify_roots(a);
  Rat rho2 = rs.rho_norm;
  Int root;
  if (!is_integer(rho2) || !is_square(rho2.get_num(), &root))
    throw DomainError("leech_from_small: Weyl vector norm is not a perfect square");
  Lattice l = direct_sum(a, rescale(identity_lattice(1), -1));
  QVec w(26, Rat(0));
  for (int i = 0; i < 25; ++i) w[i] = rs.rho[i];
  w[25] = Rat(root);
  assert(l.norm(w) == 0);
  auto nb = even_neighbors(l);
  // w lies in the even sublattice and hence in both neighbors
  auto coords = nb.first_basis.solve_left(w);
  assert(coords);
  ZVec wz = to_zvec(*coords);
  auto q = isotropic_quotient(nb.first, to_qvec(primitive_part(wz)));
  return lll_reduce(q.lattice).lattice;
}

HolyConstruction holy_construction(const NiemeierRecord& n) {
  if (n.coxeter == 0) throw DomainError("holy_construction: rooted Niemeier lattice required");
  RootSystem rs = identify_roots(n.lattice);
  ExtendedDiagram ext = extended_diagram(rs);
  HolyConstruction out;
  for (const auto& node : ext.nodes) out.f.push_back(to_qvec(node));
  // glue vectors: v - rho/h at squared distance exactly 2(1 + 1/h)
  Rat h(n.coxeter);
  QVec center = scale(1 / h, n.weyl_vector);
  Rat radius = 2 * (1 + 1 / h);
  Enumerator en(n.lattice);
  en.enumerate(center, radius, [&](const ZVec& v, const Rat& d) {
    if (d != radius) return;
    out.g.push_back(sub(to_qvec(v), center));
  });
  out.glue_count = Int((long)out.g.size());
  if (out.glue_count != n.glue_count)
    throw DomainError("holy_construction: wrong number of glue vectors");
  // span of all x - f_0 for x among f's and g's
  std::vector<QVec> gens;
  const QVec& base = out.f.front();
  for (const auto& x : out.f) gens.push_back(sub(x, base));
  for (const auto& x : out.g) gens.push_back(sub(x, base));
  Int den = 1;
  for (const auto& v : gens)
    for (const auto& c : v) {
      Int g2;
      mpz_lcm(g2.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
      den = g2;
    }
  QMat stack(int(gens.size()), 24);
  for (size_t i = 0; i < gens.size(); ++i)
    for (int j = 0; j < 24; ++j) stack(int(i), j) = gens[i][j] * Rat(den);
  QMat hh = hnf(stack);
  assert(hh.rows() == 24);
  QMat basis(24, 24);
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) basis(i, j) = hh(i, j) / Rat(den);
  Lattice lam(basis * n.lattice.gram * basis.transpose());
  out.result = lll_reduce(lam).lattice;
  return out;
}

HoleRecord deep_hole_of(const NiemeierRecord& n) {
  if (n.coxeter == 0) throw DomainError("deep_hole_of: rooted Niemeier lattice required");
  Lattice big = direct_sum(n.lattice, hyperbolic_plane());
  int h = n.coxeter;
  QVec w(26, Rat(0));
  for (int i = 0; i < 24; ++i) w[i] = n.weyl_vector[i];
  w[24] = h;
  w[25] = h + 1;
  auto q = isotropic_quotient(big, w);  // Leech copy w^perp / w
  HoleRecord rec;
  rec.niemeier_datum = n.datum.to_string();
  rec.leech_copy = q.lattice;
  // z0 = (0 | 0, 1) decomposes as k + (h+1) w + h w' with k in w^perp;
  // its image in the quotient, divided by the height h, is the hole center
  QVec z0(26, Rat(0));
  z0[25] = 1;
  QVec wp(26, Rat(0));  // w' = (rho, h+1, h), the partner isotropic vector
  for (int i = 0; i < 24; ++i) wp[i] = n.weyl_vector[i];
  wp[24] = h + 1;
  wp[25] = h;
  QVec k = z0;
  for (int i = 0; i < 26; ++i) k[i] -= Rat(h + 1) * w[i] + Rat(h) * wp[i];
  // coordinates of k in the quotient: solve against the lift plus w
  QMat lift_w(q.lattice.rank + 1, 26);
  for (int i = 0; i < q.lattice.rank; ++i)
    for (int j = 0; j < 26; ++j) lift_w(i, j) = q.lift(i, j);
  for (int j = 0; j < 26; ++j) lift_w(q.lattice.rank, j) = w[j];
  auto coords = lift_w.solve_left(k);
  assert(coords);
  QVec center(q.lattice.rank);
  for (int i = 0; i < q.lattice.rank; ++i) center[i] = (*coords)[i] / Rat(h);
  rec.center = center;
  Enumerator en(q.lattice);
  auto cl = en.closest(center);
  rec.radius_sq = cl.norm_sq;
  rec.vertices = cl.vectors;
  // vertex diagram: bonds -(r,s) = |x - y|^2 / 2 - 1 between hole vertices
  {
    int m = int(cl.vectors.size());
    std::vector<std::vector<int>> adj(m);
    QMat bonds(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        QVec diff(q.lattice.rank);
        for (int t = 0; t < q.lattice.rank; ++t)
          diff[t] = Rat(cl.vectors[i][t]) - Rat(cl.vectors[j][t]);
        Rat b = q.lattice.norm(diff) / 2 - 2;
        bonds(i, j) = b;
        if (b != 0) adj[i].push_back(j);
      }
    // components are affine diagrams; delete a weight-1 node to classify
    std::vector<int> comp(m, -1);
    int nc = 0;
    for (int i = 0; i < m; ++i) {
      if (comp[i] >= 0) continue;
      std::vector<int> stack{i};
      comp[i] = nc;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v])
          if (comp[u] < 0) {
            comp[u] = nc;
            stack.push_back(u);
          }
      }
      ++nc;
    }
    for (int c = 0; c < nc; ++c) {
      std::vector<int> nodes;
      for (int i = 0; i < m; ++i)
        if (comp[i] == c) nodes.push_back(i);
      // null weights: kernel of the component bond Gram (as root vectors)
      int s = int(nodes.size());
      QMat g(s, s);
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) g(a, b) = a == b ? Rat(2) : -bonds(nodes[a], nodes[b]);
      QMat ker = integer_kernel(QMat(g));
      assert(ker.rows() == 1);
      // delete one node of weight +-1 and classify the finite remainder
      int del = -1;
      for (int a = 0; a < s; ++a)
        if (abs(ker(0, a)) == 1) del = a;
      assert(del >= 0);
      QMat sub_g(s - 1, s - 1);
      int ar = 0;
      for (int a = 0; a < s; ++a) {
        if (a == del) continue;
        int bc = 0;
        for (int b = 0; b < s; ++b) {
          if (b == del) continue;
          sub_g(ar, bc) = g(a, b);
          ++bc;
        }
        ++ar;
      }
      rec.vertex_datum.add(identify_roots(Lattice(sub_g)).datum);
    }
  }
  return rec;
}

std::vector<HoleRecord> deep_holes(const std::vector<NiemeierRecord>& rooted) {
  std::vector<HoleRecord> out;
  for (const auto& n : rooted)
    if (n.coxeter > 0) out.push_back(deep_hole_of(n));
  return out;
}

Rat z_space_distance(const LeechModel& model, const QVec& z1, const QVec& z2) {
  Rat h1 = model.height(z1), h2 = model.height(z2);
  if (h1 == 0 || h2 == 0) throw DomainError("z_space_distance: infinite point");
  return -2 * model.inner(z1, z2) / (h1 * h2);
}

namespace {

// Per-component table of coset minimal norms for the glue-code search.
struct ComponentDisc {
  std::vector<Rat> norms;        // per group element, mixed-radix order
  std::vector<Rat> q_vals;       // norm mod 2
  std::vector<long> radix;
  std::vector<std::vector<Rat>> pair_table;  // bilinear pairing mod 1 numerators
};

}  // namespace

std::optional<Lattice> even_overlattice_no_new_roots(const RootDatum& datum) {
  // assemble the root lattice and its discriminant data
  std::vector<Lattice> comps;
  for (const auto& [key, mult] : datum.components())
    for (int i = 0; i < mult; ++i) comps.push_back(root_lattice(key.first, key.second));
  Lattice r = comps.front();
  for (size_t i = 1; i < comps.size(); ++i) r = direct_sum(r, comps[i]);
  int n = r.rank;

  DiscriminantGroup dg = discriminant_group(r);
  int k = int(dg.orders.size());
  std::vector<long> radix(k);
  for (int i = 0; i < k; ++i) radix[i] = to_long(dg.orders[i]);
  Int target2 = r.det().get_num();  // |C|^2 must equal det(R)

  // dual pairing and coset minimal norms per group element would be huge to
  // tabulate for 2^24; evaluate lazily through CVP on demand with caching
  Enumerator en(r);
  std::map<std::vector<long>, Rat> norm_cache;
  auto elem_vec = [&](const std::vector<long>& e) {
    QVec v(n, Rat(0));
    for (int i = 0; i < k; ++i)
      if (e[i])
        for (int t = 0; t < n; ++t) v[t] += Rat(e[i]) * dg.generators[i][t];
    return v;
  };
  auto min_norm = [&](const std::vector<long>& e) {
    auto it = norm_cache.find(e);
    if (it != norm_cache.end()) return it->second;
    QVec v = elem_vec(e);
    Rat d = en.min_distance_sq(v);
    norm_cache.insert({e, d});
    return d;
  };
  auto pairing_integral = [&](const std::vector<long>& a, const std::vector<long>& b) {
    return is_integer(r.inner(elem_vec(a), elem_vec(b)));
  };
  auto q_even = [&](const std::vector<long>& e) {
    Rat q = r.norm(elem_vec(e));
    return is_integer(q / 2);  // norm 0 mod 2
  };

  // DFS over generators in mixed-radix order
  std::vector<std::vector<long>> span{std::vector<long>(k, 0)};
  std::vector<std::vector<long>> gens;
  Int span_sq = 1;

  auto add_ok = [&](const std::vector<long>& g) -> std::optional<std::vector<std::vector<long>>> {
    if (!q_even(g)) return std::nullopt;
    for (const auto& s : span)
      if (!pairing_integral(g, s)) return std::nullopt;
    // order of g modulo the span: find smallest m with m*g in span
    std::vector<std::vector<long>> extension;
    long order = 1;
    {
      std::vector<long> acc = g;
      auto in_span = [&](const std::vector<long>& e) {
        return std::find(span.begin(), span.end(), e) != span.end();
      };
      while (!in_span(acc)) {
        ++order;
        for (int i = 0; i < k; ++i) acc[i] = (acc[i] + g[i]) % radix[i];
        if (order > 64) return std::nullopt;
      }
      if (order == 1) return std::nullopt;  // already present
    }
    for (long m = 1; m < order; ++m)
      for (const auto& s : span) {
        std::vector<long> e(k);
        for (int i = 0; i < k; ++i) e[i] = (s[i] + m * g[i]) % radix[i];
        // no new roots: minimal coset norm 2 is forbidden
        if (min_norm(e) == 2) return std::nullopt;
        if (!is_integer(r.norm(elem_vec(e)) / 2)) return std::nullopt;
        extension.push_back(e);
      }
    return extension;
  };

  std::function<bool(std::vector<long>)> dfs = [&](std::vector<long> from) -> bool {
    if (span_sq * span_sq == target2) return true;
    std::vector<long> g = from;
    while (true) {
      // increment mixed-radix counter
      int p = 0;
      while (p < k && ++g[p] == radix[p]) g[p++] = 0;
      if (p == k) return false;
      auto ext = add_ok(g);
      if (!ext) continue;
      long order = long(ext->size() / span.size()) + 1;
      size_t old_size = span.size();
      for (auto& e : *ext) span.push_back(e);
      gens.push_back(g);
      Int old_sq = span_sq;
      span_sq *= order;
      if (dfs(g)) return true;
      span.resize(old_size);
      gens.pop_back();
      span_sq = old_sq;
    }
  };

  bool found = span_sq * span_sq == target2 || dfs(std::vector<long>(k, 0));
  if (!found) return std::nullopt;
  std::vector<QVec> glue_vectors;
  for (const auto& g : gens) glue_vectors.push_back(elem_vec(g));
  auto ov = glue(r, glue_vectors);
  Lattice out = lll_reduce(ov.result).lattice;
  assert(out.is_even() && out.det() == 1);
  return out;
}

Lattice26 lattice26_noroots(const LeechModel& model, const QVec& z_a46) {
  // u = z + w has norm -10 and height 5
  QVec u = add(z_a46, model.weyl_w());
  if (model.norm(u) != -10 || model.height(u) != 5)
    throw DomainError("lattice26_noroots: z must be the height-5 norm-0 seed");
  const Lattice& full = model.full();
  int n = full.rank;
  // B = u^perp, a 25-dimensional even lattice of determinant 10
  QMat col(n, 1);
  for (int i = 0; i < n; ++i) {
    Rat s = 0;
    for (int j = 0; j < n; ++j) s += full.gram(i, j) * u[j];
    col(i, 0) = s;
  }
  Int den = col.denominator();
  for (int i = 0; i < n; ++i) col(i, 0) *= Rat(den);
  QMat perp = integer_kernel(col);
  Lattice b(perp * full.gram * perp.transpose());
  assert(b.is_even() && abs(b.det()) == 10);
  DiscriminantGroup dgb = discriminant_group(b);
  assert(dgb.orders.size() == 1 && dgb.orders[0] == 10);
  QVec gen = dgb.generators[0];
  // pick the generator power of norm 1/10 mod 2
  QVec bgen;
  for (long j = 1; j < 10; ++j) {
    if (std::gcd(j, 10L) != 1) continue;
    QVec cand = scale(Rat(j), gen);
    Rat q = b.norm(cand);
    Rat frac = q - 2 * Rat(rat_floor(q / 2));
    if (frac == Rat(1, 10)) {
      bgen = cand;
      break;
    }
  }
  assert(!bgen.empty());
  // glue with a positive norm-10 generator: g = bgen + 3 c / 10
  Lattice bc = direct_sum(b, rescale(identity_lattice(1), 10));
  QVec g(26, Rat(0));
  for (int i = 0; i < 25; ++i) g[i] = bgen[i];
  g[25] = Rat(3) / 10;
  auto ov = glue(bc, {g});
  Lattice l26 = ov.result;
  assert(abs(l26.det()) == 1 && !l26.is_even());
  Lattice26 out;
  auto red = lll_reduce(l26);
  out.lattice = red.lattice;
  // the characteristic vector: c = (0,...,0 | 1) of the b + <c> frame
  QVec c_vec(26, Rat(0));
  c_vec[25] = 1;
  auto coords = ov.result_basis.solve_left(c_vec);
  assert(coords);
  QVec c_new = mat_vec_left(*coords, red.transform.inverse().value());
  out.characteristic = to_zvec(c_new);
  // characteristic property: (c, v) = v^2 mod 2 for all basis vectors
  for (int i = 0; i < 26; ++i) {
    QVec e(26, Rat(0));
    e[i] = 1;
    Rat diff = out.lattice.inner(to_qvec(out.characteristic), e) - out.lattice.norm(e);
    assert(is_integer(diff / 2));
  }
  assert(out.lattice.norm(to_qvec(out.characteristic)) == 10);
  return out;
}

}  // namespace hyperlat
