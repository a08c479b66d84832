#include "hyperlat/rootsys.hpp"

#include "hyperlat/standard_lattices.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace hyperlat {

int coxeter_number(char family, int n) {
  switch (family) {
    case 'a':
      return n + 1;
    case 'd':
      return 2 * n - 2;
    case 'e':
      return n == 6 ? 12 : n == 7 ? 18 : 30;
  }
  throw DomainError("coxeter_number: unknown family");
}

void RootDatum::add(char family, int n, int multiplicity) {
  if (multiplicity == 0) return;
  if (family == 'd' && n == 2) {  // d2 = a1^2
    add('a', 1, 2 * multiplicity);
    return;
  }
  if (family == 'd' && n == 3) {  // d3 = a3
    add('a', 3, multiplicity);
    return;
  }
  if (family == 'e' && (n < 6 || n > 8)) throw DomainError("RootDatum: bad e rank");
  if (family == 'a' && n < 1) throw DomainError("RootDatum: bad a rank");
  if (family == 'd' && n < 2) throw DomainError("RootDatum: bad d rank");
  comps_[{family, n}] += multiplicity;
}

void RootDatum::add(const RootDatum& other) {
  for (const auto& [key, mult] : other.comps_) comps_[key] += mult;
}

int RootDatum::rank() const {
  int r = 0;
  for (const auto& [key, mult] : comps_) r += key.second * mult;
  return r;
}

long long RootDatum::root_count() const {
  long long c = 0;
  for (const auto& [key, mult] : comps_)
    c += (long long)coxeter_number(key.first, key.second) * key.second * mult;
  return c;
}

int RootDatum::component_count() const {
  int c = 0;
  for (const auto& [key, mult] : comps_) c += mult;
  return c;
}

int RootDatum::s_invariant() const {
  int s = 0;
  for (const auto& [key, mult] : comps_) {
    auto [fam, n] = key;
    int one = 0;
    if (fam == 'a')
      one = (n + 1) / 2;
    else if (fam == 'd')
      one = 2 * (n / 2);
    else
      one = n == 6 ? 4 : n;
    s += one * mult;
  }
  return s;
}

Rat RootDatum::weyl_norm() const {
  Rat total = 0;
  for (const auto& [key, mult] : comps_) {
    auto [fam, n] = key;
    Rat h(coxeter_number(fam, n));
    total += Rat(mult) * h * (h + 1) * Rat(n) / 12;
  }
  return total;
}

std::string RootDatum::to_string() const {
  // Largest components first reads like the usual tables.
  std::vector<std::pair<std::pair<char, int>, int>> items(comps_.begin(), comps_.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first.second != b.first.second) return a.first.second > b.first.second;
    return a.first.first > b.first.first;  // e before d before a at equal rank
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, mult] : items) {
    if (!first) os << ' ';
    first = false;
    os << key.first << key.second;
    if (mult > 1) os << '^' << mult;
  }
  return os.str();
}

RootDatum RootDatum::parse(const std::string& s) {
  RootDatum d;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    size_t i = 0;
    if (tok[i] != 'a' && tok[i] != 'd' && tok[i] != 'e')
      throw DomainError("RootDatum::parse: bad family in '" + tok + "'");
    char fam = tok[i++];
    size_t j = i;
    while (j < tok.size() && isdigit(tok[j])) ++j;
    if (j == i) throw DomainError("RootDatum::parse: missing rank in '" + tok + "'");
    int n = std::stoi(tok.substr(i, j - i));
    int mult = 1;
    if (j < tok.size()) {
      if (tok[j] != '^') throw DomainError("RootDatum::parse: bad token '" + tok + "'");
      mult = std::stoi(tok.substr(j + 1));
    }
    d.add(fam, n, mult);
  }
  return d;
}

namespace {

bool lex_positive(const ZVec& v) {
  for (const auto& x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

ZVec negate(const ZVec& v) {
  ZVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

// Classifies a connected simply-laced tree given its adjacency lists.
// Returns (family, rank) and writes a canonical node order.
std::pair<char, int> classify_tree(const std::vector<std::vector<int>>& adj,
                                   const std::vector<int>& nodes) {
  int n = int(nodes.size());
  int branch = -1;
  for (int v : nodes) {
    int deg = int(adj[v].size());
    if (deg > 3) throw DomainError("root component has a node of degree > 3");
    if (deg == 3) {
      if (branch >= 0) throw DomainError("root component with two branch nodes");
      branch = v;
    }
  }
  if (branch < 0) return {'a', n};
  // leg lengths from the branch node
  std::vector<int> legs;
  for (int s : adj[branch]) {
    int len = 1, prev = branch, cur = s;
    while (true) {
      int next = -1;
      for (int w : adj[cur])
        if (w != prev) next = w;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  if (legs[0] != 1) throw DomainError("not an ADE diagram");
  if (legs[1] == 1) return {'d', n};
  if (legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4) return {'e', n};
  throw DomainError("not an ADE diagram");
}

}  // namespace

RootSystem analyze_root_set(const Lattice& l, std::vector<ZVec> roots) {
  RootSystem rs;
  rs.lattice = l;
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  rs.roots = roots;
  if (roots.empty()) {
    rs.rho = QVec(l.rank, Rat(0));
    rs.rho_norm = 0;
    return rs;
  }

  std::vector<ZVec> pos;
  std::set<ZVec> pos_set;
  for (const auto& r : roots)
    if (lex_positive(r)) {
      pos.push_back(r);
      pos_set.insert(r);
    }

  // usual simple roots: positive roots that are not sums of two positives
  std::vector<ZVec> alpha;
  for (const auto& r : pos) {
    bool sum = false;
    for (const auto& s : pos) {
      if (s == r) continue;
      ZVec diff(r.size());
      for (size_t i = 0; i < r.size(); ++i) diff[i] = r[i] - s[i];
      if (pos_set.count(diff)) {
        sum = true;
        break;
      }
    }
    if (!sum) alpha.push_back(r);
  }
  int k = int(alpha.size());

  // thesis sign convention: simple roots pair <= 0 with the chamber
  rs.simple.reserve(k);
  for (const auto& a : alpha) rs.simple.push_back(negate(a));

  // adjacency on the simple roots
  std::vector<std::vector<int>> adj(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (l.inner(to_qvec(alpha[i]), to_qvec(alpha[j])) != 0) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }

  // Weyl vector: (rho, alpha_i) = 1
  {
    QMat cartan(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        cartan(i, j) = l.inner(to_qvec(alpha[i]), to_qvec(alpha[j]));
    auto inv = cartan.inverse();
    if (!inv) throw DomainError("simple roots are not independent");
    QVec rho(l.rank, Rat(0));
    for (int i = 0; i < k; ++i) {
      Rat coef = 0;
      for (int j = 0; j < k; ++j) coef += (*inv)(i, j);
      for (int t = 0; t < l.rank; ++t) rho[t] += coef * Rat(alpha[i][t]);
    }
    rs.rho = rho;
    rs.rho_norm = l.norm(rho);
  }

  // connected components
  std::vector<int> comp_of(k, -1);
  int ncomp = 0;
  for (int i = 0; i < k; ++i) {
    if (comp_of[i] >= 0) continue;
    std::vector<int> stack{i};
    comp_of[i] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp_of[w] < 0) {
          comp_of[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
  }

  for (int c = 0; c < ncomp; ++c) {
    RootComponent rc;
    for (int i = 0; i < k; ++i)
      if (comp_of[i] == c) rc.nodes.push_back(i);
    auto [fam, n] = classify_tree(adj, rc.nodes);
    rc.family = fam;
    rc.n = n;
    rc.coxeter = coxeter_number(fam, n);

    // highest root: the positive root of maximal pairing with rho in the span
    ZVec best;
    Rat best_h = -1;
    for (const auto& r : pos) {
      bool in_comp = false;
      for (int idx : rc.nodes)
        if (l.inner(to_qvec(r), to_qvec(alpha[idx])) != 0) {
          in_comp = true;
          break;
        }
      if (!in_comp) continue;
      Rat h = l.inner(rs.rho, to_qvec(r));
      if (h > best_h) {
        best_h = h;
        best = r;
      }
    }
    rc.highest_root = best;
    assert(best_h == rc.coxeter - 1);

    // weights: -theta expanded in the thesis simple roots of the component
    {
      int m = int(rc.nodes.size());
      QMat a(m, l.rank);
      for (int i = 0; i < m; ++i)
        for (int t = 0; t < l.rank; ++t) a(i, t) = Rat(alpha[rc.nodes[i]][t]);
      auto coeffs = a.solve_left(to_qvec(best));
      assert(coeffs);
      rc.weights.resize(m);
      for (int i = 0; i < m; ++i) {
        assert(is_integer((*coeffs)[i]) && (*coeffs)[i] > 0);
        rc.weights[i] = (*coeffs)[i].get_num();
      }
    }
    rs.datum.add(rc.family, rc.n);
    rs.components.push_back(std::move(rc));
  }
  return rs;
}

RootSystem identify_roots(const Lattice& l) {
  if (l.rank == 0) {
    RootSystem rs;
    rs.lattice = l;
    rs.rho_norm = 0;
    return rs;
  }
  auto shells = short_vectors(l, 2);
  std::vector<ZVec> roots;
  for (const auto& sh : shells)
    if (sh.norm_sq == 2) roots = sh.vectors;
  return analyze_root_set(l, std::move(roots));
}

Rat weyl_vector_norm(const RootDatum& r) { return r.weyl_norm(); }

MinimalVectors minimal_vectors(const Lattice& root_lattice) {
  DiscriminantGroup dg = discriminant_group(root_lattice);
  Enumerator en(root_lattice);
  MinimalVectors mv;
  // enumerate the whole finite group
  std::vector<long> radix;
  for (const auto& d : dg.orders) radix.push_back(to_long(d));
  std::vector<long> idx(radix.size(), 0);
  while (true) {
    QVec rep(root_lattice.rank, Rat(0));
    for (size_t i = 0; i < idx.size(); ++i)
      for (int t = 0; t < root_lattice.rank; ++t) rep[t] += Rat(idx[i]) * dg.generators[i][t];
    auto cl = en.closest(rep);
    QVec minimal = rep;
    if (!cl.vectors.empty())
      for (int t = 0; t < root_lattice.rank; ++t) minimal[t] -= Rat(cl.vectors[0][t]);
    mv.reps.push_back(minimal);
    mv.norms.push_back(root_lattice.norm(minimal));
    // increment mixed-radix counter
    size_t p = 0;
    while (p < idx.size() && ++idx[p] == radix[p]) idx[p++] = 0;
    if (p == idx.size()) break;
    if (idx.empty()) break;
  }
  return mv;
}

bool opposition_flips(char family, int n) {
  if (family == 'a') return n >= 2;
  if (family == 'd') return n % 2 == 1;
  return n == 6;  // e6 flips, e7/e8 do not
}

int s_invariant(const RootDatum& r) { return r.s_invariant(); }

std::vector<SubsystemEntry> maximal_subsystems(char family, int n) {
  Lattice l = root_lattice(family, n);
  RootSystem rs = identify_roots(l);
  assert(rs.components.size() == 1);
  ExtendedDiagram ext = extended_diagram(rs);
  int total = int(ext.nodes.size());
  const auto& w = ext.weights[0];

  std::vector<SubsystemEntry> out;
  // Nodes of the extended diagram are honest vectors; removing nodes leaves
  // an independent set, so its Gram is a definite root lattice to classify.
  auto datum_without = [&](const std::vector<int>& removed) {
    std::vector<QVec> kept;
    for (int i = 0; i < total; ++i)
      if (std::find(removed.begin(), removed.end(), i) == removed.end())
        kept.push_back(to_qvec(ext.nodes[i]));
    if (kept.empty()) return RootDatum();
    QMat basis(int(kept.size()), l.rank);
    for (size_t i = 0; i < kept.size(); ++i)
      for (int t = 0; t < l.rank; ++t) basis(int(i), t) = kept[i][t];
    QMat sub = basis * l.gram * basis.transpose();
    return identify_roots(Lattice(sub)).datum;
  };

  std::set<std::pair<std::string, int>> seen;
  auto is_prime = [](long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
      if (p % q == 0) return false;
    return true;
  };
  for (int i = 0; i < total; ++i) {
    long wi = to_long(w[i]);
    if (!is_prime(wi)) continue;
    RootDatum d = datum_without({i});
    SubsystemEntry e;
    e.datum = d;
    e.kind = SubsystemEntry::Kind::prime_index;
    e.prime = int(wi);
    if (seen.insert({d.to_string(), e.prime}).second) out.push_back(e);
  }
  std::set<std::string> seen1;
  for (int i = 0; i < total; ++i)
    for (int j = i + 1; j < total; ++j) {
      if (w[i] != 1 || w[j] != 1) continue;
      RootDatum d = datum_without({i, j});
      SubsystemEntry e;
      e.datum = d;
      e.kind = SubsystemEntry::Kind::corank_one;
      if (seen1.insert(d.to_string()).second) out.push_back(e);
    }
  return out;
}

ExtendedDiagram extended_diagram(const RootSystem& rs) {
  ExtendedDiagram ext;
  int base = int(rs.simple.size());
  ext.nodes = rs.simple;
  for (const auto& comp : rs.components) ext.nodes.push_back(comp.highest_root);
  int total = int(ext.nodes.size());
  ext.bonds = QMat(total, total);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j)
      ext.bonds(i, j) = rs.lattice.inner(to_qvec(ext.nodes[i]), to_qvec(ext.nodes[j]));
  int c = 0;
  for (const auto& comp : rs.components) {
    std::vector<int> nodes = comp.nodes;
    nodes.push_back(base + c);
    std::vector<Int> w(comp.weights);
    w.push_back(1);
    ext.component_nodes.push_back(nodes);
    ext.weights.push_back(w);
    ++c;
  }
  return ext;
}

std::pair<QVec, int> chamber_reduce(const RootSystem& rs, QVec v) {
  int words = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rs.simple) {
      Rat ip = rs.lattice.inner(v, to_qvec(r));
      if (ip > 0) {
        for (size_t t = 0; t < v.size(); ++t) v[t] -= ip * Rat(r[t]);
        ++words;
        changed = true;
      }
    }
    if (words > 1000000) throw BudgetExceeded("chamber_reduce: word budget");
  }
  return {v, words};
}

QMat opposition_matrix(const RootSystem& rs) {
  int n = rs.lattice.rank;
  QMat m = QMat::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = -m(i, j);
  if (rs.simple.empty()) return m;
  // track the reflections that carry -rho back into the chamber
  QVec v = scale(Rat(-1), rs.rho);
  bool changed = true;
  long guard = 0;
  while (changed) {
    changed = false;
    for (const auto& r : rs.simple) {
      Rat ip = rs.lattice.inner(v, to_qvec(r));
      if (ip > 0) {
        for (size_t t = 0; t < v.size(); ++t) v[t] -= ip * Rat(r[t]);
        // m <- m * refl_r  (row-vector action x -> x m)
        QMat refl = QMat::identity(n);
        QVec gr(n, Rat(0));
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) gr[a] += rs.lattice.gram(a, b) * Rat(r[b]);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) refl(a, b) -= gr[a] * Rat(r[b]);
        m = m * refl;
        changed = true;
        if (++guard > 100000) throw BudgetExceeded("opposition_matrix: word budget");
      }
    }
  }
  assert(v == rs.rho);
  return m;
}

int max_orthogonal_roots(const RootSystem& rs) {
  std::vector<ZVec> pos;
  for (const auto& r : rs.roots)
    if (lex_positive(r)) pos.push_back(r);
  int n = int(pos.size());
  std::vector<std::vector<bool>> orth(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      orth[i][j] = i != j && rs.lattice.inner(to_qvec(pos[i]), to_qvec(pos[j])) == 0;
  int best = 0;
  std::vector<int> chosen;
  // branch and bound over candidates in index order
  std::function<void(int, std::vector<int>)> go = [&](int depth, std::vector<int> cands) {
    best = std::max(best, depth);
    if (depth + int(cands.size()) <= best) return;
    for (size_t ci = 0; ci < cands.size(); ++ci) {
      if (depth + int(cands.size() - ci) <= best) return;
      int v = cands[ci];
      std::vector<int> next;
      for (size_t cj = ci + 1; cj < cands.size(); ++cj)
        if (orth[v][cands[cj]]) next.push_back(cands[cj]);
      go(depth + 1, std::move(next));
    }
  };
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  go(0, all);
  return best;
}

Norm4Row classify_norm4(const RootSystem& rs, const ZVec& r) {
  const Lattice& l = rs.lattice;
  QVec rq = to_qvec(r);
  if (l.norm(rq) != 4) throw DomainError("classify_norm4: vector must have norm 4");
  Norm4Row row;
  std::vector<ZVec> meet2;
  for (const auto& s : rs.roots)
    if (l.inner(rq, to_qvec(s)) == 2) meet2.push_back(s);
  row.m = (long long)meet2.size();
  {
    auto [dom, words] = chamber_reduce(rs, rq);
    (void)words;
    Rat h = l.inner(dom, rs.rho);  // max of -(a, rho) over the orbit
    row.t = h.get_num();
  }
  if (meet2.empty()) {
    row.minimal_case = true;
    return row;
  }
  // components meeting r with product 2
  std::set<int> comp_ids;
  auto comp_of_root = [&](const ZVec& x) {
    for (size_t c = 0; c < rs.components.size(); ++c)
      for (int idx : rs.components[c].nodes)
        if (l.inner(to_qvec(x), to_qvec(rs.simple[idx])) != 0) return int(c);
    throw DomainError("root not in any component");
  };
  for (const auto& s : meet2) comp_ids.insert(comp_of_root(s));
  for (int c : comp_ids) row.r.add(rs.components[c].family, rs.components[c].n);

  // roots of those components orthogonal to r
  std::vector<ZVec> r2set;
  for (const auto& s : rs.roots) {
    if (l.inner(rq, to_qvec(s)) != 0) continue;
    int c = comp_of_root(s);
    if (comp_ids.count(c)) r2set.push_back(s);
  }
  row.r2 = analyze_root_set(l, r2set).datum;

  // component of roots orthogonal to a chosen s containing r - s
  const ZVec& s0 = meet2.front();
  std::vector<ZVec> rstar;
  for (const auto& x : rs.roots) {
    if (l.inner(to_qvec(s0), to_qvec(x)) != 0) continue;
    if (comp_ids.count(comp_of_root(x))) rstar.push_back(x);
  }
  ZVec diff(r.size());
  for (size_t i = 0; i < r.size(); ++i) diff[i] = r[i] - s0[i];
  RootSystem star = analyze_root_set(l, rstar);
  for (const auto& comp : star.components) {
    bool contains = false;
    for (int idx : comp.nodes)
      if (l.inner(to_qvec(diff), to_qvec(star.simple[idx])) != 0) contains = true;
    if (contains) {
      row.r1.add(comp.family, comp.n);
      break;
    }
  }
  // t = m + 2^(m/2-2) c
  Rat pow2 = 1;
  for (long long i = 0; i < row.m / 2 - 2; ++i) pow2 *= 2;
  for (long long i = 0; i < 2 - row.m / 2; ++i) pow2 /= 2;
  row.c = (Rat(row.t) - Rat((long)row.m)) / pow2;
  return row;
}

std::string dynkin_dot(const RootSystem& rs) {
  std::ostringstream os;
  os << "graph dynkin {\n";
  for (size_t i = 0; i < rs.simple.size(); ++i) os << "  r" << i << ";\n";
  for (size_t i = 0; i < rs.simple.size(); ++i)
    for (size_t j = i + 1; j < rs.simple.size(); ++j) {
      Rat b = -rs.lattice.inner(to_qvec(rs.simple[i]), to_qvec(rs.simple[j]));
      if (b > 0) os << "  r" << i << " -- r" << j << " [label=\"" << b.get_str() << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace hyperlat
