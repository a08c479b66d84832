#include "hyperlat/neighbor.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace hyperlat {

std::vector<ZVec> coset_transversal(const QMat& s) {
  assert(s.rows() == s.cols() && s.is_integral());
  SmithResult snf = smith_normal_form(s);
  auto vinv = snf.v.inverse();
  assert(vinv);
  int n = s.rows();
  std::vector<long> radix(n);
  for (int i = 0; i < n; ++i) radix[i] = to_long(snf.d(i, i).get_num());
  std::vector<ZVec> reps;
  std::vector<long> idx(n, 0);
  while (true) {
    QVec x(n, Rat(0));
    for (int i = 0; i < n; ++i)
      if (idx[i])
        for (int j = 0; j < n; ++j) x[j] += Rat(idx[i]) * (*vinv)(i, j);
    reps.push_back(to_zvec(x));
    int p = 0;
    while (p < n && ++idx[p] == radix[p]) idx[p++] = 0;
    if (p == n) break;
  }
  return reps;
}

EvenSublattice even_sublattice(const Lattice& odd) {
  if (!odd.is_integral()) throw DomainError("even_sublattice: integral lattice required");
  int n = odd.rank;
  // kernel of x -> sum x_i * g_ii mod 2
  int pivot = -1;
  for (int i = 0; i < n; ++i)
    if (odd.gram(i, i).get_num() % 2 != 0) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw DomainError("even_sublattice: lattice is already even");
  QMat basis(n, n);
  int row = 0;
  for (int i = 0; i < n; ++i) {
    if (i == pivot) continue;
    basis(row, i) = 1;
    if (odd.gram(i, i).get_num() % 2 != 0) basis(row, pivot) = -1;
    ++row;
  }
  basis(n - 1, pivot) = 2;
  QMat h = hnf(basis);
  assert(h.rows() == n);
  EvenSublattice out;
  out.basis = h;
  out.lattice = Lattice(h * odd.gram * h.transpose());
  assert(out.lattice.is_even());
  return out;
}

EvenNeighbors even_neighbors(const Lattice& a) {
  if (!a.is_integral() || a.is_even() || abs(a.det()) != 1)
    throw DomainError("even_neighbors: odd unimodular lattice required");
  auto sig = a.signature();
  if ((sig.pos - sig.neg) % 8 != 0)
    throw DomainError("even_neighbors: signature must be divisible by 8");
  int n = a.rank;
  EvenSublattice a2 = even_sublattice(a);
  ZVec c = characteristic_class(a);
  // c/2 in a2 coordinates
  QVec c_half(n);
  for (int i = 0; i < n; ++i) c_half[i] = Rat(c[i]) / 2;
  auto y1 = a2.basis.solve_left(c_half);
  assert(y1);
  // a: any odd-norm vector of a, in a2 coordinates (rational with halves)
  QVec odd_vec(n, Rat(0));
  for (int i = 0; i < n; ++i)
    if (a.gram(i, i).get_num() % 2 != 0) {
      odd_vec[i] = 1;
      break;
    }
  auto y2 = a2.basis.solve_left(add(c_half, odd_vec));
  assert(y2);

  auto build = [&](const QVec& y) {
    auto ov = glue(a2.lattice, {y});
    if (!ov.result.is_even() || abs(ov.result.det()) != 1)
      throw DomainError("even_neighbors: glue produced a non-even-unimodular lattice");
    return std::pair<Lattice, QMat>(ov.result, ov.result_basis * a2.basis);
  };
  // exactly one of c/2, c/2 + a has even norm mod 2 in the definite case;
  // both glue to even lattices when (c/2)^2 is even
  EvenNeighbors out;
  auto [l1, b1] = build(*y1);
  auto [l2, b2] = build(*y2);
  out.first = l1;
  out.first_basis = b1;
  out.second = l2;
  out.second_basis = b2;
  return out;
}

ClassRep minimal_class_rep(const Enumerator& en, const ZVec& b, const Int& norm_cap) {
  int n = en.lattice().rank;
  QVec center(n);
  for (int i = 0; i < n; ++i) center[i] = Rat(b[i]) / 2;
  VectorShell cl;
  if (norm_cap < 0) {
    cl = en.closest(center);
  } else {
    // capped branch and bound: anything beyond the cap is irrelevant
    Rat cap = Rat(norm_cap) / 4;
    Rat babai = en.babai_bound(center);
    Rat bound = babai < cap ? babai : cap;
    cl.norm_sq = bound + 1;
    en.enumerate_dynamic(center, bound, [&](const ZVec& x, const Rat& d, const Rat&) {
      if (d < cl.norm_sq) {
        cl.norm_sq = d;
        cl.vectors.clear();
      }
      if (d == cl.norm_sq) cl.vectors.push_back(x);
      return cl.norm_sq < bound ? cl.norm_sq : bound;
    });
    if (cl.vectors.empty()) {
      ClassRep miss;
      miss.norm = -1;
      return miss;
    }
    std::sort(cl.vectors.begin(), cl.vectors.end());
  }
  // representatives b - 2x for the closest x, then their negatives
  std::vector<ZVec> reps;
  for (const auto& x : cl.vectors) {
    ZVec r(n), neg(n);
    for (int i = 0; i < n; ++i) {
      r[i] = b[i] - 2 * x[i];
      neg[i] = -r[i];
    }
    reps.push_back(r);
    reps.push_back(neg);
  }
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  ClassRep out;
  out.min_count = (long long)reps.size();
  out.rep = reps.front();
  Rat n4 = cl.norm_sq * 4;
  out.norm = n4.get_num();
  return out;
}

OddNeighbor odd_neighbor_of(const Lattice& b_even, const ZVec& b) {
  if (!b_even.is_even() || abs(b_even.det()) != 1)
    throw DomainError("odd_neighbor_of: even unimodular lattice required");
  int n = b_even.rank;
  QVec bq = to_qvec(b);
  Int bnorm = b_even.norm(bq).get_num();
  if (bnorm % 4 != 0) throw DomainError("odd_neighbor_of: b^2 must be 0 mod 4");
  // B_b = vectors pairing evenly with b
  int pivot = -1;
  QVec pairings(n);
  for (int i = 0; i < n; ++i) {
    Rat s = 0;
    for (int j = 0; j < n; ++j) s += b_even.gram(i, j) * bq[j];
    pairings[i] = s;
    if (pivot < 0 && s.get_num() % 2 != 0) pivot = i;
  }
  if (pivot < 0) throw DomainError("odd_neighbor_of: b is divisible by 2 in B");
  QMat basis(n, n);
  int row = 0;
  for (int i = 0; i < n; ++i) {
    if (i == pivot) continue;
    basis(row, i) = 1;
    if (pairings[i].get_num() % 2 != 0) basis(row, pivot) = -1;
    ++row;
  }
  basis(n - 1, pivot) = 2;
  QMat h = hnf(basis);
  Lattice bb(h * b_even.gram * h.transpose());
  // glue the odd-norm class: b/2 if (b/2)^2 is odd, else b/2 + a
  QVec half(n);
  for (int i = 0; i < n; ++i) half[i] = bq[i] / 2;
  bool half_odd = (bnorm / 4) % 2 != 0;
  QVec x = half;
  if (!half_odd) {
    QVec a_vec(n, Rat(0));
    a_vec[pivot] = 1;  // pairs oddly with b
    x = add(half, a_vec);
  }
  auto y = h.solve_left(x);
  assert(y);
  auto ov = glue(bb, {*y});
  if (ov.result.is_even() || abs(ov.result.det()) != 1)
    throw DomainError("odd_neighbor_of: expected an odd unimodular result");
  OddNeighbor out;
  out.lattice = ov.result;
  out.basis = ov.result_basis * h;
  Enumerator en(b_even);
  auto cr = minimal_class_rep(en, b);
  out.class_norm = cr.norm;
  out.class_rep = cr.rep;
  return out;
}

StrippedLattice strip_unit_vectors(const Lattice& l) {
  auto sh = short_vectors(l, 1);
  StrippedLattice out;
  std::vector<ZVec> units;
  for (auto& s : sh)
    if (s.norm_sq == 1) units = s.vectors;
  out.unit_count = int(units.size());
  if (units.empty()) {
    out.lattice = l;
    out.basis = QMat::identity(l.rank);
    return out;
  }
  int n = l.rank;
  QMat cols(n, int(units.size()));
  for (size_t k = 0; k < units.size(); ++k)
    for (int i = 0; i < n; ++i) {
      Rat s = 0;
      for (int j = 0; j < n; ++j) s += l.gram(i, j) * Rat(units[k][j]);
      cols(i, int(k)) = s;
    }
  QMat ker = integer_kernel(cols);
  out.basis = ker;
  out.lattice = Lattice(ker * l.gram * ker.transpose());
  return out;
}

namespace {

struct CandidateSet {
  std::vector<ZVec> vecs;
  std::set<ZVec> seen;
  void push(const ZVec& v) {
    if (seen.insert(v).second) vecs.push_back(v);
  }
};

// int64 pairing table for a fixed integral lattice
struct PairTable {
  std::vector<std::vector<long long>> gram_rows;  // G * v per vector
  std::vector<std::vector<long long>> vecs;
  void add(const Lattice& l, const ZVec& v) {
    std::vector<long long> w(v.size()), g(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = to_long(v[i]);
    for (int i = 0; i < l.rank; ++i) {
      Rat s = 0;
      for (int j = 0; j < l.rank; ++j) s += l.gram(i, j) * Rat(v[j]);
      g[i] = to_long(s.get_num());
    }
    vecs.push_back(std::move(w));
    gram_rows.push_back(std::move(g));
  }
  long long pair(size_t i, size_t j) const {
    long long s = 0;
    for (size_t t = 0; t < vecs[i].size(); ++t) s += vecs[i][t] * gram_rows[j][t];
    return s;
  }
  long long pair_with(const std::vector<long long>& x, size_t j) const {
    long long s = 0;
    for (size_t t = 0; t < x.size(); ++t) s += x[t] * gram_rows[j][t];
    return s;
  }
};

bool lex_positive_z(const ZVec& v) {
  for (const auto& x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

}  // namespace

std::vector<OddNeighbor> odd_neighbors(const Lattice& b_even, const OddNeighborOptions& opt) {
  if (!b_even.is_even() || abs(b_even.det()) != 1)
    throw DomainError("odd_neighbors: even unimodular lattice required");
  int n = b_even.rank;
  Enumerator en(b_even);
  RootSystem rs = identify_roots(b_even);

  PairTable roots_tab;
  for (const auto& r : rs.roots) roots_tab.add(b_even, r);

  // maximal orthogonal root frame, greedy in lexicographic order
  std::vector<size_t> frame;
  for (size_t i = 0; i < rs.roots.size(); ++i) {
    bool ok = true;
    for (size_t f : frame)
      if (roots_tab.pair(i, f) != 0) ok = false;
    if (ok) frame.push_back(i);
  }

  CandidateSet cand;
  auto add_sum = [&](std::initializer_list<size_t> idx) {
    ZVec v(n, Int(0));
    for (size_t i : idx)
      for (int t = 0; t < n; ++t) v[t] += rs.roots[i][t];
    cand.push(v);
  };

  // (1) glue coset minimal vectors over the root sublattice
  std::vector<ZVec> glue_reps;
  if (rs.rank() == n) {
    QMat s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s(i, j) = Rat(rs.simple[i][j]);
    Lattice rl(s * b_even.gram * s.transpose());
    Enumerator ren(rl);
    for (auto& rep : coset_transversal(s)) {
      QVec repq = to_qvec(rep);
      bool zero = true;
      for (auto& c : repq)
        if (c != 0) zero = false;
      if (zero) continue;
      auto coeffs = s.solve_left(repq);
      assert(coeffs);
      auto cl = ren.closest(*coeffs);
      QVec reduced = repq;
      if (!cl.vectors.empty())
        for (int j = 0; j < n; ++j) {
          Rat shift = 0;
          for (int i = 0; i < n; ++i) shift += Rat(cl.vectors[0][i]) * s(i, j);
          reduced[j] -= shift;
        }
      ZVec g = to_zvec(reduced);
      if (!lex_positive_z(g))  // classes come in +- pairs; keep one sign
        for (auto& c : g) c = -c;
      glue_reps.push_back(g);
      cand.push(g);
    }
  }

  // (2) sums of 2 or 4 frame roots, and pairs (early frame root, any root)
  {
    size_t fs = frame.size();
    for (size_t i = 0; i < fs; ++i)
      for (size_t j = i + 1; j < fs; ++j) add_sum({frame[i], frame[j]});
    for (size_t i = 0; i < fs; ++i)
      for (size_t j = i + 1; j < fs; ++j)
        for (size_t k = j + 1; k < fs; ++k)
          for (size_t l = k + 1; l < fs; ++l) add_sum({frame[i], frame[j], frame[k], frame[l]});
    for (size_t fi = 0; fi < fs && fi < 4; ++fi)
      for (size_t r = 0; r < rs.roots.size(); ++r)
        if (roots_tab.pair(frame[fi], r) == 0) add_sum({frame[fi], r});
  }

  // (3) greedy orthogonal root chains on top of each glue vector
  for (const auto& g : glue_reps) {
    Rat gn = b_even.norm(to_qvec(g));
    if (gn > 12) continue;
    std::vector<long long> acc(n);
    for (int t = 0; t < n; ++t) acc[t] = to_long(g[t]);
    std::vector<size_t> chain;
    ZVec cur = g;
    Rat cur_norm = gn;
    while (cur_norm <= 10) {
      // first root orthogonal to the accumulated vector and the chain
      bool found = false;
      for (size_t r = 0; r < rs.roots.size() && !found; ++r) {
        if (roots_tab.pair_with(acc, r) != 0) continue;
        bool orth = true;
        for (size_t c : chain)
          if (roots_tab.pair(c, r) != 0) orth = false;
        if (!orth) continue;
        chain.push_back(r);
        for (int t = 0; t < n; ++t) {
          cur[t] += rs.roots[r][t];
          acc[t] += to_long(rs.roots[r][t]);
        }
        cur_norm += 2;
        cand.push(cur);
        found = true;
      }
      if (!found) break;
    }
  }

  // (4) rootless case: norm-4 vectors and orthogonal pairs of them
  if (rs.roots.empty() && n > 0) {
    auto sh = short_vectors(b_even, 4);
    std::vector<ZVec> quads;
    for (auto& s : sh)
      if (s.norm_sq == 4) quads = std::move(s.vectors);
    size_t cap = std::min<size_t>(quads.size(), 40);
    for (size_t i = 0; i < cap; ++i) {
      cand.push(quads[i]);
      for (size_t j = i + 1; j < cap; ++j) {
        if (b_even.inner(to_qvec(quads[i]), to_qvec(quads[j])) != 0) continue;
        ZVec v(n);
        for (int t = 0; t < n; ++t) v[t] = quads[i][t] + quads[j][t];
        cand.push(v);
      }
    }
  }

  // classify candidate classes; keep admissible ones (norm 0 mod 4, nonzero)
  // and bucket them by cheap automorphism-invariant data before building
  // any lattice: class norm, minimal-vector count, root pairing histogram
  std::map<std::string, ZVec> buckets;
  std::set<ZVec> classes_seen;
  long long budget = opt.max_candidates;
  for (const auto& b : cand.vecs) {
    if (--budget < 0) break;
    Rat norm = b_even.norm(to_qvec(b));
    if (norm == 0) continue;
    auto cr = minimal_class_rep(en, b, 12);
    if (cr.norm <= 0) continue;
    if (cr.norm % 4 != 0) continue;
    if (opt.skip_norm4_classes && cr.norm == 4) continue;
    if (!classes_seen.insert(cr.rep).second) continue;
    std::vector<long long> brow(n);
    {
      std::vector<long long> bl(n);
      for (int t = 0; t < n; ++t) bl[t] = to_long(cr.rep[t]);
      for (int i = 0; i < n; ++i) {
        Rat s = 0;
        for (int j = 0; j < n; ++j) s += b_even.gram(i, j) * Rat(cr.rep[j]);
        brow[i] = to_long(s.get_num());
      }
      (void)bl;
    }
    std::map<long long, long long> hist;
    for (size_t r = 0; r < roots_tab.vecs.size(); ++r) {
      long long ip = 0;
      for (int t = 0; t < n; ++t) ip += roots_tab.vecs[r][t] * brow[t];
      ++hist[ip < 0 ? -ip : ip];
    }
    std::ostringstream key;
    key << cr.norm.get_str() << "|" << cr.min_count << "|";
    for (auto& [v, c] : hist) key << v << ":" << c << ",";
    buckets.insert({key.str(), cr.rep});
  }

  // build lattices, bucket by light invariants, confirm with isometry
  std::vector<OddNeighbor> out;
  std::vector<std::string> keys;
  for (const auto& [bkey, rep] : buckets) {
    OddNeighbor nb = odd_neighbor_of(b_even, rep);
    auto red = lll_reduce(nb.lattice);
    nb.lattice = red.lattice;
    nb.basis = red.transform * nb.basis;
    LatticeInvariants inv = lattice_invariants(nb.lattice, 2);
    auto units = short_vectors(nb.lattice, 1);
    std::string k = inv.to_key() + "/u" + std::to_string(units.empty() ? 0 : units[0].vectors.size());
    bool dup = false;
    for (size_t i = 0; i < out.size(); ++i) {
      if (keys[i] != k) continue;
      if (is_isometric(out[i].lattice, nb.lattice).isometric) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      out.push_back(std::move(nb));
      keys.push_back(std::move(k));
    }
  }
  return out;
}

NeighborGraph classify_dimension(int dim, const Lattice& start, const ClassifyOptions& opt) {
  if (start.rank != dim || abs(start.det()) != 1)
    throw DomainError("classify_dimension: unimodular start lattice of the given dim required");
  NeighborGraph g;
  std::deque<int> queue;  // indices of unexpanded even nodes

  auto canonicalize = [&](const Lattice& l) { return lll_reduce(l).lattice; };

  auto add_even = [&](const Lattice& l) -> int {
    Lattice c = canonicalize(l);
    LatticeInvariants inv = lattice_invariants(c, 2);
    for (size_t i = 0; i < g.even_nodes.size(); ++i) {
      if (g.even_nodes[i].invariants.to_key() != inv.to_key()) continue;
      if (is_isometric(g.even_nodes[i].lattice, c).isometric) return int(i);
    }
    NeighborNode node;
    node.lattice = c;
    node.datum = inv.root_datum;
    node.invariants = inv;
    g.even_nodes.push_back(std::move(node));
    queue.push_back(int(g.even_nodes.size()) - 1);
    return int(g.even_nodes.size()) - 1;
  };

  // seed: an even node, possibly reached through the start's even neighbors
  if (start.is_even()) {
    add_even(start);
  } else {
    auto nb = even_neighbors(start);
    add_even(nb.first);
    add_even(nb.second);
  }

  std::vector<std::pair<std::string, Lattice>> edge_seen;  // key + lattice
  std::vector<std::pair<std::string, Lattice>> unit_seen;  // keyed by stripped core
  long long rounds = 0;
  while (!queue.empty()) {
    if (++rounds > opt.max_rounds) {
      g.complete = false;
      break;
    }
    int node = queue.front();
    queue.pop_front();
    OddNeighborOptions oopt = opt.odd;
    auto odds = odd_neighbors(g.even_nodes[node].lattice, oopt);
    for (auto& od : odds) {
      auto stripped = strip_unit_vectors(od.lattice);
      // every odd neighbor leads to its two even neighbors
      auto ev = even_neighbors(od.lattice);
      int ia = add_even(ev.first);
      int ib = add_even(ev.second);
      if (stripped.unit_count == 0) {
        // an edge of the graph: odd class with no norm-1 vectors
        LatticeInvariants inv = lattice_invariants(od.lattice, 2);
        std::string nbr_key = g.even_nodes[std::min(ia, ib)].datum + "&" +
                              g.even_nodes[std::max(ia, ib)].datum;
        std::string key = inv.to_key() + "|" + nbr_key;
        bool dup = false;
        for (auto& [k, lat] : edge_seen)
          if (k == key && is_isometric(lat, od.lattice).isometric) {
            dup = true;
            break;
          }
        if (!dup) {
          edge_seen.push_back({key, od.lattice});
          NeighborEdge e;
          e.odd_lattice = od.lattice;
          e.datum = inv.root_datum;
          e.even_a = ia;
          e.even_b = ib;
          g.odd_edges.push_back(std::move(e));
        }
      } else {
        Lattice core = stripped.lattice.rank > 0 ? lll_reduce(stripped.lattice).lattice
                                                 : stripped.lattice;
        LatticeInvariants inv = lattice_invariants(core, 2);
        std::string key = std::to_string(stripped.unit_count) + "#" + inv.to_key();
        bool dup = false;
        for (auto& [k, lat] : unit_seen)
          if (k == key && (core.rank == 0 || is_isometric(lat, core).isometric)) {
            dup = true;
            break;
          }
        if (!dup) {
          unit_seen.push_back({key, core});
          NeighborNode nn;
          nn.lattice = core;
          nn.datum = inv.root_datum;
          nn.invariants = inv;
          g.odd_unit_classes.push_back(std::move(nn));
        }
      }
    }
  }
  return g;
}

}  // namespace hyperlat
