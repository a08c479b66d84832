#include "hyperlat/isometry.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace hyperlat {

namespace {

using I64Vec = std::vector<long long>;

long long to_ll(const Int& x) {
  if (!x.fits_slong_p()) throw DomainError("isometry: coordinate overflow");
  return x.get_si();
}

struct ShellTable {
  std::vector<Rat> norms;                      // ascending
  std::vector<std::vector<I64Vec>> vecs;       // per norm
  std::vector<std::vector<I64Vec>> gram_rows;  // G * v per vector
};

ShellTable collect_shells(const Lattice& l, const Rat& bound) {
  int n = l.rank;
  std::vector<std::vector<long long>> g64(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!is_integer(l.gram(i, j))) throw DomainError("isometry: integral gram required");
      g64[i][j] = to_ll(l.gram(i, j).get_num());
    }
  std::map<Rat, std::vector<I64Vec>> by_norm;
  Enumerator en(l);
  QVec zero(n, Rat(0));
  en.enumerate64(zero, bound, [&](const long long* x, const Rat& d) {
    if (d == 0) return;
    by_norm[d].emplace_back(x, x + n);
  });
  ShellTable t;
  for (auto& [norm, vecs] : by_norm) {
    std::sort(vecs.begin(), vecs.end());
    std::vector<I64Vec> gs;
    gs.reserve(vecs.size());
    for (auto& v : vecs) {
      I64Vec g(n);
      for (int i = 0; i < n; ++i) {
        long long s = 0;
        for (int j = 0; j < n; ++j) s += g64[i][j] * v[j];
        g[i] = s;
      }
      gs.push_back(std::move(g));
    }
    t.norms.push_back(norm);
    t.vecs.push_back(std::move(vecs));
    t.gram_rows.push_back(std::move(gs));
  }
  return t;
}

long long dot(const I64Vec& a, const I64Vec& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Greedy basis of the lattice chosen among its short vectors: accepts a
// vector when it extends the rank or shrinks the index of the span.
// Returns flat indices into (shell, position) pairs, or empty if the short
// vectors do not contain a basis.
std::vector<std::pair<size_t, size_t>> greedy_basis(const ShellTable& t, int n) {
  std::vector<std::pair<size_t, size_t>> chosen;
  std::vector<I64Vec> chosen_gram;
  QMat h(0, 0);
  int rank = 0;
  Rat idx_det = 0;
  // integral membership in the current span lattice: cheap pre-filter so HNF
  // only runs when the span actually grows
  auto in_span = [&](const I64Vec& v) {
    if (rank == 0) return false;
    QVec q(n);
    for (int c = 0; c < n; ++c) q[c] = Rat((long)v[c]);
    auto x = h.solve_left(q);
    if (!x) return false;
    for (auto& c : *x)
      if (!is_integer(c)) return false;
    return true;
  };
  auto accept = [&](size_t s, size_t i) {
    const auto& v = t.vecs[s][i];
    QMat trial(rank + 1, n);
    for (int r = 0; r < rank; ++r)
      for (int c = 0; c < n; ++c) trial(r, c) = h(r, c);
    for (int c = 0; c < n; ++c) trial(rank, c) = Rat((long)v[c]);
    h = hnf(trial);
    rank = h.rows();
    chosen.push_back({s, i});
    chosen_gram.push_back(t.gram_rows[s][i]);
    if (rank == n) {
      idx_det = 1;
      for (int r = 0; r < n; ++r) idx_det *= h(r, r);
    }
  };
  // While building the rank, pick candidates pairing strongly with the
  // chosen cluster: tight pairings make the image search prune hard.  The
  // span test is expensive, so score a window first and test best-first.
  while (rank < n) {
    std::vector<std::tuple<long long, size_t, size_t>> window;
    size_t budget = 4000;
    for (size_t s = 0; s < t.vecs.size() && budget; ++s)
      for (size_t i = 0; i < t.vecs[s].size() && budget; ++i, --budget) {
        const auto& v = t.vecs[s][i];
        bool dup = false;
        for (auto& [sc, cs, ci] : window)
          if (cs == s && t.vecs[s][ci] == v) dup = true;
        (void)dup;
        long long score = 0;
        for (const auto& g : chosen_gram) {
          long long p = dot(v, g);
          score += p * p;
        }
        window.push_back({score * 4 - (long long)(4 * s), s, i});
      }
    std::sort(window.begin(), window.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    bool found = false;
    for (auto& [score, s, i] : window) {
      if (in_span(t.vecs[s][i])) continue;
      accept(s, i);
      found = true;
      break;
    }
    if (!found) break;
  }
  // index fixers: any non-integral vector enlarges the span lattice
  if (rank == n && idx_det != 1) {
    for (size_t s = 0; s < t.vecs.size(); ++s)
      for (size_t i = 0; i < t.vecs[s].size(); ++i) {
        if (idx_det == 1) return chosen;
        if (in_span(t.vecs[s][i])) continue;
        accept(s, i);
      }
  }
  if (rank == n && idx_det == 1) return chosen;
  return {};
}

}  // namespace

std::string LatticeInvariants::to_key() const {
  std::ostringstream os;
  os << rank << "|" << det.get_str() << "|" << (even ? "e" : "o") << "|";
  for (const auto& [n, c] : shell_counts) os << n.get_str() << ":" << c << ",";
  os << "|" << root_datum;
  return os.str();
}

LatticeInvariants lattice_invariants(const Lattice& l, const Rat& shell_bound) {
  LatticeInvariants inv;
  inv.rank = l.rank;
  inv.det = l.det();
  inv.even = l.is_even();
  if (l.rank == 0) return inv;
  Enumerator en(l);
  QVec zero(l.rank, Rat(0));
  for (auto& [norm, count] : en.shell_counts(zero, shell_bound))
    if (norm != 0) inv.shell_counts.push_back({norm, count});
  inv.root_datum = identify_roots(l).datum.to_string();
  return inv;
}

IsometryCertificate is_isometric(const Lattice& l1, const Lattice& l2,
                                 const IsometryOptions& opt) {
  IsometryCertificate cert;
  if (l1.rank != l2.rank) {
    cert.refuted_by = "rank";
    return cert;
  }
  if (l1.rank == 0) {
    cert.isometric = true;
    cert.map = QMat(0, 0);
    return cert;
  }
  if (!l1.is_positive_definite() || !l2.is_positive_definite())
    throw DomainError("is_isometric: positive definite lattices required");
  if (l1.det() != l2.det()) {
    cert.refuted_by = "determinant";
    return cert;
  }
  if (l1.is_integral() != l2.is_integral()) {
    cert.refuted_by = "integrality";
    return cert;
  }
  if (l1.is_even() != l2.is_even()) {
    cert.refuted_by = "parity";
    return cert;
  }
  if (l1.gram == l2.gram) {
    cert.isometric = true;
    cert.map = QMat::identity(l1.rank);
    return cert;
  }

  int n = l1.rank;
  // Grow the shell bound until the short vectors of l1 contain a basis.
  ShellTable t1;
  std::vector<std::pair<size_t, size_t>> gen;
  Rat bound = opt.shell_bound;
  {
    Rat b = bound == 0 ? Rat(2) : bound;
    while (true) {
      t1 = collect_shells(l1, b);
      gen = greedy_basis(t1, n);
      if (!gen.empty()) {
        bound = b;
        break;
      }
      if (opt.shell_bound != 0 || b > 64)
        throw DomainError("is_isometric: short vectors do not span up to the bound");
      b += 1;
    }
  }
  ShellTable t2 = collect_shells(l2, bound);
  if (t1.norms != t2.norms) {
    cert.refuted_by = "shell norms";
    return cert;
  }
  for (size_t i = 0; i < t1.norms.size(); ++i)
    if (t1.vecs[i].size() != t2.vecs[i].size()) {
      cert.refuted_by = "shell count at norm " + t1.norms[i].get_str();
      return cert;
    }
  // root datum comparison when roots are among the collected shells
  for (size_t i = 0; i < t1.norms.size(); ++i) {
    if (t1.norms[i] != 2) continue;
    auto to_zvecs = [](const std::vector<I64Vec>& vs) {
      std::vector<ZVec> out;
      for (auto& v : vs) {
        ZVec z(v.size());
        for (size_t t = 0; t < v.size(); ++t) z[t] = (long)v[t];
        out.push_back(std::move(z));
      }
      return out;
    };
    RootDatum d1 = analyze_root_set(l1, to_zvecs(t1.vecs[i])).datum;
    RootDatum d2 = analyze_root_set(l2, to_zvecs(t2.vecs[i])).datum;
    if (d1 != d2) {
      cert.refuted_by = "root datum";
      return cert;
    }
    if (d1.s_invariant() != d2.s_invariant()) {
      cert.refuted_by = "S-invariant";
      return cert;
    }
  }
  if (opt.invariants_only) {
    cert.decided = false;
    return cert;
  }

  // Base = the whole greedy generating set (index 1).  In a positive
  // definite form a Gram-compatible assignment of a generating set preserves
  // all linear relations, so a full assignment is an isometry.
  int k = int(gen.size());
  std::vector<I64Vec> base, base_gram;
  std::vector<size_t> base_shell;
  std::vector<int> gen_pos(k);  // position of gen[j] within the search order
  {
    std::vector<bool> used(gen.size(), false);
    std::vector<int> order;
    for (int step = 0; step < k; ++step) {
      int best = -1;
      long long best_score = 0;
      for (size_t i = 0; i < gen.size(); ++i) {
        if (used[i]) continue;
        const auto& v = t1.vecs[gen[i].first][gen[i].second];
        long long score = 0;
        for (size_t b2 = 0; b2 < base.size(); ++b2) {
          long long p = dot(v, base_gram[b2]);
          score += p * p;
        }
        score = score * 1000000 - (long long)t1.vecs[gen[i].first].size();
        if (best < 0 || score > best_score) {
          best_score = score;
          best = int(i);
        }
      }
      used[best] = true;
      order.push_back(best);
      base.push_back(t1.vecs[gen[best].first][gen[best].second]);
      base_gram.push_back(t1.gram_rows[gen[best].first][gen[best].second]);
      base_shell.push_back(gen[best].first);
    }
    for (int step = 0; step < k; ++step) gen_pos[order[step]] = step;
  }

  std::vector<std::vector<long long>> pairings(k, std::vector<long long>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) pairings[i][j] = dot(base[i], base_gram[j]);

  // integer expression of the standard basis through the generating set
  QMat gen_mat(k, n);
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < n; ++c) gen_mat(j, c) = Rat((long)t1.vecs[gen[j].first][gen[j].second][c]);
  QMat combo;  // k x k transform with combo * gen_mat = [I; 0]
  QMat hh = hnf(gen_mat, &combo);
  assert(hh == QMat::identity(n));

  // Backtracking with forward checking and most-constrained-first ordering:
  // possible[p] holds surviving candidates for base position p under the
  // constraints of all assigned positions; the next position explored is
  // always one with the fewest candidates.
  std::vector<const I64Vec*> image(k, nullptr);
  std::vector<bool> assigned(k, false);
  long long nodes = 0;
  bool out_of_budget = false;

  std::vector<std::vector<int>> init_pool(k);
  for (int d = 0; d < k; ++d) {
    size_t s = base_shell[d];
    init_pool[d].resize(t2.vecs[s].size());
    for (size_t c = 0; c < t2.vecs[s].size(); ++c) init_pool[d][c] = int(c);
  }

  std::function<bool(int, const std::vector<std::vector<int>>&)> search =
      [&](int done, const std::vector<std::vector<int>>& pools) -> bool {
    if (done == k) {
      QMat x(n, n);
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) {
          Rat s = 0;
          for (int j = 0; j < k; ++j)
            if (combo(i, j) != 0) s += combo(i, j) * Rat((long)(*image[gen_pos[j]])[c]);
          x(i, c) = s;
        }
      assert(x.is_integral());
      QMat check = x * l2.gram * x.transpose();
      assert(check == l1.gram);
      cert.map = x;
      return true;
    }
    int pick = -1;
    for (int d = 0; d < k; ++d) {
      if (assigned[d]) continue;
      if (pick < 0 || pools[d].size() < pools[pick].size()) pick = d;
    }
    if (getenv("HYPERLAT_ISOM_TRACE") && done < 6)
      fprintf(stderr, "depth %d pick %d pool %zu\n", done, pick, pools[pick].size());
    size_t s = base_shell[pick];
    const auto& cands = t2.vecs[s];
    const auto& cands_gram = t2.gram_rows[s];
    assigned[pick] = true;
    for (int c : pools[pick]) {
      ++nodes;
      if (nodes > opt.node_budget) {
        out_of_budget = true;
        break;
      }
      image[pick] = &cands[c];
      std::vector<std::vector<int>> next(k);
      bool feasible = true;
      for (int d = 0; d < k && feasible; ++d) {
        if (assigned[d]) continue;
        const auto& gv = cands_gram[c];
        const auto& dc = t2.vecs[base_shell[d]];
        long long want = pairings[d][pick];
        std::vector<int> keep;
        keep.reserve(pools[d].size() / 4 + 4);
        for (int cc : pools[d])
          if (dot(dc[cc], gv) == want) keep.push_back(cc);
        nodes += (long long)pools[d].size() / 16;
        if (keep.empty()) feasible = false;
        next[d] = std::move(keep);
      }
      if (feasible && search(done + 1, next)) return true;
      if (out_of_budget) break;
    }
    assigned[pick] = false;
    return false;
  };

  auto search0 = [&]() { return search(0, init_pool); };

  if (search0()) {
    cert.isometric = true;
    return cert;
  }
  if (out_of_budget) {
    cert.decided = false;
    cert.refuted_by = "search budget exceeded";
    return cert;
  }
  cert.refuted_by = "exhaustive short-vector search";
  return cert;
}

}  // namespace hyperlat
