#pragma once

#include <functional>
#include <map>

#include "hyperlat/lattice.hpp"

namespace hyperlat {

struct VectorShell {
  Rat norm_sq;  // norm, or squared distance from the center
  std::vector<ZVec> vectors;
};

struct EnumerateOptions {
  long long max_vectors = 100000000;  // typed budget on emitted vectors
  long long max_nodes = 4000000000;   // guard on tree size
};

// Exact lattice point enumeration inside a sphere, over a cached
// decomposition Q(y) = sum_i q_ii (y_i + sum_{j>i} q_ij y_j)^2.
class Enumerator {
 public:
  explicit Enumerator(const Lattice& l);

  const Lattice& lattice() const { return l_; }

  // Visits every integer row x with (x - c) G (x - c)^T <= radius_sq in a
  // fixed deterministic order; the callback receives x and its exact squared
  // distance from c.
  void enumerate(const QVec& center, const Rat& radius_sq,
                 const std::function<void(const ZVec&, const Rat&)>& visit,
                 const EnumerateOptions& opt = {}) const;

  std::vector<VectorShell> shells(const QVec& center, const Rat& radius_sq,
                                  const EnumerateOptions& opt = {}) const;

  // Counts points per squared distance without storing them.
  std::map<Rat, long long> shell_counts(const QVec& center, const Rat& radius_sq,
                                        const EnumerateOptions& opt = {}) const;

  // All closest lattice points to the center, with the squared distance.
  VectorShell closest(const QVec& center, const EnumerateOptions& opt = {}) const;

  // Least squared distance only (branch-and-bound, no vector storage).
  Rat min_distance_sq(const QVec& center, const EnumerateOptions& opt = {}) const;

  // Squared distance of the Babai rounding, an upper bound for the minimum.
  Rat babai_bound(const QVec& center) const;

  // Zig-zag traversal with a shrinkable bound: the callback returns the new
  // bound (at most the current one), enabling branch-and-bound queries.
  void enumerate_dynamic(const QVec& center, Rat bound,
                         const std::function<Rat(const ZVec&, const Rat&, const Rat&)>& visit,
                         const EnumerateOptions& opt = {}) const;

  // Machine-integer variant: vectors arrive as int64 rows without any
  // bignum traffic.  Falls back to the rational path transparently.
  void enumerate64(const QVec& center, const Rat& radius_sq,
                   const std::function<void(const long long*, const Rat&)>& visit,
                   const EnumerateOptions& opt = {}) const;

 private:
  bool enumerate_dynamic_int(
      const QVec& center, Rat bound,
      const std::function<Rat(const ZVec&, const Rat&, const Rat&)>* visit,
      const std::function<Rat(const long long*, const Rat&, const Rat&)>* visit64,
      const EnumerateOptions& opt) const;

  template <class I>
  bool enumerate_dynamic_typed(
      const QVec& center, Rat bound, int bits,
      const std::function<Rat(const ZVec&, const Rat&, const Rat&)>* visit,
      const std::function<Rat(const long long*, const Rat&, const Rat&)>* visit64,
      const EnumerateOptions& opt) const;

  Lattice l_;        // original lattice
  Lattice red_;      // LLL-preconditioned copy used internally
  QMat u_, u_inv_;   // red basis in l_ coordinates and its inverse
  QMat q_;           // cholesky-style decomposition of red_
  std::vector<std::vector<long long>> u64_;  // u_ as machine ints when small
};

std::vector<VectorShell> enumerate_shells(const Lattice& l, const QVec& center,
                                          const Rat& radius_sq,
                                          const EnumerateOptions& opt = {});

// Nonzero shells up to and including radius_sq, center 0.
std::vector<VectorShell> short_vectors(const Lattice& l, const Rat& radius_sq,
                                       const EnumerateOptions& opt = {});

VectorShell closest_vectors(const Lattice& l, const QVec& center,
                            const EnumerateOptions& opt = {});

// Exact LLL basis reduction; returns the reduced lattice and the unimodular
// basis change (rows of `transform` express the new basis in the old one).
struct ReducedLattice {
  Lattice lattice;
  QMat transform;
};
ReducedLattice lll_reduce(const Lattice& l);

}  // namespace hyperlat
