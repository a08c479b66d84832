#pragma once

#include "hyperlat/isometry.hpp"

namespace hyperlat {

// Coset representatives of Z^n modulo the row span of an integral matrix.
std::vector<ZVec> coset_transversal(const QMat& sublattice_rows);

// The even sublattice of an odd integral lattice, with its basis in the
// original coordinates.
struct EvenSublattice {
  Lattice lattice;
  QMat basis;  // rows: basis in the original coordinates
};
EvenSublattice even_sublattice(const Lattice& odd);

// The two even unimodular neighbors of an odd unimodular lattice whose
// signature is divisible by 8.  Works for definite and Lorentzian input.
struct EvenNeighbors {
  Lattice first, second;
  QMat first_basis, second_basis;  // rows: neighbor basis in input coordinates
};
EvenNeighbors even_neighbors(const Lattice& a);

// One odd unimodular neighbor of an even unimodular lattice, determined by a
// vector b with b^2 = 0 mod 4 (only the class of b mod 2B matters).
struct OddNeighbor {
  Lattice lattice;
  QMat basis;        // rows in B coordinates
  Int class_norm;    // minimal norm of the class of b mod 2B
  ZVec class_rep;    // canonical minimal representative
};
OddNeighbor odd_neighbor_of(const Lattice& b_even, const ZVec& b);

// Canonical minimal representative of b mod 2B (lexicographically least
// among the minimal-norm vectors of the class, which is negation closed).
struct ClassRep {
  ZVec rep;
  Int norm;           // -1 when the search was capped and nothing was found
  long long min_count = 0;  // number of minimal vectors in the class
};
ClassRep minimal_class_rep(const Enumerator& en, const ZVec& b, const Int& norm_cap = -1);

struct OddNeighborOptions {
  long long max_candidates = 200000;
  bool skip_norm4_classes = false;  // norm-4 classes give lattices with unit vectors
};

// Budgeted enumeration of odd unimodular neighbors up to isometry: candidate
// classes come from glue-coset minimal vectors and orthogonal root sums;
// results are deduplicated by invariants and confirmed by isometry search.
std::vector<OddNeighbor> odd_neighbors(const Lattice& b_even,
                                       const OddNeighborOptions& opt = {});

struct NeighborNode {
  Lattice lattice;       // canonical (LLL-reduced) representative
  std::string datum;     // root datum string
  LatticeInvariants invariants;
};

struct NeighborEdge {
  Lattice odd_lattice;   // no norm-1 vectors
  std::string datum;
  int even_a = -1, even_b = -1;  // node indices of the two even neighbors
};

struct NeighborGraph {
  std::vector<NeighborNode> even_nodes;
  std::vector<NeighborEdge> odd_edges;
  // odd classes containing norm-1 vectors, keyed by their stripped core
  std::vector<NeighborNode> odd_unit_classes;
  bool complete = true;  // false when a budget stopped the expansion

  // all unimodular classes of this dimension: evens + edges + unit classes
  size_t class_count() const {
    return even_nodes.size() + odd_edges.size() + odd_unit_classes.size();
  }
};

struct ClassifyOptions {
  OddNeighborOptions odd;
  long long max_rounds = 64;
};

// Closes the even/odd neighbor graph starting from one unimodular lattice of
// dimension 8, 16, or 24.
NeighborGraph classify_dimension(int dim, const Lattice& start,
                                 const ClassifyOptions& opt = {});

// Strips the norm-1 frame: the orthogonal complement of all norm-1 vectors.
struct StrippedLattice {
  Lattice lattice;
  QMat basis;
  int unit_count = 0;  // number of norm-1 vectors removed (counting both signs)
};
StrippedLattice strip_unit_vectors(const Lattice& l);

}  // namespace hyperlat
