#pragma once

#include "hyperlat/rootsys.hpp"

namespace hyperlat {

// Outcome of an isometry test.  When isometric, `map` rows express the images
// of the first lattice's basis in the second lattice's coordinates, so
// map * G2 * map^T = G1 exactly.
struct IsometryCertificate {
  bool isometric = false;
  bool decided = true;  // false when the search budget ran out
  QMat map;
  std::string refuted_by;  // name of the first distinguishing invariant
};

struct IsometryOptions {
  Rat shell_bound = 0;      // 0: grow automatically until vectors span
  long long node_budget = 400000000;
  bool invariants_only = false;
};

IsometryCertificate is_isometric(const Lattice& l1, const Lattice& l2,
                                 const IsometryOptions& opt = {});

// Cheap invariant profile used for bucketing before full isometry tests.
struct LatticeInvariants {
  int rank = 0;
  Rat det;
  bool even = false;
  std::vector<std::pair<Rat, long long>> shell_counts;  // up to the chosen bound
  std::string root_datum;
  std::string to_key() const;
};
LatticeInvariants lattice_invariants(const Lattice& l, const Rat& shell_bound = 4);

}  // namespace hyperlat
