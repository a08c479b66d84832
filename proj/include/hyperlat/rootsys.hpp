#pragma once

#include <map>
#include <string>

#include "hyperlat/enumerate.hpp"

namespace hyperlat {

// Multiset of simply-laced component types.  d2 and d3 are normalized to
// a1^2 and a3 on insertion.
class RootDatum {
 public:
  RootDatum() = default;

  void add(char family, int n, int multiplicity = 1);
  void add(const RootDatum& other);

  bool empty() const { return comps_.empty(); }
  int rank() const;
  long long root_count() const;
  int component_count() const;
  int s_invariant() const;
  Rat weyl_norm() const;  // sum of h(h+1)n/12 over components

  const std::map<std::pair<char, int>, int>& components() const { return comps_; }

  // Grammar: lowercase family + rank, "^k" multiplicity, space separated
  // ("a1^24", "d16 e8"); "" denotes the empty datum.
  std::string to_string() const;
  static RootDatum parse(const std::string& s);

  auto operator<=>(const RootDatum&) const = default;

 private:
  std::map<std::pair<char, int>, int> comps_;
};

int coxeter_number(char family, int n);

struct RootComponent {
  char family;
  int n;                        // rank
  std::vector<int> nodes;       // indices into the simple root list
  int coxeter;                  // h
  std::vector<Int> weights;     // per node, aligned with `nodes`
  ZVec highest_root;            // representative in the chamber
};

struct RootSystem {
  Lattice lattice;              // ambient lattice (shared by all vectors below)
  std::vector<ZVec> roots;      // all norm-2 vectors
  std::vector<ZVec> simple;     // thesis-sign simple roots: (x,r) <= 0 on the chamber
  std::vector<RootComponent> components;
  RootDatum datum;
  QVec rho;                     // Weyl vector: (rho, r) = -1 for every simple root
  Rat rho_norm;

  long long root_count() const { return (long long)roots.size(); }
  int rank() const { return int(simple.size()); }
  Rat inner(const QVec& x, const QVec& y) const { return lattice.inner(x, y); }
};

// Enumerates the norm-2 vectors of a positive definite lattice and organizes
// them: deterministic chamber choice by lexicographic positivity.
RootSystem identify_roots(const Lattice& l);

// Same analysis for an externally supplied, negation-closed root set.
RootSystem analyze_root_set(const Lattice& l, std::vector<ZVec> roots);

Rat weyl_vector_norm(const RootDatum& r);

// One minimal (minuscule) vector per dual coset with its norm.
struct MinimalVectors {
  std::vector<QVec> reps;   // dual coordinates
  std::vector<Rat> norms;
};
MinimalVectors minimal_vectors(const Lattice& root_lattice);

// Per-component action of the opposition involution: false = identity,
// true = diagram flip.
bool opposition_flips(char family, int n);

int s_invariant(const RootDatum& r);

struct SubsystemEntry {
  RootDatum datum;
  enum class Kind { prime_index, corank_one } kind;
  int prime = 0;  // for prime_index entries
};
std::vector<SubsystemEntry> maximal_subsystems(char family, int n);

// One row of the norm-4 vector classification.
struct Norm4Row {
  RootDatum r;        // components meeting the vector with product 2
  RootDatum r1;       // component of s^perp containing r - s
  RootDatum r2;       // roots of those components orthogonal to the vector
  long long m = 0;    // roots with inner product 2
  Int t = 0;          // maximal height over the Weyl orbit
  Rat c = 0;          // characteristic-count invariant; t = m + 2^(m/2-2) c
  bool minimal_case = false;  // not a sum of two orthogonal roots
};
Norm4Row classify_norm4(const RootSystem& rs, const ZVec& r);

// Extended (affine) diagram: simple roots plus per-component highest roots.
struct ExtendedDiagram {
  std::vector<ZVec> nodes;          // simple roots then one affine node per component
  std::vector<std::vector<Int>> weights;  // per component, affine node weight 1 last
  QMat bonds;                       // pairwise inner products
  std::vector<std::vector<int>> component_nodes;  // node indices per component
};
ExtendedDiagram extended_diagram(const RootSystem& rs);

// Reduces v into the closed chamber of the root system (all products with
// simple roots <= 0) by reflections; returns the image and the word length.
std::pair<QVec, int> chamber_reduce(const RootSystem& rs, QVec v);

// Opposition involution as an explicit linear map on the ambient lattice:
// acts as the diagram involution on the root span and as -1 on its
// orthogonal complement.
QMat opposition_matrix(const RootSystem& rs);

// Greedy-plus-backtracking search for a maximum set of pairwise orthogonal
// roots; exact maximum (used against the S-invariant).
int max_orthogonal_roots(const RootSystem& rs);

std::string dynkin_dot(const RootSystem& rs);

}  // namespace hyperlat
