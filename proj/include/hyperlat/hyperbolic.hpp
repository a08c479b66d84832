#pragma once

#include <optional>

#include "hyperlat/rootsys.hpp"

namespace hyperlat {

// Extreme rays of the rational polyhedral cone {x : a_i . x <= 0} given by
// functional rows; empty when the constraints leave a lineality space.
std::vector<QVec> cone_extreme_rays(const std::vector<QVec>& functionals, int dim);

struct VinbergOptions {
  std::vector<Rat> root_norms = {Rat(1), Rat(2)};
  int max_roots = 64;
  Rat max_distance = 20;  // cap on -(r,w)/r^2
};

struct VinbergRun {
  QVec controlling;
  std::vector<ZVec> simple_roots;  // acceptance order
  std::vector<Rat> distance_keys;  // nondecreasing
  enum class Termination { finite_volume, root_budget, distance_budget } termination;
  bool finite_volume_proven = false;
};

// Vinberg's algorithm on a Lorentzian lattice with a controlling vector of
// negative norm (the isotropic case is served by the II_25,1 model below).
VinbergRun vinberg(const Lattice& l, const QVec& controlling, const VinbergOptions& opt = {});

// Checks that a set of accepted roots bounds a finite-volume polyhedron:
// full rank and every extreme ray of the walled cone has norm <= 0.
bool finite_volume(const Lattice& l, const std::vector<ZVec>& roots);

// Adjacency structure of the accepted roots as a Coxeter-style diagram.
struct DiagramShape {
  int nodes = 0;
  std::vector<std::vector<int>> adjacency;  // bond strengths -(r,s)
  // For simply-laced trees: leg lengths from the unique branch node.
  std::optional<std::vector<int>> tree_legs;
};
DiagramShape diagram_shape(const Lattice& l, const std::vector<ZVec>& roots);

// ---------------------------------------------------------------------------
// The Leech model of II_25,1: coordinates (lambda, m, n) with norm
// lambda^2 - 2 m n, Weyl vector w = (0,0,1), and the fundamental domain D
// whose simple roots are (lambda, 1, lambda^2/2 - 1) for lambda in Leech.

class LeechModel {
 public:
  explicit LeechModel(Lattice leech_gram);

  const Lattice& leech() const { return leech_; }
  const Lattice& full() const { return full_; }
  const Enumerator& leech_enum() const { return en_; }
  int dim() const { return leech_.rank + 2; }

  // coordinate helpers: a vector is (lambda | m, n)
  QVec make(const QVec& lambda, const Rat& m, const Rat& n) const;
  QVec lambda_part(const QVec& v) const;
  Rat m_of(const QVec& v) const { return v[leech_.rank]; }
  Rat n_of(const QVec& v) const { return v[leech_.rank + 1]; }
  Rat norm(const QVec& v) const { return full_.norm(v); }
  Rat inner(const QVec& x, const QVec& y) const { return full_.inner(x, y); }
  QVec weyl_w() const;  // (0,0,1)

  Rat height(const QVec& v) const { return m_of(v); }  // -(v, w)

  // the simple root of D attached to a Leech point
  QVec simple_root(const QVec& lambda) const;

  // Simple roots of D pairing -i with u: Leech points on the sphere
  // |lambda - v/a|^2 = 2 + u^2/a^2 + 2 i / a  (a = height of u).
  std::vector<QVec> r_set(const QVec& u, int i) const;

  // Norm-0 vectors z in the positive cone with -(z, u) = i, including
  // imprimitive ones; z = (lambda, a, lambda^2/2a) plus multiples of w.
  long long norm0_count(const QVec& u, int i) const;
  std::vector<QVec> norm0_vectors(const QVec& u, int i) const;

  // smallest -(u,z) over norm-0 z; 0 iff u has norm 0.  Capped search.
  int vector_type(const QVec& u, int cap = 5) const;

  // Reflects v into D; returns the image and word length.  tie_choice picks
  // among violating simple roots (0 = nearest; used to check independence).
  std::pair<QVec, int> reduce_to_domain(const QVec& v, unsigned tie_choice = 0) const;

  bool in_domain(const QVec& v) const;

  // The even unimodular lattice z^perp / z for a primitive isotropic z.
  Lattice norm0_classify(const QVec& z) const;

  // z-map to Leech space: lambda/m, or nullopt for multiples of w (infinity).
  std::optional<QVec> z_map(const QVec& u) const;

 private:
  Lattice leech_;
  Lattice full_;
  Enumerator en_;
};

}  // namespace hyperlat
