#pragma once

#include <string>

#include "hyperlat/matrix.hpp"

namespace hyperlat {

// A lattice is carried by its Gram matrix alone.  Vectors are coordinate rows
// in the (abstract) basis; integer rows are lattice members, rational rows
// live in the dual or the ambient rational span.
struct Lattice {
  int rank = 0;
  QMat gram;  // symmetric, exact rational entries
  std::string label;

  Lattice() = default;
  Lattice(QMat g, std::string lab = "");

  bool is_integral() const { return gram.is_integral(); }
  bool is_even() const;
  Rat det() const { return gram.det(); }
  bool is_unimodular() const { return is_integral() && abs(det()) == 1; }

  // Signs of an exact congruence diagonalization: (positive, negative, zero).
  struct Signature {
    int pos = 0, neg = 0, zero = 0;
  };
  Signature signature() const;
  bool is_positive_definite() const;
  bool is_lorentzian() const;  // signature (n, 1)

  Rat inner(const QVec& x, const QVec& y) const { return hyperlat::inner(gram, x, y); }
  Rat norm(const QVec& x) const { return inner(x, x); }
};

struct DiscriminantGroup {
  std::vector<QVec> generators;  // dual coordinates, one per cyclic factor
  std::vector<Int> orders;       // d_1 | d_2 | ..., each > 1
  std::vector<Rat> q_values;     // generator norms mod 2 (even case) / mod 1 (odd)
  Int order() const {
    Int o = 1;
    for (const auto& d : orders) o *= d;
    return o;
  }
};

struct GluedOverlattice {
  Lattice base;
  std::vector<QVec> glue;  // rational coordinates in the base's basis
  Lattice result;
  QMat result_basis;  // rows: result basis in base coordinates
  Int index;          // [result : base]
};

Rat inner_product(const Lattice& l, const QVec& x, const QVec& y);

// Rows of gram^-1: dual generators paired dually with the basis.
std::vector<QVec> dual_basis(const Lattice& l);

DiscriminantGroup discriminant_group(const Lattice& l);

Lattice direct_sum(const Lattice& a, const Lattice& b);

// Adjoins glue vectors and completes to a canonical basis by Hermite normal
// form over a common denominator.  det(result) * index^2 = det(base).
GluedOverlattice glue(const Lattice& base, const std::vector<QVec>& glue_vectors);

// Gram matrix of w^perp / <w> for a primitive isotropic w in a Lorentzian
// lattice; the returned map sends result coordinates to coordinates of l.
struct IsotropicQuotient {
  Lattice lattice;
  QMat lift;  // rows: quotient basis representatives in l's coordinates
  QVec w;
};
IsotropicQuotient isotropic_quotient(const Lattice& l, const QVec& w);

// All characteristic vectors c (i.e. (c,v) = v^2 mod 2 for all v) with
// c^2 <= norm_bound, in a positive definite unimodular lattice.
std::vector<ZVec> characteristic_vectors(const Lattice& l, const Rat& norm_bound);

// One solution of (c, v_j) = (v_j)^2 mod 2 over the basis; any lift works.
ZVec characteristic_class(const Lattice& l);

bool is_primitive(const ZVec& v);

// Smallest positive-norm scaling data: v / content(v).
ZVec primitive_part(const ZVec& v);

}  // namespace hyperlat
