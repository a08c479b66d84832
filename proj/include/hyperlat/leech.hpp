#pragma once

#include "hyperlat/hyperbolic.hpp"
#include "hyperlat/neighbor.hpp"

namespace hyperlat {

struct NiemeierRecord {
  Lattice lattice;     // even unimodular, rank 24
  RootDatum datum;
  int coxeter = 0;     // h, 0 for the rootless one
  QVec weyl_vector;    // rho in lattice coordinates (integral, in N)
  Int glue_count = 0;  // sqrt(det R) when rooted
};

NiemeierRecord make_niemeier_record(const Lattice& n24);

// One Coxeter-halving step: the quotient by (rho, h, h+1) in N + U.
NiemeierRecord halve_step(const NiemeierRecord& n);

// Iterates halving to the rootless fixpoint; the result is the canonical
// Leech lattice representative used across the library.
Lattice leech_by_halving(const Lattice& seed_niemeier);

// Canonical Leech gram: halving chain from the even neighbor of I24.
const Lattice& leech_lattice();

// The construction through the Weyl vector of A1 + I^(25-dim): builds
// A + (-I), takes an even neighbor, and quotients by (rho, sqrt(rho^2)).
Lattice leech_from_small(const Lattice& a1);

// The generator system f_i (extended diagram) and g_i = v_i - rho/h.
struct HolyConstruction {
  Lattice result;               // rank 24, to be compared with leech_lattice()
  std::vector<QVec> f;          // in N coordinates
  std::vector<QVec> g;
  Int glue_count;
};
HolyConstruction holy_construction(const NiemeierRecord& n);

struct HoleRecord {
  std::string niemeier_datum;
  Lattice leech_copy;        // the Leech copy the center lives in
  QVec center;               // in leech_copy coordinates, rational
  Rat radius_sq;             // always 2 for deep holes
  std::vector<ZVec> vertices;
  RootDatum vertex_datum;    // finite datum of the affine vertex diagram
};

// The deep hole of the Leech lattice attached to one rooted Niemeier class.
HoleRecord deep_hole_of(const NiemeierRecord& n);

// All 23 deep-hole classes given the rooted Niemeier inventory.
std::vector<HoleRecord> deep_holes(const std::vector<NiemeierRecord>& rooted);

// Distance on the space of primitive isotropic rays: -2(z1,z2)/(h1 h2).
Rat z_space_distance(const LeechModel& model, const QVec& z1, const QVec& z2);

// The even unimodular overlattice of a root lattice with no extra roots,
// found by a deterministic glue-code search; empty result when none exists.
std::optional<Lattice> even_overlattice_no_new_roots(const RootDatum& datum);

// The 26-dimensional unimodular lattice with no roots, built from the
// norm -10 vector z + w where z has type a4^6.
struct Lattice26 {
  Lattice lattice;
  ZVec characteristic;  // a norm-10 characteristic vector
};
Lattice26 lattice26_noroots(const LeechModel& model, const QVec& z_a46);

}  // namespace hyperlat
