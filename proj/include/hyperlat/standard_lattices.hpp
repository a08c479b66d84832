#pragma once

#include "hyperlat/lattice.hpp"

namespace hyperlat {

// I_n: the odd unimodular cubic lattice.
Lattice identity_lattice(int n);

// ADE root lattice with the canonical chain/fork Gram matrix.
Lattice root_lattice(char family, int n);

inline Lattice e8() { return root_lattice('e', 8); }

// U: two isotropic vectors pairing to -1.
Lattice hyperbolic_plane();

// Rescales the form by an integer (e.g. -1 for -I_n).
Lattice rescale(const Lattice& l, const Rat& c);

// Even unimodular Lorentzian lattice of signature (8k+1, 1) as e8^k + U.
Lattice even_lorentzian(int k);

// I_{m,n}: diag(1,...,1,-1,...,-1).
Lattice odd_lorentzian(int m, int n);

}  // namespace hyperlat
