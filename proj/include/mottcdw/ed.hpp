#pragma once
#include "mottcdw/lattice.hpp"
#include "mottcdw/params.hpp"

namespace mottcdw {

struct EdResult {
  double energy = 0;
  int iterations = 0;
  long basis_dim = 0;
};

// Ground energy of
//   H = sum_i (u_s/2) n_i(n_i-1) - (u_l/K) Theta^2
//       - j * sum_edges (b_i^+ b_j + b_j^+ b_i)
// on the fixed-N sector (N = rho * n_sites) with per-site occupation cap.
// Matrix-free Lanczos with full reorthogonalization; j = 0 short-circuits to
// the diagonal minimum. Hilbert dimension capped at 2e6 (SizeError beyond);
// non-convergence raises NumericError with the iteration count.
EdResult exact_diagonalize(const LatticeGraph& g, const ModelParams& p,
                           int occupation_cap);

}  // namespace mottcdw
