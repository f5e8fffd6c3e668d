#pragma once
#include <vector>

#include "mottcdw/params.hpp"

namespace mottcdw {

// Effective Hamiltonian in the imbalance eigenbasis: symmetric tridiagonal
// over Q = -K, -K+2, ..., K. Immutable after construction.
struct QHamiltonian {
  int k_sites = 0;
  std::vector<int> q_grid;      // K+1 values
  std::vector<double> diag;     // eps_Q = u_s|Q|/2 - u_l Q^2/K
  std::vector<double> offdiag;  // K couplings between consecutive Q, all <= 0
};

// Requires rho = 1 (the basis is built at unit filling). The coupling between
// Q and Q+2 is -(alpha/4K)(K-Q)(Q+2) for Q >= 0 and -(alpha/4K)(K-|Q|+2)|Q|
// for Q < 0; raising and lowering evaluations of each bond are cross-checked
// to 1e-14 relative.
QHamiltonian build_hamiltonian(const ModelParams& p);

struct ObservablesRecord {
  double theta_abs_mean = 0;  // sum_Q |Q| psi_Q^2 / K, in [0, 1]
  double gap_10 = 0;          // E1 - E0
  double gap_20 = 0;          // E2 - E0
  double entropy_vn = 0;      // -sum psi^2 ln psi^2, in [0, ln(K+1)]
  double fidelity_chi = 0;    // central log-overlap second difference
  bool chi_discontinuity = false;   // overlap below 1e-30; chi reported +inf
  bool chi_step_consistent = true;  // chi(delta/2) within 5% of chi(delta)
};

struct SpectrumResult {
  std::vector<double> energies;           // lowest m, ascending
  std::vector<double> ground_amplitudes;  // psi_Q on q_grid, normalized;
                                          // largest-|psi_Q| entry positive
  bool degenerate_ground = false;
  ObservablesRecord observables;  // filled by observables()
};

// Lowest m eigenpairs, 2 <= m <= K+1. Solved per reflection sector
// (symmetric / antisymmetric in Q -> -Q), so psi_Q = psi_{-Q} holds by
// construction for alpha > 0. alpha = 0 uses the diagonal path with the
// largest-Q convention on degenerate ground states (flagged).
SpectrumResult ground_state(const QHamiltonian& h, int m);

// Observables of the solved spectrum. Needs at least 3 energies. fidelity_chi
// uses delta = 1e-4 * u_s with a step-halving consistency check (5% relative
// with a small absolute floor against cancellation noise at chi ~ 0);
// one-sided at the u_l < delta edge. Ground-state overlap below 1e-30 marks a
// level crossing: chi = +inf and chi_discontinuity = true. Pass
// with_chi = false to skip the four extra diagonalizations (chi = NaN).
ObservablesRecord observables(const SpectrumResult& s, const QHamiltonian& h,
                              const ModelParams& p, bool with_chi = true);

}  // namespace mottcdw
