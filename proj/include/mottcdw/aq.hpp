#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "mottcdw/lattice.hpp"

namespace mottcdw {

// Exact squared norms A(Q) of the repeated projected sub-lattice hopping
// chain on the unit-filling state, Q = 0, 2, ..., up to q_max (default: all).
struct NormalizationTable {
  std::string method;  // "operator-construction" | "matching-sum" | "distorted-formula"
  std::vector<int> q;
  std::vector<mpz_class> a;  // A(q[i]); 0 beyond the maximum reachable Q
};

// Route 1: apply the projected even-raising hop (occupations capped at 2) to
// the unit-filling state Q/2 times and record squared norms. In the rescaled
// convention (1/sqrt(2) per created double) every allowed hop has amplitude
// exactly 1, so the arithmetic is exact integers. n_sites <= 12.
NormalizationTable aq_by_operator(const LatticeGraph& g, int q_max = -1);

// Route 2: A(2n) = (n!)^2 * sum over coverable 2n-site subsets R of
// (number of perfect matchings of R)^2, by bitmask DP. n_sites <= 16.
NormalizationTable aq_by_matching(const LatticeGraph& g, int q_max = -1);

// All-to-all (distorted hopping) state count: C(K/2, Q/2)^2, exact.
// On complete-bipartite graphs the operator route satisfies
// A_op(Q) = ((Q/2)!)^4 * aq_distorted(K, Q).
mpz_class aq_distorted(int k_sites, int q);

struct MatrixElementReport {
  int k_sites = 0;
  bool ok = false;
  // max |measured - sqrt(2)(K-Q)(Q+2)/K^2| over Q, single even-odd pair on
  // normalized all-to-all states
  double max_element_error = 0;
  // max residual of [Theta, T_e] - 2 T_e and [Theta, T_o] + 2 T_o over all
  // transitions, unprojected operators on the full fixed-N space
  double max_commutator_residual = 0;
  // same for the projected operators on the capped space (also exact: the
  // projector is diagonal in the occupation basis and commutes with Theta)
  double max_projected_commutator_residual = 0;
  // relation A_op(Q) == ((Q/2)!)^4 C(K/2,Q/2)^2 held exactly
  bool distorted_relation_exact = false;
};

// Cross-checks on the complete-bipartite graph with k_sites <= 10.
MatrixElementReport matrix_element_check(int k_sites);

// Squared norms of (projected hop)^n and (unprojected hop)^n applied to the
// unit-filling state, n = 0..n_max, rescaled convention. Projection strictly
// lowers the norm once triple occupancy becomes reachable (n >= 2).
struct NormChains {
  std::vector<double> projected;
  std::vector<double> unprojected;
};
NormChains projected_vs_unprojected_norms(const LatticeGraph& g, int n_max);

}  // namespace mottcdw
