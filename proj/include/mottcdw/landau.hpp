#pragma once
#include <vector>

#include "mottcdw/params.hpp"

namespace mottcdw {

enum class Phase { MI, CDW, Degenerate, Compressible };
const char* phase_name(Phase p);  // "MI", "CDW", "degenerate", "compressible"

// Minimal zero-hopping interaction energy density of one sub-lattice at
// filling rho_x (occupations as equal as possible):
//   phi(x) = u_s * floor(x) * (x - (1 + floor(x)) / 2).
// Exact; the floor is never smoothed. Throws DomainError for rho_x < 0.
double phi(double rho_x, double u_s);

// Zero-hopping energy density at imbalance theta:
//   f(theta) = -u_l*theta^2 + [phi(rho+theta) + phi(rho-theta)] / 2.
// At rho = 1 this equals -u_l*theta^2 + (u_s/2)*|theta|.
// Throws DomainError for |theta| > rho.
double landau_f(double theta, const ModelParams& p);

struct Extremum {
  enum class Kind { GlobalMin, LocalMin, Maximum };
  double theta = 0;
  double f = 0;  // same unit as u_s
  Kind kind = Kind::GlobalMin;
};
const char* kind_name(Extremum::Kind k);  // "global-min", "local-min", "maximum"

struct LandauCurve {
  std::vector<double> theta_grid;  // theta in [-rho, rho]
  std::vector<double> f_values;
  std::vector<Extremum> extrema;   // ascending in theta
  Phase phase = Phase::MI;         // MI, CDW or Degenerate
};

// Sample f on [-rho, rho] with n_grid points and classify the landscape.
// Integer filling rho = 1 uses the analytic extremum set (theta = 0 minimum
// always; theta = +-1 minima iff u_l >= u_s/4; interior maxima at
// +-u_s/(4 u_l) when they are strictly inside). Other fillings use
// three-point detection on the grid. Tie tolerance 1e-12 * u_s; an
// MI/CDW tie within it is labeled Degenerate. Any symmetry-broken global
// minimum is labeled CDW.
LandauCurve classify_landscape(const ModelParams& p, int n_grid = 2001);

}  // namespace mottcdw
