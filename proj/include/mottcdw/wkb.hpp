#pragma once
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "mottcdw/landau.hpp"

namespace mottcdw {

// Mean coupling of the half-chain in |Q|: -(alpha/4)(1 + |q| - q^2/K).
// Always <= 0; strictly negative for alpha > 0. Requires |q| <= K.
double gamma_mean(double q, const ModelParams& p);

// Q-dependent momentum at energy E. Inside the allowed band
// |E - eps_Q| <= 2|gamma_Q| the momentum is real in [0, pi] with the lower
// band edge E = eps + 2*gamma (gamma < 0) mapping to p = pi and E = eps to
// p = pi/2. Outside it is purely imaginary with magnitude
// arccosh(|E - eps|/(2|gamma|)), the ratio clamped at 1 + 1e-15 against
// rounding. Throws DomainError at alpha = 0 (no band; use the zero-hopping
// landscape instead).
std::complex<double> momentum(double q, double energy, const ModelParams& p);

struct BarrierRecord {
  bool exists = false;
  double height = 0;             // measured from the metastable minimum
  Phase from_phase = Phase::MI;  // which side of the first-order line
};

struct TunnelingResult {
  double action = 0;       // dimensionless A
  double probability = 1;  // exp(-2 K A)
  double log10_lifetime = 0;  // lifetime ~ 1/probability, prefactor unknown
  bool prefactor_known = false;
};

struct WkbProfile {
  std::vector<double> q_grid;  // Q = -K .. K
  std::vector<double> eps;
  std::vector<double> lower;  // eps + 2*gamma  (band bottom, gamma <= 0)
  std::vector<double> upper;  // eps - 2*gamma
  std::optional<double> q_star;  // ridge location Q*/K in (0, 1)
  BarrierRecord barrier;
  std::optional<double> action;  // closed form; set when barrier && alpha > 0
  std::optional<std::pair<double, double>> turning_points;  // (Q1, Q2)
  // Closed-form heights (K/8)(u_s-alpha)^2/(2u_l-alpha) and
  // (K/8)(alpha+u_s-4u_l)^2/(2u_l-alpha); NaN when the phase side does not
  // apply. On the degenerate line both are set (and equal).
  double delta_e_cdw = 0;
  double delta_e_mi = 0;
};

// Band-edge landscape over the discrete Q grid plus the analytic barrier
// record. A barrier exists iff alpha < min(u_s, 4 u_l - u_s); requires
// rho = 1. The height is always measured from the metastable minimum
// (Q = 0 side in the CDW phase, Q = K side in the MI phase).
WkbProfile barrier_analysis(const ModelParams& p);

// Tunneling action across the forbidden region, evaluated BOTH by the closed
// forms and by adaptive quadrature of |p| in the continuum limit; the two
// must agree to 1e-6 relative or a NumericError is thrown. Requires
// alpha > 0; without a barrier returns {0, 1, 0}.
TunnelingResult tunneling_action(const ModelParams& p);

// The two routes, exposed separately (u = u_l/u_s, a = alpha/u_s > 0).
// Both return 0 when no barrier exists.
double tunneling_action_closed(double u, double a);
double tunneling_action_quadrature(double u, double a, double tol = 1e-10);

}  // namespace mottcdw
