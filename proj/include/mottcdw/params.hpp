#pragma once
#include <cmath>
#include <stdexcept>

namespace mottcdw {

// Input violates a documented precondition.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
// A computation failed numerically (non-convergence, cross-route mismatch).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Requested problem size exceeds a hard cap.
struct SizeError : std::length_error {
  using std::length_error::length_error;
};

// Model couplings. Energies are carried in whatever unit u_s is given in;
// the CLI fixes u_s = 1 so everything is reported in units of u_s.
// alpha = 2*sqrt(2)*z*j is always recomputed from j and z, never stored.
struct ModelParams {
  double u_s = 1.0;  // on-site repulsion, > 0
  double u_l = 0.0;  // infinite-range coupling, >= 0
  double j = 0.0;    // hopping amplitude, >= 0
  double rho = 1.0;  // filling N / k_sites, > 0; rho * k_sites must be integral
  int k_sites = 2;   // lattice sites, even, >= 2
  int z = 4;         // coordination number

  double alpha() const { return 2.0 * std::sqrt(2.0) * z * j; }
  void validate() const;  // throws DomainError
};

// Build params from the dimensionless ratios u_l/u_s and alpha/u_s (u_s = 1).
ModelParams params_from_ratios(double u_l_over_us, double alpha_over_us,
                               int k_sites, double rho = 1.0, int z = 4);

}  // namespace mottcdw
