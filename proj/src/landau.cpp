#include "mottcdw/landau.hpp"

#include <algorithm>
#include <cmath>

namespace mottcdw {

void ModelParams::validate() const {
  if (!(u_s > 0)) throw DomainError("u_s must be > 0");
  if (!(u_l >= 0)) throw DomainError("u_l must be >= 0");
  if (!(j >= 0)) throw DomainError("j must be >= 0");
  if (!(rho > 0)) throw DomainError("rho must be > 0");
  if (k_sites < 2 || k_sites % 2 != 0)
    throw DomainError("k_sites must be even and >= 2");
  if (z < 1) throw DomainError("z must be >= 1");
  const double n = rho * k_sites;
  if (std::abs(n - std::round(n)) > 1e-9)
    throw DomainError("rho * k_sites must be an integer particle number");
}

ModelParams params_from_ratios(double u_l_over_us, double alpha_over_us,
                               int k_sites, double rho, int z) {
  ModelParams p;
  p.u_s = 1.0;
  p.u_l = u_l_over_us;
  p.k_sites = k_sites;
  p.rho = rho;
  p.z = z;
  p.j = alpha_over_us / (2.0 * std::sqrt(2.0) * z);
  p.validate();
  return p;
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::MI: return "MI";
    case Phase::CDW: return "CDW";
    case Phase::Degenerate: return "degenerate";
    case Phase::Compressible: return "compressible";
  }
  return "?";
}

const char* kind_name(Extremum::Kind k) {
  switch (k) {
    case Extremum::Kind::GlobalMin: return "global-min";
    case Extremum::Kind::LocalMin: return "local-min";
    case Extremum::Kind::Maximum: return "maximum";
  }
  return "?";
}

double phi(double rho_x, double u_s) {
  if (!(rho_x >= 0)) throw DomainError("sub-lattice density must be >= 0");
  const double fl = std::floor(rho_x);
  return u_s * fl * (rho_x - 0.5 * (1.0 + fl));
}

double landau_f(double theta, const ModelParams& p) {
  if (std::abs(theta) > p.rho) throw DomainError("|theta| must be <= rho");
  return -p.u_l * theta * theta +
         0.5 * (phi(p.rho + theta, p.u_s) + phi(p.rho - theta, p.u_s));
}

namespace {

// Analytic extremum set at unit filling, where f = -u_l t^2 + (u_s/2)|t|.
void classify_unit_filling(const ModelParams& p, double tol, LandauCurve& c) {
  const double f_edge = 0.5 * p.u_s - p.u_l;  // f(+-1)
  const double f_min = std::min(0.0, f_edge);
  const bool edge_is_min = p.u_l >= 0.25 * p.u_s - tol;
  const bool interior_max = p.u_l > 0.25 * p.u_s + tol;  // theta* strictly < 1
  auto min_kind = [&](double f) {
    return f <= f_min + tol ? Extremum::Kind::GlobalMin
                            : Extremum::Kind::LocalMin;
  };
  auto& ex = c.extrema;
  double ts = 0, fs = 0;
  if (interior_max) {
    ts = p.u_s / (4.0 * p.u_l);
    fs = -p.u_l * ts * ts + 0.5 * p.u_s * ts;
  }
  if (edge_is_min) ex.push_back({-1.0, f_edge, min_kind(f_edge)});
  if (interior_max) ex.push_back({-ts, fs, Extremum::Kind::Maximum});
  ex.push_back({0.0, 0.0, min_kind(0.0)});
  if (interior_max) ex.push_back({ts, fs, Extremum::Kind::Maximum});
  if (edge_is_min) ex.push_back({1.0, f_edge, min_kind(f_edge)});
  c.phase = std::abs(f_edge) <= tol ? Phase::Degenerate
            : (f_edge < 0 ? Phase::CDW : Phase::MI);
}

// Three-point discrete detection with tie tolerance, endpoints included.
void classify_on_grid(double tol, LandauCurve& c) {
  const auto& t = c.theta_grid;
  const auto& f = c.f_values;
  const int n = static_cast<int>(f.size());
  auto& ex = c.extrema;
  if (f[0] < f[1] - tol)
    ex.push_back({t[0], f[0], Extremum::Kind::LocalMin});
  for (int i = 1; i + 1 < n; ++i) {
    if (f[i] < f[i - 1] - tol && f[i] < f[i + 1] - tol)
      ex.push_back({t[i], f[i], Extremum::Kind::LocalMin});
    else if (f[i] > f[i - 1] + tol && f[i] > f[i + 1] + tol)
      ex.push_back({t[i], f[i], Extremum::Kind::Maximum});
  }
  if (f[n - 1] < f[n - 2] - tol)
    ex.push_back({t[n - 1], f[n - 1], Extremum::Kind::LocalMin});

  const double f_min = *std::min_element(f.begin(), f.end());
  const double step = t[1] - t[0];
  bool center_global = false, broken_global = false;
  for (auto& e : ex) {
    if (e.kind != Extremum::Kind::LocalMin || e.f > f_min + tol) continue;
    e.kind = Extremum::Kind::GlobalMin;
    (std::abs(e.theta) < 0.5 * step ? center_global : broken_global) = true;
  }
  c.phase = center_global && broken_global ? Phase::Degenerate
            : (broken_global ? Phase::CDW : Phase::MI);
}

}  // namespace

LandauCurve classify_landscape(const ModelParams& p, int n_grid) {
  p.validate();
  if (n_grid < 3) throw DomainError("n_grid must be >= 3");
  const double tol = 1e-12 * p.u_s;
  LandauCurve c;
  c.theta_grid.resize(n_grid);
  c.f_values.resize(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    double t = -p.rho + 2.0 * p.rho * i / (n_grid - 1);
    t = std::clamp(t, -p.rho, p.rho);
    c.theta_grid[i] = t;
    c.f_values[i] = landau_f(t, p);
  }
  if (p.rho == 1.0)
    classify_unit_filling(p, tol, c);
  else
    classify_on_grid(tol, c);
  return c;
}

}  // namespace mottcdw
