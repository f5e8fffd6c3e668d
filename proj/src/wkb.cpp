#include "mottcdw/wkb.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace mottcdw {

double gamma_mean(double q, const ModelParams& p) {
  p.validate();
  const double aq = std::abs(q);
  if (aq > p.k_sites + 1e-9)
    throw DomainError("gamma_mean: |q| exceeds the number of sites");
  return -0.25 * p.alpha() * (1.0 + aq - q * q / p.k_sites);
}

std::complex<double> momentum(double q, double energy, const ModelParams& p) {
  p.validate();
  if (p.alpha() <= 0.0)
    throw DomainError("momentum: undefined at zero hopping");
  const double g = gamma_mean(q, p);
  const double eps =
      0.5 * p.u_s * std::abs(q) - p.u_l * q * q / p.k_sites;
  const double ratio = (energy - eps) / (2.0 * std::abs(g));
  if (std::abs(ratio) <= 1.0) return {std::acos(ratio), 0.0};
  const double r = std::max(std::abs(ratio), 1.0 + 1e-15);
  return {0.0, std::acosh(r)};
}

namespace {

constexpr double kDegenerateTol = 1e-12;

// Adaptive Simpson with Richardson correction.
double simpson_step(const std::function<double(double)>& f, double a,
                    double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 60);
}

bool barrier_exists(double u, double a) { return a < std::min(1.0, 4.0 * u - 1.0); }

}  // namespace

double tunneling_action_closed(double u, double a) {
  if (a <= 0.0) throw DomainError("tunneling action: need alpha > 0");
  if (!barrier_exists(u, a)) return 0.0;
  if (std::abs(2.0 * u - 1.0) <= 1e-13) return std::acosh(1.0 / a);
  const double s4 = std::sqrt(4.0 * u * u - a * a);
  if (u > 0.5) {
    // Escape from the Q = 0 well across the ridge.
    const double big =
        2.0 * u - a * a + std::sqrt((4.0 * u * u - a * a) * (1.0 - a * a));
    return std::acosh(1.0 / a) -
           (2.0 * u - 1.0) / s4 * std::log(big / (a * (2.0 * u - 1.0)));
  }
  // Escape from the Q = K well.
  const double b = 4.0 * u - 1.0;
  const double den = 8.0 * u * u - 2.0 * u - a * a +
                     std::sqrt((4.0 * u * u - a * a) * (b * b - a * a));
  return std::acosh(b / a) +
         (1.0 - 2.0 * u) / s4 * std::log(a * (1.0 - 2.0 * u) / den);
}

double tunneling_action_quadrature(double u, double a, double tol) {
  if (a <= 0.0) throw DomainError("tunneling action: need alpha > 0");
  if (!barrier_exists(u, a)) return 0.0;
  if (std::abs(2.0 * u - 1.0) <= 1e-13) return std::acosh(1.0 / a);

  double x1, x2;
  std::function<double(double)> ratio;
  if (u > 0.5) {
    x1 = 0.0;
    x2 = (1.0 - a) / (2.0 * u - a);
    ratio = [u, a](double x) { return (1.0 - 2.0 * u * x) / (a * (1.0 - x)); };
  } else {
    x1 = (1.0 - 2.0 * u) / (2.0 * u - a);
    x2 = 1.0;
    ratio = [u, a](double x) { return (2.0 * u * (1.0 + x) - 1.0) / (a * x); };
  }
  // x = x1 + (x2-x1) sin^2 s absorbs the sqrt singularity at the turning
  // point, so the integrand is smooth on [0, pi/2].
  const double w = x2 - x1;
  const auto f = [&](double s) {
    const double sn = std::sin(s);
    const double x = x1 + w * sn * sn;
    const double r = std::max(ratio(x), 1.0 + 1e-15);
    return std::acosh(r) * w * std::sin(2.0 * s);
  };
  return adaptive_simpson(f, 0.0, 0.5 * std::acos(-1.0), tol);
}

TunnelingResult tunneling_action(const ModelParams& p) {
  p.validate();
  const double a = p.alpha() / p.u_s;
  const double u = p.u_l / p.u_s;
  if (a <= 0.0) throw DomainError("tunneling action: need alpha > 0");
  TunnelingResult r;
  if (!barrier_exists(u, a)) return r;  // {0, 1, 0}
  const double closed = tunneling_action_closed(u, a);
  const double quad = tunneling_action_quadrature(u, a);
  if (std::abs(closed - quad) > 1e-6 * std::max(1e-3, std::abs(closed)))
    throw NumericError("tunneling action: closed form and quadrature disagree");
  r.action = closed;
  const double exponent = 2.0 * p.k_sites * closed;
  r.probability = std::exp(-exponent);
  r.log10_lifetime = exponent / std::log(10.0);
  return r;
}

WkbProfile barrier_analysis(const ModelParams& p) {
  p.validate();
  if (p.rho != 1.0)
    throw DomainError("barrier analysis needs unit filling (rho = 1)");
  const int k = p.k_sites;
  const double alpha = p.alpha();
  const double u = p.u_l / p.u_s;
  const double a = alpha / p.u_s;

  WkbProfile w;
  w.q_grid.resize(k + 1);
  w.eps.resize(k + 1);
  w.lower.resize(k + 1);
  w.upper.resize(k + 1);
  for (int i = 0; i <= k; ++i) {
    const double q = -k + 2 * i;
    const double g = -0.25 * alpha * (1.0 + std::abs(q) - q * q / k);
    w.q_grid[i] = q;
    w.eps[i] = 0.5 * p.u_s * std::abs(q) - p.u_l * q * q / k;
    w.lower[i] = w.eps[i] + 2.0 * g;
    w.upper[i] = w.eps[i] - 2.0 * g;
  }

  const bool degen = std::abs(u - 0.5) <= kDegenerateTol;
  Phase phase;
  if (degen)
    phase = a < 1.0 ? Phase::Degenerate : Phase::Compressible;
  else if (u < 0.5)
    phase = a < 1.0 ? Phase::MI : Phase::Compressible;
  else
    phase = a < 4.0 * u - 1.0 ? Phase::CDW : Phase::Compressible;
  w.barrier.from_phase = phase;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  w.delta_e_cdw = nan;
  w.delta_e_mi = nan;
  if (!barrier_exists(u, a)) return w;

  w.barrier.exists = true;
  w.q_star = 0.5 * (1.0 - a) / (2.0 * u - a);
  const double den = 2.0 * p.u_l - alpha;
  const double h_cdw = k / 8.0 * (p.u_s - alpha) * (p.u_s - alpha) / den;
  const double h_mi = k / 8.0 * (alpha + p.u_s - 4.0 * p.u_l) *
                      (alpha + p.u_s - 4.0 * p.u_l) / den;
  if (degen) {
    w.delta_e_cdw = h_cdw;
    w.delta_e_mi = h_mi;
    w.barrier.height = h_cdw;
  } else if (u > 0.5) {
    w.delta_e_cdw = h_cdw;
    w.barrier.height = h_cdw;
  } else {
    w.delta_e_mi = h_mi;
    w.barrier.height = h_mi;
  }

  if (a > 0.0) {
    w.action = tunneling_action_closed(u, a);
    if (degen)
      w.turning_points = {0.0, static_cast<double>(k)};
    else if (u > 0.5)
      w.turning_points = {0.0, k * (1.0 - a) / (2.0 * u - a)};
    else
      w.turning_points = {k * (1.0 - 2.0 * u) / (2.0 * u - a),
                          static_cast<double>(k)};
  }
  return w;
}

}  // namespace mottcdw
