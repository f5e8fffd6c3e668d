#include "mottcdw/qspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mottcdw/tridiag.hpp"

namespace mottcdw {

namespace {

double eps_q(double u_s, double u_l, int k, double q) {
  return 0.5 * u_s * std::abs(q) - u_l * q * q / k;
}

// Coupling on the bond (Q, Q+2), evaluated as the raising element from Q.
double gamma_up(double alpha, int k, int q) {
  if (q >= 0) return -(alpha / (4.0 * k)) * (k - q) * (q + 2);
  const int aq = -q;
  return -(alpha / (4.0 * k)) * (k - aq + 2) * aq;
}

// Same bond evaluated as the lowering element from Q+2.
double gamma_down(double alpha, int k, int q_above) {
  if (q_above > 0) return -(alpha / (4.0 * k)) * (k - q_above + 2) * q_above;
  const int aq = -q_above;
  return -(alpha / (4.0 * k)) * (k - aq) * (aq + 2);
}

}  // namespace

QHamiltonian build_hamiltonian(const ModelParams& p) {
  p.validate();
  if (p.rho != 1.0)
    throw DomainError("unsupported filling: the imbalance basis needs rho = 1");
  const int k = p.k_sites;
  const double alpha = p.alpha();
  QHamiltonian h;
  h.k_sites = k;
  h.q_grid.resize(k + 1);
  h.diag.resize(k + 1);
  h.offdiag.resize(k);
  for (int i = 0; i <= k; ++i) {
    h.q_grid[i] = -k + 2 * i;
    h.diag[i] = eps_q(p.u_s, p.u_l, k, h.q_grid[i]);
  }
  for (int i = 0; i < k; ++i) {
    const double up = gamma_up(alpha, k, h.q_grid[i]);
    const double dn = gamma_down(alpha, k, h.q_grid[i] + 2);
    if (std::abs(up - dn) > 1e-14 * std::max(1.0, std::abs(up)))
      throw NumericError("bond coupling mismatch between raising and lowering forms");
    if (up > 0) throw NumericError("positive off-diagonal coupling");
    h.offdiag[i] = up;
  }
  return h;
}

namespace {

SpectrumResult solve_diagonal(const QHamiltonian& h, int m) {
  const int n = h.k_sites + 1;
  SpectrumResult r;
  std::vector<double> sorted = h.diag;
  std::sort(sorted.begin(), sorted.end());
  r.energies.assign(sorted.begin(), sorted.begin() + m);
  const double e0 = sorted[0];
  const double tol = 1e-12 * std::max(1.0, std::abs(e0));
  int gi = -1, ties = 0;
  for (int i = 0; i < n; ++i) {
    if (h.diag[i] > e0 + tol) continue;
    ++ties;
    if (gi < 0 || h.q_grid[i] > h.q_grid[gi]) gi = i;  // largest-Q convention
  }
  r.degenerate_ground = ties > 1;
  r.ground_amplitudes.assign(n, 0.0);
  r.ground_amplitudes[gi] = 1.0;
  return r;
}

}  // namespace

SpectrumResult ground_state(const QHamiltonian& h, int m) {
  const int k = h.k_sites;
  const int n = k + 1;
  if (m < 2 || m > n) throw DomainError("ground_state: need 2 <= m <= K+1");

  if (std::all_of(h.offdiag.begin(), h.offdiag.end(),
                  [](double g) { return g == 0.0; }))
    return solve_diagonal(h, m);

  // Reflection sectors. Symmetric basis: |0>, (|q>+|-q>)/sqrt2 for q = 2..K;
  // only the 0-2 bond picks up a sqrt2. Antisymmetric: (|q>-|-q>)/sqrt2.
  const int c = k / 2;  // index of Q = 0
  SymTridiag sym, asym;
  sym.diag.assign(h.diag.begin() + c, h.diag.end());
  sym.off.assign(h.offdiag.begin() + c, h.offdiag.end());
  sym.off[0] *= std::sqrt(2.0);
  asym.diag.assign(h.diag.begin() + c + 1, h.diag.end());
  asym.off.assign(h.offdiag.begin() + c + 1, h.offdiag.end());

  const int ms = std::min(m, static_cast<int>(sym.diag.size()));
  const int ma = std::min(m, static_cast<int>(asym.diag.size()));
  const EigPairs s = lowest_eigenpairs(sym, ms, true);
  const EigPairs a = lowest_eigenpairs(asym, ma, false);

  std::vector<double> merged;
  merged.reserve(ms + ma);
  merged.insert(merged.end(), s.values.begin(), s.values.end());
  merged.insert(merged.end(), a.values.begin(), a.values.end());
  std::sort(merged.begin(), merged.end());

  const double scale = std::max(1.0, std::abs(merged[0]));
  if (a.values[0] < s.values[0] - 1e-10 * scale)
    throw NumericError("ground state left the reflection-symmetric sector");

  SpectrumResult r;
  r.energies.assign(merged.begin(), merged.begin() + m);
  r.degenerate_ground = merged[1] - merged[0] <= 1e-12 * scale;

  const std::vector<double>& v = s.vectors[0];
  r.ground_amplitudes.assign(n, 0.0);
  r.ground_amplitudes[c] = v[0];
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int jj = 1; jj <= c; ++jj) {
    r.ground_amplitudes[c + jj] = v[jj] * inv_sqrt2;
    r.ground_amplitudes[c - jj] = v[jj] * inv_sqrt2;
  }
  // Sign convention: the largest-magnitude amplitude is positive.
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(r.ground_amplitudes[i]) > std::abs(r.ground_amplitudes[imax]))
      imax = i;
  if (r.ground_amplitudes[imax] < 0)
    for (double& x : r.ground_amplitudes) x = -x;
  return r;
}

ObservablesRecord observables(const SpectrumResult& s, const QHamiltonian& h,
                              const ModelParams& p, bool with_chi) {
  p.validate();
  if (p.k_sites != h.k_sites)
    throw DomainError("observables: params and hamiltonian disagree on K");
  if (s.ground_amplitudes.size() != h.diag.size())
    throw DomainError("observables: spectrum does not match hamiltonian");
  if (s.energies.size() < 3)
    throw DomainError("observables: need at least 3 energies (m >= 3)");

  ObservablesRecord o;
  const int k = h.k_sites;
  double th = 0, ent = 0;
  for (size_t i = 0; i < s.ground_amplitudes.size(); ++i) {
    const double w = s.ground_amplitudes[i] * s.ground_amplitudes[i];
    th += std::abs(static_cast<double>(h.q_grid[i])) * w;
    if (w > 0) ent -= w * std::log(w);
  }
  o.theta_abs_mean = th / k;
  o.gap_10 = s.energies[1] - s.energies[0];
  o.gap_20 = s.energies[2] - s.energies[0];
  o.entropy_vn = std::max(0.0, ent);

  if (!with_chi) {
    o.fidelity_chi = std::numeric_limits<double>::quiet_NaN();
    o.chi_step_consistent = false;
    return o;
  }

  const auto gs_at = [&](double u_l) {
    ModelParams q = p;
    q.u_l = u_l;
    return ground_state(build_hamiltonian(q), 2).ground_amplitudes;
  };
  const auto overlap = [&](const std::vector<double>& x,
                           const std::vector<double>& y) {
    double acc = 0;
    for (size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return std::abs(acc);
  };
  // chi = -(ln|o+| + ln|o-|)/d^2; one-sided doubling when u_l-d would be < 0.
  const auto chi_at = [&](double d) {
    bool disc = false;
    double acc = 0;
    if (p.u_l >= d) {
      const double op = overlap(s.ground_amplitudes, gs_at(p.u_l + d));
      const double om = overlap(s.ground_amplitudes, gs_at(p.u_l - d));
      if (op < 1e-30 || om < 1e-30) disc = true;
      else acc = -(std::log(op) + std::log(om));
    } else {
      const double op = overlap(s.ground_amplitudes, gs_at(p.u_l + d));
      if (op < 1e-30) disc = true;
      else acc = -2.0 * std::log(op);
    }
    return std::pair<double, bool>(acc / (d * d), disc);
  };

  const double delta = 1e-4 * p.u_s;
  const auto [chi, disc] = chi_at(delta);
  if (disc) {
    o.fidelity_chi = std::numeric_limits<double>::infinity();
    o.chi_discontinuity = true;
    o.chi_step_consistent = false;
    return o;
  }
  o.fidelity_chi = chi;
  const auto [chi_half, disc_half] = chi_at(0.5 * delta);
  o.chi_step_consistent =
      !disc_half && std::abs(chi_half - chi) <=
                        0.05 * std::max(std::abs(chi), std::abs(chi_half)) + 1e-6;
  return o;
}

}  // namespace mottcdw
