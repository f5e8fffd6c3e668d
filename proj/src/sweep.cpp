#include "mottcdw/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace mottcdw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> grid_values(const SweepConfig::Range& r) {
  std::vector<double> v(r.steps);
  if (r.steps == 1) {
    v[0] = r.min;
    return v;
  }
  const double step = (r.max - r.min) / (r.steps - 1);
  for (int i = 0; i < r.steps; ++i) v[i] = r.min + i * step;
  v.back() = r.max;
  return v;
}

void check_range(const SweepConfig::Range& r, const char* name) {
  if (r.steps < 1)
    throw DomainError(std::string(name) + ": need at least one grid point");
  if (r.min > r.max)
    throw DomainError(std::string(name) + ": min exceeds max");
  if (r.min < 0.0 || r.max > 2.0)
    throw DomainError(std::string(name) + ": must lie within [0, 2]");
}

struct Wanted {
  bool theta = false, gap = false, entropy = false, chi = false;
  bool any() const { return theta || gap || entropy || chi; }
};

Wanted parse_observables(const std::vector<std::string>& names) {
  Wanted w;
  for (const std::string& n : names) {
    if (n == "theta") w.theta = true;
    else if (n == "gap") w.gap = true;
    else if (n == "entropy") w.entropy = true;
    else if (n == "chi") w.chi = true;
    else throw DomainError("unknown observable: " + n);
  }
  return w;
}

void compute_point(PhasePoint& pt, const SweepConfig& cfg, const Wanted& want) {
  const ModelParams p = params_from_ratios(pt.u_l, pt.alpha, cfg.k_sites);
  const WkbProfile prof = barrier_analysis(p);
  pt.phase = prof.barrier.from_phase;
  pt.barrier_exists = prof.barrier.exists;
  pt.barrier_height_per_site =
      prof.barrier.exists ? prof.barrier.height / (cfg.k_sites * p.u_s) : 0.0;
  if (!prof.barrier.exists)
    pt.action = 0.0;
  else if (pt.alpha == 0.0)
    pt.action = kInf;  // no kinetic term, nothing tunnels
  else
    pt.action = tunneling_action(p).action;

  std::vector<std::string> flags;
  pt.obs.theta_abs_mean = kNaN;
  pt.obs.gap_10 = kNaN;
  pt.obs.gap_20 = kNaN;
  pt.obs.entropy_vn = kNaN;
  pt.obs.fidelity_chi = kNaN;
  if (want.any()) {
    const QHamiltonian h = build_hamiltonian(p);
    const SpectrumResult s = ground_state(h, 3);
    const ObservablesRecord full = observables(s, h, p, want.chi);
    if (want.theta) pt.obs.theta_abs_mean = full.theta_abs_mean;
    if (want.gap) {
      pt.obs.gap_10 = full.gap_10;
      pt.obs.gap_20 = full.gap_20;
    }
    if (want.entropy) pt.obs.entropy_vn = full.entropy_vn;
    if (want.chi) {
      pt.obs.fidelity_chi = full.fidelity_chi;
      pt.obs.chi_discontinuity = full.chi_discontinuity;
      pt.obs.chi_step_consistent = full.chi_step_consistent;
      if (full.chi_discontinuity) flags.push_back("chi-discontinuity");
      else if (!full.chi_step_consistent) flags.push_back("chi-step-inconsistent");
    }
    pt.has_obs = true;
    if (s.degenerate_ground) flags.push_back("degenerate-ground");
    if (want.theta) {
      if (pt.phase == Phase::MI && full.theta_abs_mean > 0.5)
        flags.push_back("theta-high-in-mi");
      if (pt.phase == Phase::CDW && full.theta_abs_mean < 0.5)
        flags.push_back("theta-low-in-cdw");
    }
  }
  std::ostringstream joined;
  for (size_t i = 0; i < flags.size(); ++i)
    joined << (i ? ";" : "") << flags[i];
  pt.flags = joined.str();
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // collapse -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

nlohmann::json json_double(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

std::vector<PhasePoint> run_sweep(const SweepConfig& cfg) {
  check_range(cfg.u_l_range, "u_l range");
  check_range(cfg.alpha_range, "alpha range");
  if (cfg.workers < 1) throw DomainError("workers must be >= 1");
  const Wanted want = parse_observables(cfg.observables);
  // Validates k_sites (even, >= 2) up front rather than once per point.
  params_from_ratios(0.0, 0.0, cfg.k_sites);

  const std::vector<double> us = grid_values(cfg.u_l_range);
  const std::vector<double> as = grid_values(cfg.alpha_range);
  const size_t total = us.size() * as.size();
  std::vector<PhasePoint> pts(total);
  for (size_t i = 0; i < us.size(); ++i)
    for (size_t j = 0; j < as.size(); ++j) {
      PhasePoint& pt = pts[i * as.size() + j];
      pt.u_l = us[i];
      pt.alpha = as[j];
    }

  const auto work = [&](size_t begin, size_t end) {
    for (size_t n = begin; n < end; ++n) {
      PhasePoint& pt = pts[n];
      try {
        compute_point(pt, cfg, want);
      } catch (const std::exception& ex) {
        const size_t i = n / as.size(), j = n % as.size();
        std::ostringstream msg;
        msg << ex.what() << " (i=" << i << ", j=" << j
            << ", u_l=" << fmt_double(pt.u_l)
            << ", alpha=" << fmt_double(pt.alpha) << ")";
        pt.error = msg.str();
      }
    }
  };

  const int workers = int(std::min<size_t>(cfg.workers, std::max<size_t>(total, 1)));
  if (workers <= 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (total + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
      const size_t b = std::min(total, size_t(t) * chunk);
      const size_t e = std::min(total, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (std::thread& th : pool) th.join();
  }
  return pts;
}

std::string sweep_csv(const std::vector<PhasePoint>& pts) {
  std::ostringstream out;
  out << "u_l,alpha,phase,barrier_exists,barrier_height_per_site,action,"
         "theta_abs_mean,gap_10,gap_20,entropy_vn,fidelity_chi,"
         "chi_discontinuity,chi_step_consistent,flags,error\n";
  for (const PhasePoint& p : pts) {
    out << fmt_double(p.u_l) << ',' << fmt_double(p.alpha) << ','
        << phase_name(p.phase) << ',' << (p.barrier_exists ? 1 : 0) << ','
        << fmt_double(p.barrier_height_per_site) << ',' << fmt_double(p.action)
        << ',' << fmt_double(p.obs.theta_abs_mean) << ','
        << fmt_double(p.obs.gap_10) << ',' << fmt_double(p.obs.gap_20) << ','
        << fmt_double(p.obs.entropy_vn) << ','
        << fmt_double(p.obs.fidelity_chi) << ','
        << (p.has_obs && p.obs.chi_discontinuity ? 1 : 0) << ','
        << (p.has_obs && p.obs.chi_step_consistent ? 1 : 0) << ','
        << csv_quote(p.flags) << ','
        << csv_quote(p.error.value_or("")) << '\n';
  }
  return out.str();
}

std::string sweep_json(const std::vector<PhasePoint>& pts,
                       const SweepConfig& cfg) {
  nlohmann::json root;
  root["config"] = {
      {"u_l_range", {{"min", cfg.u_l_range.min},
                     {"max", cfg.u_l_range.max},
                     {"steps", cfg.u_l_range.steps}}},
      {"alpha_range", {{"min", cfg.alpha_range.min},
                       {"max", cfg.alpha_range.max},
                       {"steps", cfg.alpha_range.steps}}},
      {"k_sites", cfg.k_sites},
      {"observables", cfg.observables},
      {"workers", cfg.workers},
  };
  nlohmann::json rows = nlohmann::json::array();
  for (const PhasePoint& p : pts) {
    nlohmann::json row = {
        {"u_l", p.u_l},
        {"alpha", p.alpha},
        {"phase", phase_name(p.phase)},
        {"barrier_exists", p.barrier_exists},
        {"barrier_height_per_site", json_double(p.barrier_height_per_site)},
        {"action", json_double(p.action)},
        {"flags", p.flags},
    };
    if (p.has_obs) {
      row["observables"] = {
          {"theta_abs_mean", json_double(p.obs.theta_abs_mean)},
          {"gap_10", json_double(p.obs.gap_10)},
          {"gap_20", json_double(p.obs.gap_20)},
          {"entropy_vn", json_double(p.obs.entropy_vn)},
          {"fidelity_chi", json_double(p.obs.fidelity_chi)},
          {"chi_discontinuity", p.obs.chi_discontinuity},
          {"chi_step_consistent", p.obs.chi_step_consistent},
      };
    }
    if (p.error) row["error"] = *p.error;
    rows.push_back(std::move(row));
  }
  root["points"] = std::move(rows);
  return root.dump(2) + "\n";
}

HysteresisReport hysteresis_protocol(const ModelParams& from,
                                     const ModelParams& to) {
  from.validate();
  to.validate();
  if (from.j != 0.0 || to.j != 0.0)
    throw DomainError("hysteresis protocol is defined at zero hopping");
  if (from.rho != 1.0 || to.rho != 1.0)
    throw DomainError("hysteresis protocol needs unit filling");
  if (from.u_s != to.u_s || from.k_sites != to.k_sites)
    throw DomainError("hysteresis protocol varies only u_l");

  const auto leg = [&](const ModelParams& a, const ModelParams& b) {
    QuenchLeg q;
    q.from_u_l = a.u_l / a.u_s;
    q.to_u_l = b.u_l / b.u_s;
    q.initial_phase = classify_landscape(a).phase;
    const double u_to = q.to_u_l;
    q.marginal = std::abs(u_to - 0.25) <= 1e-12;
    const bool interior_max = u_to > 0.25 + 1e-12;
    if (q.initial_phase == Phase::CDW) {
      // Edge minimum survives the quench iff u_l stays >= u_s/4.
      q.remains_local_min = u_to >= 0.25 - 1e-12;
      q.escape_channel = true;  // theta = 0 is always a local minimum
      q.residual_barrier =
          q.remains_local_min ? 1.0 / (16.0 * u_to) - (0.5 - u_to) : 0.0;
      if (q.remains_local_min && q.residual_barrier < 0) q.residual_barrier = 0;
    } else {
      // theta = 0 stays a local minimum at every u_l.
      q.remains_local_min = true;
      q.escape_channel = interior_max;  // otherwise nothing to decay into
      q.residual_barrier =
          interior_max ? 1.0 / (16.0 * u_to)
                       : std::numeric_limits<double>::infinity();
    }
    return q;
  };

  HysteresisReport rep;
  rep.forward = leg(from, to);
  rep.backward = leg(to, from);
  rep.asymmetric = rep.forward.remains_local_min != rep.backward.remains_local_min;
  return rep;
}

}  // namespace mottcdw
