// Command-line front end: landau / spectrum / wkb / sweep / oracle /
// hysteresis sub-commands over the library, JSON or CSV output.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mottcdw/aq.hpp"
#include "mottcdw/ed.hpp"
#include "mottcdw/landau.hpp"
#include "mottcdw/qspace.hpp"
#include "mottcdw/sweep.hpp"
#include "mottcdw/wkb.hpp"

namespace {

using nlohmann::json;

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

json landau_report(double u_l, int k, double rho, int n_grid) {
  mottcdw::ModelParams p;
  p.u_l = u_l;
  p.rho = rho;
  p.k_sites = k;
  const mottcdw::LandauCurve c = mottcdw::classify_landscape(p, n_grid);
  json extrema = json::array();
  for (const auto& e : c.extrema)
    extrema.push_back({{"kind", mottcdw::kind_name(e.kind)},
                       {"theta", e.theta},
                       {"f", num(e.f)}});
  return {{"u_l", u_l},
          {"rho", rho},
          {"k_sites", k},
          {"n_grid", n_grid},
          {"phase", mottcdw::phase_name(c.phase)},
          {"extrema", extrema}};
}

json spectrum_report(double u_l, double alpha, int k, int m, bool with_chi) {
  const mottcdw::ModelParams p = mottcdw::params_from_ratios(u_l, alpha, k);
  const mottcdw::QHamiltonian h = mottcdw::build_hamiltonian(p);
  const mottcdw::SpectrumResult s = mottcdw::ground_state(h, m);
  const mottcdw::ObservablesRecord o = mottcdw::observables(s, h, p, with_chi);
  json energies = json::array();
  for (double e : s.energies) energies.push_back(e);
  json obs = {{"theta_abs_mean", num(o.theta_abs_mean)},
              {"gap_10", num(o.gap_10)},
              {"gap_20", num(o.gap_20)},
              {"entropy_vn", num(o.entropy_vn)}};
  if (with_chi) {
    obs["fidelity_chi"] = num(o.fidelity_chi);
    obs["chi_discontinuity"] = o.chi_discontinuity;
    obs["chi_step_consistent"] = o.chi_step_consistent;
  }
  return {{"u_l", u_l},
          {"alpha", alpha},
          {"k_sites", k},
          {"energies", energies},
          {"degenerate_ground", s.degenerate_ground},
          {"observables", obs}};
}

json wkb_report(double u_l, double alpha, int k) {
  const mottcdw::ModelParams p = mottcdw::params_from_ratios(u_l, alpha, k);
  const mottcdw::WkbProfile w = mottcdw::barrier_analysis(p);
  json out = {{"u_l", u_l},
              {"alpha", alpha},
              {"k_sites", k},
              {"phase", mottcdw::phase_name(w.barrier.from_phase)},
              {"barrier_exists", w.barrier.exists},
              {"barrier_height", num(w.barrier.height)},
              {"delta_e_cdw", num(w.delta_e_cdw)},
              {"delta_e_mi", num(w.delta_e_mi)}};
  out["q_star_over_k"] = w.q_star ? json(*w.q_star) : json(nullptr);
  if (w.turning_points)
    out["turning_points"] = {w.turning_points->first, w.turning_points->second};
  else
    out["turning_points"] = nullptr;
  if (w.barrier.exists && alpha > 0.0) {
    const mottcdw::TunnelingResult t = mottcdw::tunneling_action(p);
    out["action"] = t.action;
    out["probability"] = num(t.probability);
    out["log10_lifetime"] = t.log10_lifetime;
    out["prefactor_known"] = t.prefactor_known;
  } else if (w.barrier.exists) {
    out["action"] = nullptr;  // no kinetic term: nothing tunnels
  } else {
    out["action"] = 0.0;
  }
  return out;
}

json table_json(const mottcdw::NormalizationTable& t) {
  json a = json::array();
  for (const mpz_class& x : t.a) a.push_back(x.get_str());
  return {{"method", t.method}, {"q", t.q}, {"a", a}};
}

json oracle_report(const std::string& geometry, int n, int lx, int ly,
                   bool periodic, int q_max, std::optional<int> elements) {
  json out;
  if (elements) {
    const mottcdw::MatrixElementReport r = mottcdw::matrix_element_check(*elements);
    out["matrix_elements"] = {
        {"k_sites", r.k_sites},
        {"ok", r.ok},
        {"max_element_error", r.max_element_error},
        {"max_commutator_residual", r.max_commutator_residual},
        {"max_projected_commutator_residual", r.max_projected_commutator_residual},
        {"distorted_relation_exact", r.distorted_relation_exact}};
    return out;
  }
  mottcdw::LatticeGraph g;
  if (geometry == "dimer") g = mottcdw::make_dimer();
  else if (geometry == "ring") g = mottcdw::make_ring(n);
  else if (geometry == "rect") g = mottcdw::make_rectangle(lx, ly, periodic);
  else if (geometry == "complete") g = mottcdw::make_complete_bipartite(n);
  else throw mottcdw::DomainError("unknown geometry: " + geometry);

  const mottcdw::NormalizationTable match = mottcdw::aq_by_matching(g, q_max);
  out = {{"geometry", g.geometry},
         {"n_sites", g.n_sites},
         {"matching", table_json(match)}};
  if (g.n_sites <= 12) {
    const mottcdw::NormalizationTable op = mottcdw::aq_by_operator(g, q_max);
    out["operator"] = table_json(op);
    out["routes_agree"] = op.a == match.a && op.q == match.q;
  }
  if (geometry == "complete") {
    json d = json::array();
    for (int q : match.q) d.push_back(mottcdw::aq_distorted(g.n_sites, q).get_str());
    out["distorted"] = d;
  }
  return out;
}

json hysteresis_report(double from_ul, double to_ul, int k) {
  mottcdw::ModelParams a, b;
  a.u_l = from_ul;
  a.k_sites = k;
  b.u_l = to_ul;
  b.k_sites = k;
  const mottcdw::HysteresisReport r = mottcdw::hysteresis_protocol(a, b);
  const auto leg = [](const mottcdw::QuenchLeg& q) {
    return json{{"from_u_l", q.from_u_l},
                {"to_u_l", q.to_u_l},
                {"initial_phase", mottcdw::phase_name(q.initial_phase)},
                {"remains_local_min", q.remains_local_min},
                {"escape_channel", q.escape_channel},
                {"residual_barrier", num(q.residual_barrier)},
                {"marginal", q.marginal}};
  };
  return {{"k_sites", k},
          {"forward", leg(r.forward)},
          {"backward", leg(r.backward)},
          {"asymmetric", r.asymmetric}};
}

int run_sweep_cmd(const mottcdw::SweepConfig& cfg) {
  const std::vector<mottcdw::PhasePoint> pts = mottcdw::run_sweep(cfg);
  size_t errors = 0;
  for (const auto& p : pts) errors += p.error.has_value();
  if (cfg.format == "csv") {
    const std::string csv = mottcdw::sweep_csv(pts);
    emit(csv, cfg.out_path);
    if (!cfg.out_path.empty()) {
      const json summary = {
          {"points", pts.size()}, {"errors", errors}, {"out", cfg.out_path}};
      std::cout << summary.dump(2) << "\n";
    }
  } else if (cfg.format == "json") {
    emit(mottcdw::sweep_json(pts, cfg), cfg.out_path);
  } else {
    throw mottcdw::DomainError("format must be csv or json");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-boson phase structure toolkit"};
  app.require_subcommand(1);

  double u_l = 0.0, alpha = 0.0, rho = 1.0;
  int k = 200, n_grid = 2001, m = 3;
  bool no_chi = false;
  std::string out_path, format = "csv";

  CLI::App* landau = app.add_subcommand("landau", "Zero-hopping landscape");
  landau->add_option("--ul", u_l, "u_l / u_s");
  landau->add_option("--rho", rho, "filling");
  landau->add_option("--k", k, "number of sites");
  landau->add_option("--grid", n_grid, "landscape grid points");
  landau->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* spectrum = app.add_subcommand("spectrum", "Imbalance-basis spectrum");
  spectrum->add_option("--ul", u_l, "u_l / u_s");
  spectrum->add_option("--alpha", alpha, "alpha / u_s");
  spectrum->add_option("--k", k, "number of sites");
  spectrum->add_option("--m", m, "number of energies (>= 3)");
  spectrum->add_flag("--no-chi", no_chi, "skip the fidelity susceptibility");
  spectrum->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* wkb = app.add_subcommand("wkb", "Barrier profile and tunneling");
  wkb->add_option("--ul", u_l, "u_l / u_s");
  wkb->add_option("--alpha", alpha, "alpha / u_s");
  wkb->add_option("--k", k, "number of sites");
  wkb->add_option("--out", out_path, "output file (default stdout)");

  std::string geometry = "ring";
  int n_sites = 6, lx = 2, ly = 2, q_max = -1;
  bool periodic = false;
  int elements_k = -1;
  CLI::App* oracle = app.add_subcommand("oracle", "Exact norm tables");
  oracle->add_option("--geometry", geometry, "dimer|ring|rect|complete");
  oracle->add_option("--n", n_sites, "sites (ring/complete)");
  oracle->add_option("--lx", lx, "rectangle extent x");
  oracle->add_option("--ly", ly, "rectangle extent y");
  oracle->add_flag("--periodic", periodic, "wrap the rectangle");
  oracle->add_option("--qmax", q_max, "largest imbalance (default all)");
  oracle->add_option("--elements", elements_k,
                     "run the matrix-element cross-check on this many sites");
  oracle->add_option("--out", out_path, "output file (default stdout)");

  double from_ul = 0.2, to_ul = 0.7;
  CLI::App* hysteresis = app.add_subcommand("hysteresis", "Quench bookkeeping");
  hysteresis->add_option("--from-ul", from_ul, "starting u_l / u_s");
  hysteresis->add_option("--to-ul", to_ul, "final u_l / u_s");
  hysteresis->add_option("--k", k, "number of sites");
  hysteresis->add_option("--out", out_path, "output file (default stdout)");

  std::string config_path, observables_csv;
  mottcdw::SweepConfig cfg;
  double ul_min = 0.0, ul_max = 1.0, al_min = 0.0, al_max = 1.0;
  int ul_steps = 11, al_steps = 11, workers = 1;
  CLI::App* sweep = app.add_subcommand("sweep", "Phase-diagram grid");
  sweep->add_option("--config", config_path, "JSON config file");
  auto* o_ulmin = sweep->add_option("--ul-min", ul_min, "u_l / u_s start");
  auto* o_ulmax = sweep->add_option("--ul-max", ul_max, "u_l / u_s end");
  auto* o_ulsteps = sweep->add_option("--ul-steps", ul_steps, "u_l grid points");
  auto* o_almin = sweep->add_option("--alpha-min", al_min, "alpha / u_s start");
  auto* o_almax = sweep->add_option("--alpha-max", al_max, "alpha / u_s end");
  auto* o_alsteps = sweep->add_option("--alpha-steps", al_steps, "alpha grid points");
  auto* o_k = sweep->add_option("--k", k, "number of sites");
  auto* o_obs = sweep->add_option("--observables", observables_csv,
                                  "comma list of theta,gap,entropy,chi");
  auto* o_out = sweep->add_option("--out", out_path, "output file (default stdout)");
  auto* o_fmt = sweep->add_option("--format", format, "csv|json");
  auto* o_workers = sweep->add_option("--workers", workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    const json err = {{"error", {{"type", "parse"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  try {
    if (landau->parsed()) {
      emit(landau_report(u_l, k, rho, n_grid).dump(2) + "\n", out_path);
    } else if (spectrum->parsed()) {
      emit(spectrum_report(u_l, alpha, k, m, !no_chi).dump(2) + "\n", out_path);
    } else if (wkb->parsed()) {
      emit(wkb_report(u_l, alpha, k).dump(2) + "\n", out_path);
    } else if (oracle->parsed()) {
      std::optional<int> elements;
      if (elements_k > 0) elements = elements_k;
      emit(oracle_report(geometry, n_sites, lx, ly, periodic, q_max, elements)
                   .dump(2) +
               "\n",
           out_path);
    } else if (hysteresis->parsed()) {
      emit(hysteresis_report(from_ul, to_ul, k).dump(2) + "\n", out_path);
    } else if (sweep->parsed()) {
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f)
          throw mottcdw::DomainError("cannot read config file: " + config_path);
        json j;
        f >> j;  // throws nlohmann parse_error on bad JSON
        if (j.contains("u_l_range")) {
          cfg.u_l_range.min = j["u_l_range"].value("min", cfg.u_l_range.min);
          cfg.u_l_range.max = j["u_l_range"].value("max", cfg.u_l_range.max);
          cfg.u_l_range.steps = j["u_l_range"].value("steps", cfg.u_l_range.steps);
        }
        if (j.contains("alpha_range")) {
          cfg.alpha_range.min = j["alpha_range"].value("min", cfg.alpha_range.min);
          cfg.alpha_range.max = j["alpha_range"].value("max", cfg.alpha_range.max);
          cfg.alpha_range.steps =
              j["alpha_range"].value("steps", cfg.alpha_range.steps);
        }
        cfg.k_sites = j.value("k_sites", cfg.k_sites);
        if (j.contains("observables"))
          cfg.observables = j["observables"].get<std::vector<std::string>>();
        cfg.out_path = j.value("out", cfg.out_path);
        cfg.format = j.value("format", cfg.format);
        cfg.workers = j.value("workers", cfg.workers);
      } else {
        cfg.u_l_range = {ul_min, ul_max, ul_steps};
        cfg.alpha_range = {al_min, al_max, al_steps};
        cfg.k_sites = k;
        cfg.workers = workers;
        cfg.format = format;
        cfg.out_path = out_path;
      }
      // Explicit flags override the config file.
      if (o_ulmin->count()) cfg.u_l_range.min = ul_min;
      if (o_ulmax->count()) cfg.u_l_range.max = ul_max;
      if (o_ulsteps->count()) cfg.u_l_range.steps = ul_steps;
      if (o_almin->count()) cfg.alpha_range.min = al_min;
      if (o_almax->count()) cfg.alpha_range.max = al_max;
      if (o_alsteps->count()) cfg.alpha_range.steps = al_steps;
      if (o_k->count()) cfg.k_sites = k;
      if (o_workers->count()) cfg.workers = workers;
      if (o_fmt->count()) cfg.format = format;
      if (o_out->count()) cfg.out_path = out_path;
      if (o_obs->count()) {
        cfg.observables.clear();
        std::string item;
        for (char ch : observables_csv) {
          if (ch == ',') {
            if (!item.empty()) cfg.observables.push_back(item);
            item.clear();
          } else {
            item += ch;
          }
        }
        if (!item.empty()) cfg.observables.push_back(item);
      }
      return run_sweep_cmd(cfg);
    }
    return 0;
  } catch (const mottcdw::DomainError& e) {
    const json err = {{"error", {{"type", "domain"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const mottcdw::SizeError& e) {
    const json err = {{"error", {{"type", "size"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 4;
  } catch (const mottcdw::NumericError& e) {
    const json err = {{"error", {{"type", "numeric"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 5;
  } catch (const json::parse_error& e) {
    const json err = {{"error", {{"type", "parse"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    const json err = {{"error", {{"type", "other"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
