#pragma once
#include <optional>
#include <string>
#include <vector>

#include "mottcdw/landau.hpp"
#include "mottcdw/qspace.hpp"
#include "mottcdw/wkb.hpp"

namespace mottcdw {

struct SweepConfig {
  struct Range {
    double min = 0, max = 0;
    int steps = 1;  // number of grid points; 1 = just min
  };
  Range u_l_range;    // u_l/u_s, within [0, 2]
  Range alpha_range;  // alpha/u_s, within [0, 2]
  int k_sites = 200;
  // subset of {"theta", "gap", "entropy", "chi"}; dropping "chi" skips the
  // four extra diagonalizations per point
  std::vector<std::string> observables = {"theta", "gap", "entropy", "chi"};
  std::string out_path;        // consumed by the CLI; empty = stdout
  std::string format = "csv";  // "csv" | "json"
  int workers = 1;
};

struct PhasePoint {
  double u_l = 0, alpha = 0;  // units of u_s
  Phase phase = Phase::MI;    // from the analytic boundaries
  bool barrier_exists = false;
  double barrier_height_per_site = 0;  // height / (K u_s)
  // dimensionless action; 0 without a barrier, +inf at alpha = 0 with one
  double action = 0;
  ObservablesRecord obs;  // unrequested entries are NaN
  bool has_obs = false;
  std::string flags;  // semicolon-joined advisories (never reconciled)
  std::optional<std::string> error;  // module failure with grid coordinates
};

// One PhasePoint per grid node, row-major (u_l outer, alpha inner),
// deterministic regardless of worker count. Per-point failures are recorded
// in the point's error field, not thrown.
std::vector<PhasePoint> run_sweep(const SweepConfig& cfg);

// Deterministic serializations; floats use 17 significant digits. CSV writes
// +-inf as "inf"/"-inf" and NaN as an empty cell; JSON maps non-finite
// numbers to null (with chi_discontinuity / flags carrying the reason).
std::string sweep_csv(const std::vector<PhasePoint>& pts);
std::string sweep_json(const std::vector<PhasePoint>& pts, const SweepConfig& cfg);

struct QuenchLeg {
  double from_u_l = 0, to_u_l = 0;  // units of u_s
  Phase initial_phase = Phase::MI;  // equilibrium phase before the quench
  bool remains_local_min = false;   // initial phase still locally stable
  bool escape_channel = false;      // a competing minimum exists to decay to
  // Ridge height above the surviving initial minimum, per site in u_s;
  // 0 when the minimum is gone, +inf when there is nothing to decay to.
  double residual_barrier = 0;
  bool marginal = false;  // landed exactly on u_l = u_s/4
};

struct HysteresisReport {
  QuenchLeg forward;   // from -> to
  QuenchLeg backward;  // to -> from
  bool asymmetric = false;
};

// Zero-hopping quench bookkeeping at rho = 1 in both directions.
HysteresisReport hysteresis_protocol(const ModelParams& from,
                                     const ModelParams& to);

}  // namespace mottcdw
