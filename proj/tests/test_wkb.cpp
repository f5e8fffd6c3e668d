#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mottcdw/wkb.hpp"
#include "oracle_utils.hpp"

using namespace mottcdw;

namespace {
ModelParams ratios(double u, double a, int k) { return params_from_ratios(u, a, k); }
}  // namespace

TEST_CASE("mean half-chain coupling") {
  const ModelParams p = ratios(0.4, 0.6, 100);
  const double alpha = p.alpha();
  CHECK(gamma_mean(0, p) == doctest::Approx(-alpha / 4).epsilon(1e-14));
  CHECK(gamma_mean(100, p) == doctest::Approx(-alpha / 4).epsilon(1e-14));
  CHECK(gamma_mean(-100, p) == gamma_mean(100, p));
  // midpoint of the raising coupling from Q and the lowering coupling from Q,
  // with the radial convention that nothing lowers out of Q = 0
  for (int q = 0; q <= 100; q += 2) {
    const int k = 100;
    const double up = -(alpha / (4.0 * k)) * (k - q) * (q + 2);
    const double down =
        q == 0 ? 0.0 : -(alpha / (4.0 * k)) * (k - q + 2) * q;
    CHECK(gamma_mean(q, p) ==
          doctest::Approx(0.5 * (up + down)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(gamma_mean(102, p), DomainError);
}

TEST_CASE("band momentum inside and outside the allowed window") {
  const ModelParams p = ratios(0.4, 0.6, 100);
  const double q = 20;
  const double eps = 0.5 * q - 0.4 * q * q / 100;
  const double g = gamma_mean(q, p);
  CHECK(momentum(q, eps, p).real() == doctest::Approx(std::acos(0.0)).epsilon(1e-14));
  CHECK(momentum(q, eps, p).imag() == 0.0);
  CHECK(momentum(q, eps + 2 * g, p).real() ==
        doctest::Approx(std::acos(-1.0)).epsilon(1e-7));
  CHECK(momentum(q, eps - 2 * g, p).real() == doctest::Approx(0.0).epsilon(1e-7));
  const std::complex<double> forb = momentum(q, eps + 4 * g, p);
  CHECK(forb.real() == 0.0);
  CHECK(forb.imag() == doctest::Approx(std::acosh(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(momentum(q, eps, ratios(0.4, 0.0, 100)), DomainError);
}

TEST_CASE("barrier record across the phase diagram") {
  // degenerate line, no hopping: ridge height K u_s / 8 exactly
  const WkbProfile deg = barrier_analysis(ratios(0.5, 0.0, 2000));
  CHECK(deg.barrier.exists);
  CHECK(deg.barrier.from_phase == Phase::Degenerate);
  CHECK(deg.barrier.height == 2000.0 / 8.0);
  CHECK(deg.delta_e_cdw == deg.delta_e_mi);
  REQUIRE(deg.q_star.has_value());
  CHECK(*deg.q_star == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(!deg.action.has_value());  // nothing tunnels without hopping

  // barrier-free strip between the spinodals
  const WkbProfile none = barrier_analysis(ratios(0.4, 0.7, 100));
  CHECK(none.barrier.from_phase == Phase::MI);
  CHECK(!none.barrier.exists);
  CHECK(std::isnan(none.delta_e_cdw));
  CHECK(std::isnan(none.delta_e_mi));

  // charge-ordered side
  const WkbProfile cdw = barrier_analysis(ratios(0.6, 0.0, 96));
  CHECK(cdw.barrier.from_phase == Phase::CDW);
  CHECK(cdw.barrier.exists);
  CHECK(cdw.barrier.height == doctest::Approx(96.0 / 9.6).epsilon(1e-13));
  CHECK(std::isnan(cdw.delta_e_mi));

  // insulating side with hopping
  const WkbProfile mi = barrier_analysis(ratios(0.4, 0.2, 100));
  CHECK(mi.barrier.from_phase == Phase::MI);
  CHECK(mi.barrier.exists);
  const double expect = 100.0 / 8 * (0.2 + 1 - 1.6) * (0.2 + 1 - 1.6) / (0.8 - 0.2);
  CHECK(mi.barrier.height == doctest::Approx(expect).epsilon(1e-13));
  REQUIRE(mi.turning_points.has_value());
  CHECK(mi.turning_points->first ==
        doctest::Approx(100 * 0.2 / 0.6).epsilon(1e-12));
  CHECK(mi.turning_points->second == 100.0);

  CHECK(barrier_analysis(ratios(0.4, 1.2, 100)).barrier.from_phase ==
        Phase::Compressible);
  CHECK(barrier_analysis(ratios(0.7, 0.4, 100)).turning_points->second ==
        doctest::Approx(60.0).epsilon(1e-12));
  ModelParams bad = ratios(0.5, 0.1, 8);
  bad.rho = 2.0;
  CHECK_THROWS_AS(barrier_analysis(bad), DomainError);
}

TEST_CASE("band-edge arrays are consistent with the analytic ridge") {
  const ModelParams p = ratios(0.7, 0.3, 500);
  const WkbProfile w = barrier_analysis(p);
  REQUIRE(w.q_grid.size() == 501);
  double top = -1e300;
  for (int i = 250; i <= 500; ++i) top = std::max(top, w.lower[i]);
  const double grid_height = top - w.lower[250];  // metastable end is Q = 0
  CHECK(grid_height == doctest::Approx(w.barrier.height).epsilon(1e-2));
  for (int i = 0; i <= 500; ++i) CHECK(w.upper[i] >= w.lower[i]);
}

TEST_CASE("closed-form action equals the quadrature route") {
  for (const auto& [u, a] : {std::pair{0.7, 0.4}, {0.6, 0.25}, {0.85, 0.9},
                             {0.35, 0.3}, {0.45, 0.5}, {0.3, 0.1}}) {
    const double closed = tunneling_action_closed(u, a);
    const double quad = tunneling_action_quadrature(u, a);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
    CHECK(closed > 0.0);
  }
  // no barrier -> zero action on both routes
  CHECK(tunneling_action_closed(0.4, 0.7) == 0.0);
  CHECK(tunneling_action_quadrature(0.4, 0.7) == 0.0);
  CHECK_THROWS_AS(tunneling_action_closed(0.6, 0.0), DomainError);
}

TEST_CASE("action is continuous and branch-stable at the degenerate line") {
  const double a = 0.3;
  const double mid = tunneling_action_closed(0.5, a);
  CHECK(mid == doctest::Approx(std::acosh(1 / a)).epsilon(1e-14));
  for (const double u : {0.5 - 1e-3, 0.5 + 1e-3}) {
    const double closed = tunneling_action_closed(u, a);
    const double quad = tunneling_action_quadrature(u, a);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-6));
    CHECK(std::abs(closed - mid) < 0.05);
  }
}

TEST_CASE("action shrinks as hopping grows") {
  double prev = 1e300;
  for (const double a : testutil::linspace(0.05, 0.55, 11)) {
    const double cur = tunneling_action_closed(0.65, a);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("tunneling result bookkeeping") {
  const ModelParams p = ratios(0.7, 0.4, 100);
  const TunnelingResult t = tunneling_action(p);
  CHECK(t.action == doctest::Approx(tunneling_action_closed(0.7, 0.4)).epsilon(1e-12));
  CHECK(t.probability == doctest::Approx(std::exp(-200 * t.action)).epsilon(1e-12));
  CHECK(t.log10_lifetime ==
        doctest::Approx(200 * t.action / std::log(10.0)).epsilon(1e-12));
  CHECK(!t.prefactor_known);
  const TunnelingResult none = tunneling_action(ratios(0.4, 0.7, 100));
  CHECK(none.action == 0.0);
  CHECK(none.probability == 1.0);
  CHECK_THROWS_AS(tunneling_action(ratios(0.7, 0.0, 100)), DomainError);
}

TEST_CASE("barrier region matches the two spinodals") {
  for (const double u : testutil::linspace(0.26, 0.95, 24)) {
    for (const double a : testutil::linspace(0.02, 1.4, 24)) {
      const double lim = std::min(1.0, 4 * u - 1);
      if (std::abs(a - lim) < 1e-9) continue;  // grid node on the boundary
      const WkbProfile w = barrier_analysis(ratios(u, a, 50));
      CHECK(w.barrier.exists == (a < lim));
    }
  }
}
