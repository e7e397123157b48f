#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entropic_ghz/nelder_mead.hpp"
#include "entropic_ghz/noise.hpp"
#include "oracles.hpp"

using namespace eghz;
using std::numbers::pi;

namespace {

// Threshold of 3 h(p/2) - 1 = 0, by bisection on the closed form.
const double kEntropicRoot =
    oracle::bisect([](double p) { return oracle::entropic_margin_closed_form(p); }, 0.01, 0.5);

}  // namespace

TEST_SUITE("noise") {

TEST_CASE("family names round-trip") {
  for (Family f : {Family::kEntropic3, Family::kMermin3, Family::kBc2}) {
    CHECK(parse_family(family_name(f)) == f);
  }
  CHECK_FALSE(parse_family("chsh").has_value());
}

TEST_CASE("Scenario validates settings count and state arity") {
  const auto ref = TripartiteSettings::reference().flat();
  CHECK_THROWS_AS(Scenario(Family::kBc2, singlet_state(), ref), std::invalid_argument);
  CHECK_THROWS_AS(Scenario(Family::kEntropic3, singlet_state(), ref), std::invalid_argument);
  CHECK_NOTHROW(Scenario(Family::kEntropic3, ghz_state(), ref));
}

TEST_CASE("margin_at on the entropic reference scenario") {
  const auto s = preset_scenario(Family::kEntropic3);
  CHECK(std::abs(margin_at(s, 0.0) + 1.0) < 1e-9);
  CHECK(std::abs(margin_at(s, 1.0) - 2.0) < 1e-9);
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    CHECK(std::abs(margin_at(s, p) - oracle::entropic_margin_closed_form(p)) < 1e-10);
  }
  CHECK_THROWS_AS(margin_at(s, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(margin_at(s, -0.1), std::invalid_argument);
}

TEST_CASE("property: margin_at is continuous in p") {
  const auto s = preset_scenario(Family::kEntropic3);
  const auto m = preset_scenario(Family::kMermin3);
  for (int i = 0; i < 50; ++i) {
    const double p = i / 50.0;
    CHECK(std::abs(margin_at(s, p + 1e-6) - margin_at(s, p)) <= 1e-3);
    CHECK(std::abs(margin_at(m, p + 1e-6) - margin_at(m, p)) <= 1e-3);
  }
}

TEST_CASE("find_threshold on the entropic and Mermin presets") {
  const auto entropic = find_threshold(preset_scenario(Family::kEntropic3));
  REQUIRE(entropic.status == ThresholdStatus::kFound);
  CHECK(std::abs(entropic.p_star - kEntropicRoot) <= 1e-4);
  CHECK(std::abs(entropic.p_star - 0.123) <= 0.002);
  CHECK(entropic.bracket_width <= 1e-4);
  const auto s = preset_scenario(Family::kEntropic3);
  CHECK(margin_at(s, entropic.p_star - 1e-4) < -kViolationTol);
  CHECK(margin_at(s, entropic.p_star + 1e-4) >= -kViolationTol);

  const auto mermin = find_threshold(preset_scenario(Family::kMermin3));
  REQUIRE(mermin.status == ThresholdStatus::kFound);
  CHECK(std::abs(mermin.p_star - 0.5) <= 1e-3);

  const auto again = find_threshold(preset_scenario(Family::kEntropic3));
  CHECK(again.p_star == entropic.p_star);
  CHECK(again.iterations == entropic.iterations);
}

TEST_CASE("find_threshold reports scenarios without a threshold") {
  const auto x = BlochObservable::x();
  const Scenario none(Family::kEntropic3, ghz_state(), {x, x, x, x, x, x});
  CHECK(find_threshold(none).status == ThresholdStatus::kNoViolation);
  CHECK_THROWS_AS(find_threshold(preset_scenario(Family::kEntropic3), 0.0), std::invalid_argument);
}

TEST_CASE("sweep keeps input order for any job count") {
  const auto s = preset_scenario(Family::kMermin3);
  std::vector<double> ps;
  for (int i = 0; i <= 10; ++i) ps.push_back(i / 10.0);
  const auto serial = sweep(s, ps, 1);
  const auto parallel = sweep(s, ps, 3);
  REQUIRE(serial.size() == ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(serial[i].p == ps[i]);
    CHECK(parallel[i].margin == serial[i].margin);
    CHECK(std::abs(serial[i].margin - (2.0 - 4.0 * (1.0 - ps[i]))) < 1e-10);
  }
}

TEST_CASE("optimize_settings recovers the maximal tripartite violations") {
  const auto entropic = optimize_settings(Family::kEntropic3, ghz_state(), 0.0);
  CHECK(std::abs(entropic.margin + 1.0) < 1e-9);
  CHECK(entropic.margin <= entropic.grid_margin);
  CHECK(std::abs(margin_at(entropic.scenario, 0.0) - entropic.margin) < 1e-12);

  const auto mermin = optimize_settings(Family::kMermin3, ghz_state(), 0.0);
  const auto r = report_at(mermin.scenario, 0.0);
  CHECK(std::abs(*r.mermin_value - 4.0) < 1e-6);
}

TEST_CASE("optimize_settings finds a bipartite violation on the singlet") {
  const auto bc = optimize_settings(Family::kBc2, singlet_state(), 0.0);
  CHECK(bc.margin < -kViolationTol);
  CHECK(bc.margin <= bc.grid_margin);
  CHECK_FALSE(bc.used_free_bloch);
  // Best chain margin over θ from the closed form: about -0.4738.
  double best = 0.0;
  for (int i = 1; i < 20000; ++i) best = std::min(best, oracle::bc_chain_margin(0.0, i * (pi / 3) / 20000));
  CHECK(bc.margin <= best + 1e-6);

  const auto again = optimize_settings(Family::kBc2, singlet_state(), 0.0, {.restarts = 4, .jobs = 2});
  CHECK(again.margin == bc.margin);
}

TEST_CASE("optimize_settings free searches") {
  OptimizeOptions free;
  free.free_search = true;
  free.restarts = 2;
  const auto entropic = optimize_settings(Family::kEntropic3, ghz_state(), 0.0, free);
  CHECK(entropic.margin <= -1.0 + 1e-9);
  CHECK(entropic.params.size() == 6);

  const auto bc = optimize_settings(Family::kBc2, singlet_state(), 0.0, free);
  CHECK(bc.used_free_bloch);
  CHECK(bc.params.size() == 8);
  CHECK(bc.margin < -0.47);
  CHECK_THROWS_AS(optimize_settings(Family::kBc2, singlet_state(), 0.0, {.restarts = 0}),
                  std::invalid_argument);
}

TEST_CASE("bipartite threshold with settings optimized at p = 0") {
  const auto scenario = preset_scenario(Family::kBc2);
  const auto t = find_threshold(scenario);
  REQUIRE(t.status == ThresholdStatus::kFound);
  CHECK(t.p_star >= 0.03);
  CHECK(t.p_star <= 0.05);
  // Closed-form chain at the p = 0 optimum angle.
  double best_theta = 0.0, best = 0.0;
  for (int i = 1; i < 200000; ++i) {
    const double theta = i * (pi / 3) / 200000;
    const double m = oracle::bc_chain_margin(0.0, theta);
    if (m < best) best = m, best_theta = theta;
  }
  const double root =
      oracle::bisect([&](double p) { return oracle::bc_chain_margin(p, best_theta); }, 0.0, 0.2);
  CHECK(std::abs(t.p_star - root) < 1e-3);
}

TEST_CASE("nelder_mead minimizes a shifted quadratic") {
  auto f = [](const std::vector<double>& x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 10.0 * (x[1] + 2.0) * (x[1] + 2.0);
  };
  const auto r = nelder_mead(f, {0.0, 0.0});
  CHECK(r.converged);
  CHECK(std::abs(r.x[0] - 1.0) < 1e-5);
  CHECK(std::abs(r.x[1] + 2.0) < 1e-5);
  CHECK(r.value <= f({0.0, 0.0}));
  CHECK_THROWS_AS(nelder_mead(f, {}), std::invalid_argument);
}

}  // TEST_SUITE
