#include "entropic_ghz/noise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <stdexcept>
#include <string>

#include "entropic_ghz/nelder_mead.hpp"
#include "entropic_ghz/rng.hpp"

namespace eghz {

namespace {

constexpr double kGridStep = std::numbers::pi / 24.0;
constexpr int kMonotoneSamples = 16;

// Runs task(i) for i in [0, count) on up to `jobs` threads; results keep index order.
template <typename T>
std::vector<T> parallel_map(std::size_t count, int jobs, const std::function<T(std::size_t)>& task) {
  std::vector<T> out(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = task(i);
    return out;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::future<void>> futures;
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) out[i] = task(i);
    }));
  }
  for (auto& f : futures) f.get();
  return out;
}

// Maps a raw parameter vector to the observables of a family.
using Parameterization = std::function<std::vector<BlochObservable>(const std::vector<double>&)>;

Parameterization symmetric_tripartite() {
  return [](const std::vector<double>& t) {
    const auto first = xy_observable(t[0]);
    const auto second = xy_observable(t[1]);
    return std::vector<BlochObservable>{first, second, first, second, first, second};
  };
}

Parameterization free_tripartite() {
  return [](const std::vector<double>& t) {
    std::vector<BlochObservable> out;
    for (double angle : t) out.push_back(xy_observable(angle));
    return out;
  };
}

// Coplanar a, a', b, b'.
Parameterization coplanar_bipartite() { return free_tripartite(); }

// (polar, azimuth) for each of a, a', b, b'.
Parameterization bloch_bipartite() {
  return [](const std::vector<double>& t) {
    std::vector<BlochObservable> out;
    for (std::size_t i = 0; i + 1 < t.size(); i += 2) {
      out.push_back(BlochObservable::from_spherical(t[i], t[i + 1]));
    }
    return out;
  };
}

InequalityReport report_for(Family family, const DensityMatrix& state,
                            const std::vector<BlochObservable>& s) {
  switch (family) {
    case Family::kEntropic3:
      return entropic_mermin_report(state, {s[0], s[1], s[2], s[3], s[4], s[5]});
    case Family::kMermin3:
      return mermin_correlation_report(state, {s[0], s[1], s[2], s[3], s[4], s[5]});
    case Family::kBc2:
      return bc_inequality_report(state, {s[0], s[1], s[2], s[3]});
  }
  throw std::logic_error("unknown family");
}

struct Candidate {
  std::vector<double> params;
  double margin = INFINITY;
};

class SettingsSearch {
 public:
  SettingsSearch(Family family, const DensityMatrix& noisy, Parameterization param)
      : family_(family), noisy_(noisy), param_(std::move(param)) {}

  double margin(const std::vector<double>& params) const {
    return report_for(family_, noisy_, param_(params)).margin;
  }

  std::vector<BlochObservable> observables(const std::vector<double>& params) const {
    return param_(params);
  }

  std::vector<Candidate> evaluate(std::vector<std::vector<double>> points, int jobs) const {
    return parallel_map<Candidate>(points.size(), jobs, [&](std::size_t i) {
      return Candidate{points[i], margin(points[i])};
    });
  }

  Candidate refine(const std::vector<double>& start) const {
    NelderMeadOptions opts;
    opts.initial_step = kGridStep / 2.0;
    opts.diameter_tol = 1e-6;
    auto r = nelder_mead([this](const std::vector<double>& x) { return margin(x); }, start, opts);
    return {r.x, r.value};
  }

 private:
  Family family_;
  DensityMatrix noisy_;
  Parameterization param_;
};

// Lexicographic grid over `dims` angles in [0, span) with step kGridStep;
// `fixed_prefix` pins leading coordinates.
std::vector<std::vector<double>> angle_grid(int dims, double span,
                                            const std::vector<double>& fixed_prefix = {}) {
  const int steps = static_cast<int>(std::lround(span / kGridStep));
  std::vector<std::vector<double>> out;
  std::vector<int> counter(static_cast<std::size_t>(dims), 0);
  while (true) {
    std::vector<double> point = fixed_prefix;
    for (int c : counter) point.push_back(c * kGridStep);
    out.push_back(std::move(point));
    int k = dims - 1;
    while (k >= 0 && ++counter[static_cast<std::size_t>(k)] == steps) {
      counter[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

// Best `count` candidates, ordered by margin then by grid position.
std::vector<Candidate> best_of(std::vector<Candidate> all, std::size_t count) {
  std::stable_sort(all.begin(), all.end(),
                   [](const Candidate& a, const Candidate& b) { return a.margin < b.margin; });
  all.resize(std::min(count, all.size()));
  return all;
}

// Refines each start (jittered after the first) and keeps the overall best,
// which is never worse than the best start.
Candidate refine_all(const SettingsSearch& search, const std::vector<Candidate>& starts,
                     std::uint64_t seed, int jobs) {
  std::vector<std::vector<double>> points;
  Rng rng(seed, 0);
  for (std::size_t i = 0; i < starts.size(); ++i) {
    auto p = starts[i].params;
    if (i > 0) {
      for (double& v : p) v += (rng.uniform() - 0.5) * kGridStep;
    }
    points.push_back(std::move(p));
  }
  auto refined = parallel_map<Candidate>(points.size(), jobs, [&](std::size_t i) {
    return search.refine(points[i]);
  });
  Candidate best = starts.front();
  for (const auto& c : refined) {
    if (c.margin < best.margin) best = c;
  }
  return best;
}

}  // namespace

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kEntropic3: return "entropic3";
    case Family::kMermin3: return "mermin3";
    case Family::kBc2: return "bc2";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::kEntropic3, Family::kMermin3, Family::kBc2}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

int settings_count(Family family) { return family == Family::kBc2 ? 4 : 6; }

Scenario::Scenario(Family family, DensityMatrix base_state, std::vector<BlochObservable> settings)
    : family_(family), base_state_(std::move(base_state)), settings_(std::move(settings)) {
  if (static_cast<int>(settings_.size()) != settings_count(family_)) {
    throw std::invalid_argument("family " + std::string(family_name(family_)) + " needs " +
                                std::to_string(settings_count(family_)) + " observables, got " +
                                std::to_string(settings_.size()));
  }
  const int qubits = family_ == Family::kBc2 ? 2 : 3;
  if (base_state_.n_qubits() != qubits) {
    throw std::invalid_argument("family " + std::string(family_name(family_)) + " needs a " +
                                std::to_string(qubits) + "-qubit state");
  }
}

TripartiteSettings Scenario::tripartite() const {
  if (family_ == Family::kBc2) throw std::logic_error("bc2 scenario has no tripartite settings");
  const auto& s = settings_;
  return {s[0], s[1], s[2], s[3], s[4], s[5]};
}

BipartiteSettings Scenario::bipartite() const {
  if (family_ != Family::kBc2) throw std::logic_error("tripartite scenario has no bipartite settings");
  const auto& s = settings_;
  return {s[0], s[1], s[2], s[3]};
}

InequalityReport report_at(const Scenario& scenario, double p) {
  return report_for(scenario.family(), noisy_state(scenario.base_state(), p), scenario.settings());
}

double margin_at(const Scenario& scenario, double p) { return report_at(scenario, p).margin; }

ThresholdResult find_threshold(const Scenario& scenario, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("threshold tolerance must be positive");
  ThresholdResult result;
  auto violated = [](double m) { return m < -kViolationTol; };

  const double m0 = margin_at(scenario, 0.0);
  if (!violated(m0)) {
    result.status = ThresholdStatus::kNoViolation;
    result.margin_at_p_star = m0;
    return result;
  }
  double previous = m0;
  for (int i = 1; i < kMonotoneSamples; ++i) {
    const double m = margin_at(scenario, static_cast<double>(i) / (kMonotoneSamples - 1));
    if (m < previous - kAlgebraTol) {
      result.status = ThresholdStatus::kNonMonotone;
      return result;
    }
    previous = m;
  }
  if (violated(previous)) {
    result.status = ThresholdStatus::kNoCrossing;
    result.p_star = 1.0;
    result.margin_at_p_star = previous;
    return result;
  }

  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (violated(margin_at(scenario, mid)) ? lo : hi) = mid;
    ++result.iterations;
  }
  result.status = ThresholdStatus::kFound;
  result.p_star = 0.5 * (lo + hi);
  result.bracket_width = hi - lo;
  result.margin_at_p_star = margin_at(scenario, result.p_star);
  return result;
}

std::vector<SweepRow> sweep(const Scenario& scenario, std::span<const double> ps, int jobs) {
  return parallel_map<SweepRow>(ps.size(), jobs, [&](std::size_t i) {
    const auto r = report_at(scenario, ps[i]);
    return SweepRow{ps[i], r.lhs, r.rhs_total, r.margin};
  });
}

OptimizeResult optimize_settings(Family family, const DensityMatrix& state, double p,
                                 const OptimizeOptions& options) {
  if (options.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  const auto noisy = noisy_state(state, p);
  const auto restarts = static_cast<std::size_t>(options.restarts);

  if (family != Family::kBc2) {
    // The symmetric grid seeds both the symmetric and the free search.
    SettingsSearch symmetric(family, noisy, symmetric_tripartite());
    auto grid = symmetric.evaluate(angle_grid(2, 2.0 * std::numbers::pi), options.jobs);
    auto starts = best_of(grid, restarts);
    const double grid_margin = starts.front().margin;
    Candidate best = refine_all(symmetric, starts, options.seed, options.jobs);
    std::vector<BlochObservable> observables = symmetric.observables(best.params);
    std::vector<double> params = best.params;

    if (options.free_search) {
      SettingsSearch free(family, noisy, free_tripartite());
      std::vector<Candidate> free_starts;
      const auto& t = best.params;
      free_starts.push_back({{t[0], t[1], t[0], t[1], t[0], t[1]}, best.margin});
      Rng rng(options.seed, 1);
      for (std::size_t i = 1; i < restarts; ++i) {
        std::vector<double> x(6);
        for (double& v : x) v = rng.uniform() * 2.0 * std::numbers::pi;
        free_starts.push_back({x, free.margin(x)});
      }
      Candidate free_best = refine_all(free, free_starts, options.seed + 1, options.jobs);
      params = free_best.params;
      observables = free.observables(params);
      best = free_best;
    }
    return {Scenario(family, state, std::move(observables)), best.margin, grid_margin,
            std::move(params), false};
  }

  // Bipartite: coplanar grid with a = 0 (outcome relabeling makes [0, π)
  // sufficient for the other three), chained 0, θ, 2θ, 3θ pattern included.
  SettingsSearch coplanar(family, noisy, coplanar_bipartite());
  auto points = angle_grid(3, std::numbers::pi, {0.0});
  for (int k = 1; k < 24; ++k) {
    const double theta = k * kGridStep / 3.0;
    points.push_back({0.0, 2.0 * theta, 3.0 * theta, theta});
  }
  auto starts = best_of(coplanar.evaluate(std::move(points), options.jobs), restarts);
  const double grid_margin = starts.front().margin;
  Candidate best = refine_all(coplanar, starts, options.seed, options.jobs);

  if (!options.free_search && best.margin < -kViolationTol) {
    auto observables = coplanar.observables(best.params);
    return {Scenario(family, state, std::move(observables)), best.margin, grid_margin,
            best.params, false};
  }

  SettingsSearch bloch(family, noisy, bloch_bipartite());
  std::vector<Candidate> bloch_starts;
  {
    std::vector<double> x;
    for (double angle : best.params) {
      x.push_back(std::numbers::pi / 2.0);
      x.push_back(angle);
    }
    bloch_starts.push_back({x, best.margin});
  }
  Rng rng(options.seed, 2);
  for (std::size_t i = 1; i < restarts; ++i) {
    std::vector<double> x(8);
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = rng.uniform() * (j % 2 == 0 ? std::numbers::pi : 2.0 * std::numbers::pi);
    }
    bloch_starts.push_back({x, bloch.margin(x)});
  }
  Candidate bloch_best = refine_all(bloch, bloch_starts, options.seed + 1, options.jobs);
  auto observables = bloch.observables(bloch_best.params);
  return {Scenario(family, state, std::move(observables)), bloch_best.margin, grid_margin,
          bloch_best.params, true};
}

Scenario preset_scenario(Family family, const OptimizeOptions& options) {
  switch (family) {
    case Family::kEntropic3:
      return {family, ghz_state(), TripartiteSettings::reference().flat()};
    case Family::kMermin3:
      return {family, ghz_state(), TripartiteSettings::pauli_xy().flat()};
    case Family::kBc2:
      return optimize_settings(family, singlet_state(), 0.0, options).scenario;
  }
  throw std::logic_error("unknown family");
}

}  // namespace eghz
