// White-noise robustness: margin of an inequality on ρ(p) = (1-p)ρ + p·I/2^n,
// the noise fraction at which the violation vanishes, and a search over
// measurement angles for the strongest violation.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "entropic_ghz/inequalities.hpp"
#include "entropic_ghz/qstate.hpp"

namespace eghz {

enum class Family { kEntropic3, kMermin3, kBc2 };

/// "entropic3", "mermin3", "bc2".
std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);
/// Observables per scenario: 6 for the tripartite families, 4 for bc2.
int settings_count(Family family);

/// A state together with the observables of one inequality family.
/// Settings are ordered a1, a2, b1, b2, c1, c2 (tripartite) or a, a', b, b'.
class Scenario {
 public:
  Scenario(Family family, DensityMatrix base_state, std::vector<BlochObservable> settings);

  Family family() const { return family_; }
  const DensityMatrix& base_state() const { return base_state_; }
  const std::vector<BlochObservable>& settings() const { return settings_; }

  TripartiteSettings tripartite() const;
  BipartiteSettings bipartite() const;

 private:
  Family family_;
  DensityMatrix base_state_;
  std::vector<BlochObservable> settings_;
};

/// Inequality report of the scenario's family on noisy_state(base, p).
InequalityReport report_at(const Scenario& scenario, double p);
/// rhs_total - lhs on noisy_state(base, p); negative means violation.
double margin_at(const Scenario& scenario, double p);

enum class ThresholdStatus {
  kFound,
  /// margin_at(0) >= -1e-10: nothing to lose.
  kNoViolation,
  /// Still violated at p = 1.
  kNoCrossing,
  /// The 16-point scan of [0, 1] was not nondecreasing.
  kNonMonotone,
};

struct ThresholdResult {
  ThresholdStatus status = ThresholdStatus::kNoViolation;
  double p_star = 0.0;
  int iterations = 0;
  double bracket_width = 0.0;
  double margin_at_p_star = 0.0;
};

/// Bisection for the smallest p with margin >= -1e-10, to bracket width tol.
/// p_star is the midpoint of the final bracket.
ThresholdResult find_threshold(const Scenario& scenario, double tol = 1e-4);

struct SweepRow {
  double p, lhs, rhs_total, margin;
};

/// One row per p, in input order regardless of jobs.
std::vector<SweepRow> sweep(const Scenario& scenario, std::span<const double> ps, int jobs = 1);

struct OptimizeOptions {
  int restarts = 4;
  std::uint64_t seed = 0;
  /// Search all six tripartite angles independently instead of the
  /// A1=B1=C1, A2=B2=C2 subspace (tripartite), or go straight to general
  /// Bloch vectors (bc2).
  bool free_search = false;
  int jobs = 1;
};

struct OptimizeResult {
  Scenario scenario;
  double margin;
  /// Best margin among the coarse grid points, before refinement.
  double grid_margin;
  /// Raw parameter vector of the optimum (angles in radians).
  std::vector<double> params;
  bool used_free_bloch = false;
};

/// Coarse grid (step π/24 per angle) followed by Nelder-Mead refinement from
/// the best grid points, jittered with a seeded stream.
OptimizeResult optimize_settings(Family family, const DensityMatrix& state, double p,
                                 const OptimizeOptions& options = {});

/// Built-in scenarios: entropic3 = GHZ with the π/6, -π/12 settings;
/// mermin3 = GHZ with X/Y settings; bc2 = singlet with settings optimized at p = 0.
Scenario preset_scenario(Family family, const OptimizeOptions& options = {});

}  // namespace eghz
