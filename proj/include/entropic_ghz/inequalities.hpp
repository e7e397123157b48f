// The three inequality families evaluated on quantum states:
//
//   entropic Mermin   H(A1B1C1) <= H(A1B2C2) + H(A2B1C2) + H(A2B2C1)
//   correlation form  the same chain with δ = 1 - <A_i B_j C_k>, equivalent
//                     to the Mermin combination M = E111 - E122 - E212 - E221 <= 2
//   chained bipartite d(A,B) <= d(A,B') + d(A',B') + d(A',B), d = H(·|·) + H(·|·)
//
// plus the sign-based GHZ check on YYX, YXY, XYY, XXX.
//
// Composite labels follow the usual naming: A = A1B2C2, B = A2B1C2,
// C = A2B2C1, D = A1B1C1.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "entropic_ghz/qstate.hpp"

namespace eghz {

/// margin < -kViolationTol counts as a violation.
inline constexpr double kViolationTol = 1e-10;

struct InequalityReport {
  double lhs = 0.0;
  std::vector<double> rhs_terms;
  double rhs_total = 0.0;
  /// rhs_total - lhs; negative means violated.
  double margin = 0.0;
  bool violated = false;
  /// lhs label first, then one label per rhs term.
  std::vector<std::string> labels;
  /// Mermin combination, only set by the correlation report.
  std::optional<double> mermin_value;

  static InequalityReport make(double lhs, std::vector<double> rhs_terms,
                               std::vector<std::string> labels);
};

/// Setting indices (0 = first setting, 1 = second) for one tripartite context.
struct Context {
  int a, b, c;
  std::string label() const;
};

/// D first, then A, B, C in the order they appear on the right-hand side.
inline constexpr std::array<Context, 4> kTripartiteContexts{{
    {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};

inline constexpr std::array<const char*, 4> kCompositeNames{"D", "A", "B", "C"};

struct TripartiteSettings {
  BlochObservable a1, a2, b1, b2, c1, c2;

  /// A1=B1=C1 = xy(π/6), A2=B2=C2 = xy(-π/12).
  static TripartiteSettings reference();
  /// A1=B1=C1 = X, A2=B2=C2 = Y.
  static TripartiteSettings pauli_xy();
  /// XY-plane angles in the order a1, a2, b1, b2, c1, c2.
  static TripartiteSettings from_xy_angles(const std::array<double, 6>& angles);

  MeasurementSetting context(const Context& ctx) const;
  /// Flattened as a1, a2, b1, b2, c1, c2.
  std::vector<BlochObservable> flat() const;
};

struct BipartiteSettings {
  BlochObservable a, a_prime, b, b_prime;

  static BipartiteSettings from_xy_angles(double a, double a_prime, double b, double b_prime);
  std::vector<BlochObservable> flat() const;
};

struct ParadoxTable {
  double h_a = 0.0, h_b = 0.0, h_c = 0.0, h_d = 0.0;
};

struct SignGhzCheck {
  double yyx = 0.0, yxy = 0.0, xyy = 0.0, xxx = 0.0;
  bool consistent = false;
};

InequalityReport entropic_mermin_report(const DensityMatrix& state,
                                        const TripartiteSettings& settings);

/// Entropies of A, B, C, D under the reference settings (or explicit ones).
ParadoxTable paradox_table(const DensityMatrix& state);
ParadoxTable paradox_table(const DensityMatrix& state, const TripartiteSettings& settings);

/// Covariance-distance form with terms 1 + E_ijk (Alice's outcomes flipped),
/// so margin = 2 - M for M = E111 - E122 - E212 - E221; fills mermin_value.
InequalityReport mermin_correlation_report(const DensityMatrix& state,
                                           const TripartiteSettings& settings);

InequalityReport bc_inequality_report(const DensityMatrix& state,
                                      const BipartiteSettings& settings);

SignGhzCheck sign_ghz_check(const DensityMatrix& state);

}  // namespace eghz
