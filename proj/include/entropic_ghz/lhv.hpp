// Classical side: a single joint distribution over all six observables
// A1, A2, B1, B2, C1, C2 (in that order, A1 as the most significant index
// bit). Any such joint satisfies the entropic chain; the feasibility test
// asks whether four context distributions can come from one.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "entropic_ghz/inequalities.hpp"
#include "entropic_ghz/qstate.hpp"

namespace eghz {

inline constexpr int kClassicalVariables = 6;

/// Coordinate of observable (party, setting) in a ClassicalJoint.
constexpr int classical_variable(int party, int setting) { return 2 * party + setting; }

class ClassicalJoint {
 public:
  /// 64 nonnegative entries summing to 1 within 1e-12.
  explicit ClassicalJoint(std::vector<double> probs);

  const JointOutcomeDistribution& distribution() const { return dist_; }
  /// Marginal over (A_i, B_j, C_k) for the given context.
  JointOutcomeDistribution context_marginal(const Context& ctx) const;

 private:
  JointOutcomeDistribution dist_;
};

/// Flat-Dirichlet sample: 64 Exp(1) weights, normalized. Deterministic per seed.
ClassicalJoint random_joint(std::uint64_t seed);

struct DeterministicStrategy {
  /// ±1 values for A1, A2, B1, B2, C1, C2.
  std::array<int, 6> assignment;

  static DeterministicStrategy from_index(std::size_t index);
  ClassicalJoint to_joint() const;
};

struct StrategyProducts {
  int a, b, c, d, product;
};

/// a = A1B2C2, b = A2B1C2, c = A2B2C1, d = A1B1C1; product is always +1.
StrategyProducts strategy_product_check(const DeterministicStrategy& s);

InequalityReport classical_entropic_mermin(const ClassicalJoint& joint);

/// Margins (rhs - lhs) of the two triangle steps behind the entropic chain:
///   δ(A1,B1,C1) <= d(A1, B2·C2) + δ(B2,C1,B1,C2)
///   δ(B2,C1,B1,C2) <= d(A2, B2·C1) + d(A2, B1·C2)
struct DerivationChain {
  double first_margin = 0.0;
  double second_margin = 0.0;
  InequalityReport final;
};

DerivationChain derivation_chain(const ClassicalJoint& joint);

struct LhvFeasibility {
  bool feasible = false;
  std::optional<ClassicalJoint> witness;
  /// Phase-one objective; > 0 certifies infeasibility.
  double infeasibility = 0.0;
  /// Farkas vector over the 32 marginal constraints (context-major, outcome
  /// index minor) when infeasible.
  Eigen::VectorXd farkas;
  /// Largest |witness marginal - input| when feasible.
  double max_residual = 0.0;
};

/// Contexts in kTripartiteContexts order, each over (A_i, B_j, C_k).
/// Rejects inputs whose single-party marginals disagree by more than 1e-9.
LhvFeasibility lhv_feasibility(std::span<const JointOutcomeDistribution, 4> contexts);

/// The four context distributions a quantum state produces.
std::array<JointOutcomeDistribution, 4> quantum_contexts(const DensityMatrix& state,
                                                         const TripartiteSettings& settings);

/// The 32 x 64 marginalization matrix used by lhv_feasibility.
Eigen::MatrixXd context_marginal_matrix();

}  // namespace eghz
