#include "entropic_ghz/lhv.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "entropic_ghz/infometrics.hpp"
#include "entropic_ghz/lp.hpp"
#include "entropic_ghz/rng.hpp"

namespace eghz {

namespace {

constexpr double kClassicalNormTol = 1e-12;
constexpr double kNoSignalingTol = 1e-9;
constexpr std::size_t kClassicalSize = std::size_t{1} << kClassicalVariables;

std::array<int, 3> context_variables(const Context& ctx) {
  return {classical_variable(0, ctx.a), classical_variable(1, ctx.b), classical_variable(2, ctx.c)};
}

JointOutcomeDistribution checked_joint(std::vector<double> probs) {
  if (probs.size() != kClassicalSize) {
    throw std::invalid_argument("classical joint needs 64 entries");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("classical joint has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kClassicalNormTol) {
    throw std::invalid_argument("classical joint does not sum to 1");
  }
  return {kClassicalVariables, std::move(probs)};
}

}  // namespace

ClassicalJoint::ClassicalJoint(std::vector<double> probs) : dist_(checked_joint(std::move(probs))) {}

JointOutcomeDistribution ClassicalJoint::context_marginal(const Context& ctx) const {
  const auto vars = context_variables(ctx);
  return dist_.marginal(vars);
}

ClassicalJoint random_joint(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(kClassicalSize);
  double sum = 0.0;
  for (double& x : w) {
    x = rng.exponential();
    sum += x;
  }
  for (double& x : w) x /= sum;
  return ClassicalJoint(std::move(w));
}

DeterministicStrategy DeterministicStrategy::from_index(std::size_t index) {
  if (index >= kClassicalSize) throw std::invalid_argument("strategy index out of range");
  DeterministicStrategy s{};
  for (int v = 0; v < kClassicalVariables; ++v) {
    s.assignment[static_cast<std::size_t>(v)] = bit_index_outcome(index, v, kClassicalVariables);
  }
  return s;
}

ClassicalJoint DeterministicStrategy::to_joint() const {
  std::vector<double> probs(kClassicalSize, 0.0);
  probs[JointOutcomeDistribution::index_of(assignment)] = 1.0;
  return ClassicalJoint(std::move(probs));
}

StrategyProducts strategy_product_check(const DeterministicStrategy& s) {
  for (int v : s.assignment) {
    if (v != 1 && v != -1) throw std::invalid_argument("strategy values must be ±1");
  }
  const auto& x = s.assignment;
  const int a1 = x[0], a2 = x[1], b1 = x[2], b2 = x[3], c1 = x[4], c2 = x[5];
  StrategyProducts out{a1 * b2 * c2, a2 * b1 * c2, a2 * b2 * c1, a1 * b1 * c1, 0};
  out.product = out.a * out.b * out.c * out.d;
  return out;
}

InequalityReport classical_entropic_mermin(const ClassicalJoint& joint) {
  std::array<double, 4> h{};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < kTripartiteContexts.size(); ++i) {
    const auto& ctx = kTripartiteContexts[i];
    h[i] = product_entropy(joint.distribution(), context_variables(ctx));
    labels.push_back(std::string(kCompositeNames[i]) + "=" + ctx.label());
  }
  return InequalityReport::make(h[0], {h[1], h[2], h[3]}, std::move(labels));
}

DerivationChain derivation_chain(const ClassicalJoint& joint) {
  constexpr int A1 = 0, A2 = 1, B1 = 2, B2 = 3, C1 = 4, C2 = 5;
  const auto& d = joint.distribution();
  auto h = [&](std::initializer_list<int> vars) {
    return product_entropy(d, std::span<const int>(vars.begin(), vars.size()));
  };
  const double delta_111 = h({A1, B1, C1});
  const double d_a1_b2c2 = h({A1, B2, C2});
  const double delta_b2c1b1c2 = h({B2, C1, B1, C2});
  const double d_a2_b2c1 = h({A2, B2, C1});
  const double d_a2_b1c2 = h({A2, B1, C2});
  DerivationChain out;
  out.first_margin = d_a1_b2c2 + delta_b2c1b1c2 - delta_111;
  out.second_margin = d_a2_b2c1 + d_a2_b1c2 - delta_b2c1b1c2;
  out.final = classical_entropic_mermin(joint);
  return out;
}

Eigen::MatrixXd context_marginal_matrix() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(32, static_cast<Eigen::Index>(kClassicalSize));
  for (std::size_t k = 0; k < kTripartiteContexts.size(); ++k) {
    const auto vars = context_variables(kTripartiteContexts[k]);
    for (std::size_t x = 0; x < kClassicalSize; ++x) {
      std::size_t sub = 0;
      for (int v : vars) sub = (sub << 1) | ((x >> (kClassicalVariables - 1 - v)) & 1u);
      a(static_cast<Eigen::Index>(8 * k + sub), static_cast<Eigen::Index>(x)) = 1.0;
    }
  }
  return a;
}

LhvFeasibility lhv_feasibility(std::span<const JointOutcomeDistribution, 4> contexts) {
  for (const auto& c : contexts) {
    if (c.n_parties() != 3) throw std::invalid_argument("context distributions must be tripartite");
  }
  // Each observable appears in two contexts; its marginals must agree.
  for (int party = 0; party < 3; ++party) {
    for (int setting = 0; setting < 2; ++setting) {
      std::optional<double> seen;
      std::size_t seen_in = 0;
      for (std::size_t k = 0; k < contexts.size(); ++k) {
        const auto& ctx = kTripartiteContexts[k];
        const int s = party == 0 ? ctx.a : party == 1 ? ctx.b : ctx.c;
        if (s != setting) continue;
        const int which[] = {party};
        const double p_plus = contexts[k].marginal(which).prob(0);
        if (seen && std::abs(*seen - p_plus) > kNoSignalingTol) {
          throw std::invalid_argument(
              "no-signaling violated: P(+1) of party " + std::to_string(party) + " setting " +
              std::to_string(setting + 1) + " is " + std::to_string(*seen) + " in context " +
              kTripartiteContexts[seen_in].label() + " but " + std::to_string(p_plus) +
              " in context " + ctx.label());
        }
        seen = p_plus;
        seen_in = k;
      }
    }
  }

  const Eigen::MatrixXd a = context_marginal_matrix();
  Eigen::VectorXd b(32);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < 8; ++i) b(static_cast<Eigen::Index>(8 * k + i)) = contexts[k].prob(i);
  }
  const auto lp = solve_feasibility(a, b, kNoSignalingTol);

  LhvFeasibility out;
  out.infeasibility = lp.infeasibility;
  if (!lp.feasible) {
    out.farkas = lp.farkas;
    return out;
  }
  std::vector<double> w(lp.x.data(), lp.x.data() + lp.x.size());
  const double sum = lp.x.sum();
  for (double& x : w) x /= sum;
  ClassicalJoint witness(std::move(w));
  const Eigen::Map<const Eigen::VectorXd> wx(witness.distribution().probs().data(),
                                             static_cast<Eigen::Index>(kClassicalSize));
  out.max_residual = (a * wx - b).cwiseAbs().maxCoeff();
  out.feasible = out.max_residual <= kNoSignalingTol;
  out.witness = std::move(witness);
  return out;
}

std::array<JointOutcomeDistribution, 4> quantum_contexts(const DensityMatrix& state,
                                                         const TripartiteSettings& settings) {
  auto ctx = [&](std::size_t k) {
    return joint_outcome_distribution(state, settings.context(kTripartiteContexts[k]));
  };
  return {ctx(0), ctx(1), ctx(2), ctx(3)};
}

}  // namespace eghz
