#include "entropic_ghz/infometrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eghz {

namespace {

// Probabilities at or below this contribute nothing to an entropy sum.
constexpr double kEntropyZero = 1e-15;

double plogp(double p) { return p <= kEntropyZero ? 0.0 : -p * std::log2(p); }

void require_two_variables(const JointOutcomeDistribution& joint) {
  if (joint.n_parties() != 2) {
    throw std::invalid_argument("expected a two-variable joint distribution, got " +
                                std::to_string(joint.n_parties()) + " variables");
  }
}

}  // namespace

BinaryDistribution::BinaryDistribution(double p_plus) : p_plus_(p_plus) {
  if (!(p_plus >= -kAlgebraTol && p_plus <= 1.0 + kAlgebraTol)) {
    throw std::invalid_argument("P(+1) must lie in [0, 1]");
  }
  p_plus_ = std::clamp(p_plus, 0.0, 1.0);
}

double shannon_entropy(std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    throw std::invalid_argument("distribution is not normalized (sum " + std::to_string(sum) + ")");
  }
  return std::accumulate(probs.begin(), probs.end(), 0.0,
                         [](double acc, double p) { return acc + plogp(p); });
}

double shannon_entropy(const BinaryDistribution& dist) {
  return plogp(dist.p_plus()) + plogp(dist.p_minus());
}

double binary_entropy(double q) { return shannon_entropy(BinaryDistribution(q)); }

double joint_entropy(const JointOutcomeDistribution& joint) {
  return shannon_entropy(joint.probs());
}

double conditional_entropy(const JointOutcomeDistribution& joint, int conditioned_on) {
  require_two_variables(joint);
  if (conditioned_on != 0 && conditioned_on != 1) {
    throw std::invalid_argument("conditioning variable must be 0 or 1");
  }
  const int which[] = {conditioned_on};
  const double h = joint_entropy(joint) - joint_entropy(joint.marginal(which));
  return h < 0.0 && h > -kAlgebraTol ? 0.0 : h;
}

BinaryDistribution product_distribution(const JointOutcomeDistribution& joint,
                                        std::span<const int> subset) {
  if (subset.empty()) throw std::invalid_argument("product of an empty set of variables");
  std::size_t mask = 0;
  for (int k : subset) {
    if (k < 0 || k >= joint.n_parties()) throw std::invalid_argument("variable index out of range");
    // A repeated index squares to +1, which toggling the bit twice reproduces.
    mask ^= std::size_t{1} << (joint.n_parties() - 1 - k);
  }
  if (mask == 0) return BinaryDistribution(1.0);
  double p_plus = 0.0;
  for (std::size_t idx = 0; idx < joint.size(); ++idx) {
    if (std::popcount(idx & mask) % 2 == 0) p_plus += joint.prob(idx);
  }
  return BinaryDistribution(p_plus);
}

double product_entropy(const JointOutcomeDistribution& joint, std::span<const int> subset) {
  return shannon_entropy(product_distribution(joint, subset));
}

JointOutcomeDistribution product_variables(const JointOutcomeDistribution& joint,
                                           const std::vector<std::vector<int>>& groups) {
  const int m = static_cast<int>(groups.size());
  if (m == 0) throw std::invalid_argument("need at least one product variable");
  std::vector<std::size_t> masks;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("product variable over no coordinates");
    std::size_t mask = 0;
    for (int k : g) {
      if (k < 0 || k >= joint.n_parties()) throw std::invalid_argument("variable index out of range");
      mask ^= std::size_t{1} << (joint.n_parties() - 1 - k);
    }
    masks.push_back(mask);
  }
  std::vector<double> out(std::size_t{1} << m, 0.0);
  for (std::size_t idx = 0; idx < joint.size(); ++idx) {
    std::size_t sub = 0;
    for (std::size_t mask : masks) sub = (sub << 1) | (std::popcount(idx & mask) & 1u);
    out[sub] += joint.prob(idx);
  }
  return {m, std::move(out)};
}

double product_distance(const JointOutcomeDistribution& joint) {
  require_two_variables(joint);
  return multi_delta(joint);
}

double multi_delta(const JointOutcomeDistribution& joint) {
  std::vector<int> all(static_cast<std::size_t>(joint.n_parties()));
  std::iota(all.begin(), all.end(), 0);
  return product_entropy(joint, all);
}

double bc_distance(const JointOutcomeDistribution& joint) {
  return conditional_entropy(joint, 1) + conditional_entropy(joint, 0);
}

double covariance_delta(double expectation) {
  if (!(expectation >= -1.0 - kEigenTol && expectation <= 1.0 + kEigenTol)) {
    throw std::invalid_argument("expectation of a ±1 observable must lie in [-1, 1]");
  }
  return 1.0 - expectation;
}

}  // namespace eghz
