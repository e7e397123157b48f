// Shannon entropy and the information distances built on it. All entropies
// are in bits. Joint distributions are the dense ±1 tables from qstate.hpp,
// so the same functions serve quantum contexts and classical joints alike.

#pragma once

#include <span>
#include <vector>

#include "entropic_ghz/qstate.hpp"

namespace eghz {

/// Distribution of a ±1 variable, stored as P(+1).
class BinaryDistribution {
 public:
  explicit BinaryDistribution(double p_plus);
  double p_plus() const { return p_plus_; }
  double p_minus() const { return 1.0 - p_plus_; }

 private:
  double p_plus_;
};

/// -Σ p log2 p with 0 log 0 = 0. Rejects inputs outside [0,1] or whose sum
/// is not 1 within 1e-10.
double shannon_entropy(std::span<const double> probs);
double shannon_entropy(const BinaryDistribution& dist);
/// h(q) = -q log2 q - (1-q) log2 (1-q).
double binary_entropy(double q);

/// H(joint) over all parties.
double joint_entropy(const JointOutcomeDistribution& joint);

/// H(other | conditioned_on) for a two-variable joint; conditioned_on is 0 or 1.
double conditional_entropy(const JointOutcomeDistribution& joint, int conditioned_on);

/// Distribution of the product of the selected ±1 coordinates.
BinaryDistribution product_distribution(const JointOutcomeDistribution& joint,
                                        std::span<const int> subset);

/// H(∏ selected coordinates).
double product_entropy(const JointOutcomeDistribution& joint, std::span<const int> subset);

/// Joint table of several product variables; groups[g] lists the coordinates
/// multiplied into the g-th output variable.
JointOutcomeDistribution product_variables(const JointOutcomeDistribution& joint,
                                           const std::vector<std::vector<int>>& groups);

/// d(A,B) = H(A·B) on a two-variable joint.
double product_distance(const JointOutcomeDistribution& joint);

/// δ(A_1,...,A_n) = H(A_1·...·A_n) over every coordinate of the joint.
double multi_delta(const JointOutcomeDistribution& joint);

/// H(A|B) + H(B|A) on a two-variable joint.
double bc_distance(const JointOutcomeDistribution& joint);

/// 1 - <A_1·...·A_n>, for an expectation in [-1, 1].
double covariance_delta(double expectation);

}  // namespace eghz
