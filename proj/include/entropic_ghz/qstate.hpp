// Dense qubit linear algebra: density matrices, local ±1 observables,
// tensor products, expectation values and exact outcome distributions.
//
// Qubit ordering: party 0 is the most significant qubit, both in Kronecker
// products and in basis indexing (|q0 q1 q2>, index = 4*q0 + 2*q1 + q2).
//
// Outcome ordering in a JointOutcomeDistribution follows the same rule:
// index bit for party k (MSB = party 0) is 0 for outcome +1 and 1 for -1,
// so index 0 is (+1,...,+1) and entries are lexicographic in (+, -).

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace eghz {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Bloch = Eigen::Vector3d;

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kEigenTol = 1e-10;
inline constexpr double kNormalizationTol = 1e-10;

/// Entrywise comparison with an absolute tolerance.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kAlgebraTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Validated n-qubit state (n in {2, 3}): Hermitian, unit trace, PSD.
class DensityMatrix {
 public:
  /// Throws std::invalid_argument if any invariant fails.
  static DensityMatrix from_matrix(ComplexMatrix m);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  double purity() const;
  double min_eigenvalue() const;

 private:
  DensityMatrix(int n, ComplexMatrix m) : n_qubits_(n), matrix_(std::move(m)) {}

  int n_qubits_;
  ComplexMatrix matrix_;
};

/// A single-qubit observable b·σ with unit Bloch vector b; eigenvalues ±1.
class BlochObservable {
 public:
  /// Requires |b| = 1 within 1e-12.
  explicit BlochObservable(const Bloch& b);

  /// Normalizes a nonzero direction first.
  static BlochObservable from_direction(const Bloch& dir);
  /// Spherical angles: polar angle from +z, azimuth in the xy plane.
  static BlochObservable from_spherical(double polar, double azimuth);

  static BlochObservable x() { return BlochObservable(Bloch(1, 0, 0)); }
  static BlochObservable y() { return BlochObservable(Bloch(0, 1, 0)); }
  static BlochObservable z() { return BlochObservable(Bloch(0, 0, 1)); }

  const Bloch& bloch() const { return bloch_; }

  /// 2x2 matrix b_x X + b_y Y + b_z Z.
  ComplexMatrix matrix() const;
  /// Spectral projector (I + outcome * M) / 2 for outcome in {+1, -1}.
  ComplexMatrix projector(int outcome) const;

 private:
  Bloch bloch_;
};

/// cos(theta) X + sin(theta) Y, theta in radians (reduced mod 2π).
BlochObservable xy_observable(double theta);

/// One local observable per party, party 0 first.
struct MeasurementSetting {
  std::vector<BlochObservable> per_party;

  std::size_t size() const { return per_party.size(); }
};

/// Dense probability table over ±1 outcome tuples (see header comment for
/// the index convention).
class JointOutcomeDistribution {
 public:
  /// Requires probs.size() == 2^n_parties, entries >= -1e-12 (clamped to 0),
  /// sum 1 within 1e-10.
  JointOutcomeDistribution(int n_parties, std::vector<double> probs);

  static JointOutcomeDistribution uniform(int n_parties);
  /// Point mass on the given ±1 tuple.
  static JointOutcomeDistribution deterministic(std::span<const int> outcomes);

  int n_parties() const { return n_parties_; }
  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  double prob(std::size_t index) const { return probs_.at(index); }
  /// Probability of an explicit ±1 tuple.
  double prob_of(std::span<const int> outcomes) const;

  /// ±1 outcome of `party` in table entry `index`.
  int outcome(std::size_t index, int party) const;
  static std::size_t index_of(std::span<const int> outcomes);

  /// Marginal over the listed parties, in the listed order.
  JointOutcomeDistribution marginal(std::span<const int> parties) const;

 private:
  int n_parties_;
  std::vector<double> probs_;
};

inline constexpr int bit_index_outcome(std::size_t index, int party, int n_parties) {
  return ((index >> (n_parties - 1 - party)) & 1u) ? -1 : 1;
}

DensityMatrix ghz_state(int n_parties = 3);
/// (|01> - |10>)/√2.
DensityMatrix singlet_state();
DensityMatrix maximally_mixed_state(int n_qubits);
/// (1 - p) * pure + p * I / 2^n, p in [0, 1].
DensityMatrix noisy_state(const DensityMatrix& pure, double p);

/// Kronecker product of the local observable matrices.
ComplexMatrix product_observable(const MeasurementSetting& setting);

/// Born-rule probabilities Tr[ρ (Π_a ⊗ Π_b ⊗ ...)].
JointOutcomeDistribution joint_outcome_distribution(const DensityMatrix& state,
                                                    const MeasurementSetting& setting);

/// Tr[ρ · (M_0 ⊗ M_1 ⊗ ...)].
double product_expectation(const DensityMatrix& state, const MeasurementSetting& setting);

}  // namespace eghz
