#include "entropic_ghz/qstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eghz {

namespace {

void require_arity(const DensityMatrix& state, const MeasurementSetting& setting) {
  if (static_cast<int>(setting.size()) != state.n_qubits()) {
    throw std::invalid_argument("measurement setting has " + std::to_string(setting.size()) +
                                " observables but the state has " +
                                std::to_string(state.n_qubits()) + " qubits");
  }
}

int qubits_for_dim(Eigen::Index dim) {
  for (int n = 1; n <= 3; ++n) {
    if ((Eigen::Index{1} << n) == dim) return n;
  }
  return -1;
}

ComplexMatrix ket_projector(const Eigen::VectorXcd& ket) { return ket * ket.adjoint(); }

}  // namespace

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("density matrix must be square");
  const int n = qubits_for_dim(m.rows());
  if (n != 2 && n != 3) {
    throw std::invalid_argument("density matrix dimension " + std::to_string(m.rows()) +
                                " is not 2^n for n in {2, 3}");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > kAlgebraTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  DensityMatrix dm(n, std::move(m));
  if (dm.min_eigenvalue() < -kEigenTol) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
  return dm;
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

BlochObservable::BlochObservable(const Bloch& b) : bloch_(b) {
  if (!b.allFinite() || std::abs(b.norm() - 1.0) > kAlgebraTol) {
    throw std::invalid_argument("Bloch vector must have unit norm");
  }
}

BlochObservable BlochObservable::from_direction(const Bloch& dir) {
  const double norm = dir.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("Bloch direction must be a finite nonzero vector");
  }
  return BlochObservable(dir / norm);
}

BlochObservable BlochObservable::from_spherical(double polar, double azimuth) {
  return from_direction(Bloch(std::sin(polar) * std::cos(azimuth),
                              std::sin(polar) * std::sin(azimuth), std::cos(polar)));
}

ComplexMatrix BlochObservable::matrix() const {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  m << bloch_.z(), bloch_.x() - i * bloch_.y(),
       bloch_.x() + i * bloch_.y(), -bloch_.z();
  return m;
}

ComplexMatrix BlochObservable::projector(int outcome) const {
  if (outcome != 1 && outcome != -1) throw std::invalid_argument("outcome must be ±1");
  return 0.5 * (ComplexMatrix::Identity(2, 2) + static_cast<double>(outcome) * matrix());
}

BlochObservable xy_observable(double theta) {
  const double t = std::remainder(theta, 2.0 * std::numbers::pi);
  return BlochObservable(Bloch(std::cos(t), std::sin(t), 0.0));
}

JointOutcomeDistribution::JointOutcomeDistribution(int n_parties, std::vector<double> probs)
    : n_parties_(n_parties), probs_(std::move(probs)) {
  if (n_parties < 1 || n_parties > 16) {
    throw std::invalid_argument("joint distribution needs between 1 and 16 parties");
  }
  if (probs_.size() != (std::size_t{1} << n_parties)) {
    throw std::invalid_argument("joint distribution needs 2^n entries");
  }
  double sum = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -kAlgebraTol || p > 1.0 + kNormalizationTol) {
      throw std::invalid_argument("probability out of range: " + std::to_string(p));
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum) + ", not 1");
  }
}

JointOutcomeDistribution JointOutcomeDistribution::uniform(int n_parties) {
  const std::size_t size = std::size_t{1} << n_parties;
  return {n_parties, std::vector<double>(size, 1.0 / static_cast<double>(size))};
}

JointOutcomeDistribution JointOutcomeDistribution::deterministic(std::span<const int> outcomes) {
  const int n = static_cast<int>(outcomes.size());
  std::vector<double> probs(std::size_t{1} << n, 0.0);
  probs[index_of(outcomes)] = 1.0;
  return {n, std::move(probs)};
}

std::size_t JointOutcomeDistribution::index_of(std::span<const int> outcomes) {
  std::size_t index = 0;
  for (int o : outcomes) {
    if (o != 1 && o != -1) throw std::invalid_argument("outcomes must be ±1");
    index = (index << 1) | (o == -1 ? 1u : 0u);
  }
  return index;
}

double JointOutcomeDistribution::prob_of(std::span<const int> outcomes) const {
  if (static_cast<int>(outcomes.size()) != n_parties_) {
    throw std::invalid_argument("outcome tuple has the wrong length");
  }
  return probs_[index_of(outcomes)];
}

int JointOutcomeDistribution::outcome(std::size_t index, int party) const {
  return bit_index_outcome(index, party, n_parties_);
}

JointOutcomeDistribution JointOutcomeDistribution::marginal(std::span<const int> parties) const {
  const int m = static_cast<int>(parties.size());
  if (m == 0) throw std::invalid_argument("marginal needs at least one party");
  for (int p : parties) {
    if (p < 0 || p >= n_parties_) throw std::invalid_argument("party index out of range");
  }
  std::vector<double> out(std::size_t{1} << m, 0.0);
  for (std::size_t idx = 0; idx < probs_.size(); ++idx) {
    std::size_t sub = 0;
    for (int p : parties) sub = (sub << 1) | ((idx >> (n_parties_ - 1 - p)) & 1u);
    out[sub] += probs_[idx];
  }
  return {m, std::move(out)};
}

DensityMatrix ghz_state(int n_parties) {
  if (n_parties != 3) {
    throw std::invalid_argument("GHZ state is only supported for 3 parties, got " +
                                std::to_string(n_parties));
  }
  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(8);
  ket(0) = ket(7) = 1.0 / std::numbers::sqrt2;
  return DensityMatrix::from_matrix(ket_projector(ket));
}

DensityMatrix singlet_state() {
  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(4);
  ket(1) = 1.0 / std::numbers::sqrt2;
  ket(2) = -1.0 / std::numbers::sqrt2;
  return DensityMatrix::from_matrix(ket_projector(ket));
}

DensityMatrix maximally_mixed_state(int n_qubits) {
  if (n_qubits != 2 && n_qubits != 3) {
    throw std::invalid_argument("maximally mixed state needs 2 or 3 qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix::from_matrix(ComplexMatrix::Identity(dim, dim) /
                                    static_cast<double>(dim));
}

DensityMatrix noisy_state(const DensityMatrix& pure, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("noise fraction must lie in [0, 1], got " + std::to_string(p));
  }
  const Eigen::Index dim = pure.dim();
  ComplexMatrix m = (1.0 - p) * pure.matrix() +
                    p * ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityMatrix::from_matrix(std::move(m));
}

ComplexMatrix product_observable(const MeasurementSetting& setting) {
  if (setting.per_party.empty()) throw std::invalid_argument("empty measurement setting");
  ComplexMatrix out = setting.per_party.front().matrix();
  for (std::size_t k = 1; k < setting.size(); ++k) out = kron(out, setting.per_party[k].matrix());
  return out;
}

JointOutcomeDistribution joint_outcome_distribution(const DensityMatrix& state,
                                                    const MeasurementSetting& setting) {
  require_arity(state, setting);
  const int n = state.n_qubits();
  std::vector<ComplexMatrix> plus, minus;
  for (const auto& obs : setting.per_party) {
    plus.push_back(obs.projector(1));
    minus.push_back(obs.projector(-1));
  }
  std::vector<double> probs(std::size_t{1} << n);
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    ComplexMatrix proj;
    for (int k = 0; k < n; ++k) {
      const ComplexMatrix& local = bit_index_outcome(idx, k, n) == 1 ? plus[k] : minus[k];
      proj = k == 0 ? local : kron(proj, local);
    }
    probs[idx] = (state.matrix() * proj).trace().real();
  }
  return {n, std::move(probs)};
}

double product_expectation(const DensityMatrix& state, const MeasurementSetting& setting) {
  require_arity(state, setting);
  return (state.matrix() * product_observable(setting)).trace().real();
}

}  // namespace eghz
