#include "entropic_ghz/inequalities.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "entropic_ghz/infometrics.hpp"

namespace eghz {

namespace {

void require_qubits(const DensityMatrix& state, int n, const char* what) {
  if (state.n_qubits() != n) {
    throw std::invalid_argument(std::string(what) + " needs a " + std::to_string(n) +
                                "-qubit state, got " + std::to_string(state.n_qubits()));
  }
}

}  // namespace

InequalityReport InequalityReport::make(double lhs, std::vector<double> rhs_terms,
                                        std::vector<std::string> labels) {
  InequalityReport r;
  r.lhs = lhs;
  r.rhs_total = std::accumulate(rhs_terms.begin(), rhs_terms.end(), 0.0);
  r.rhs_terms = std::move(rhs_terms);
  r.margin = r.rhs_total - r.lhs;
  r.violated = r.margin < -kViolationTol;
  r.labels = std::move(labels);
  return r;
}

std::string Context::label() const {
  return "A" + std::to_string(a + 1) + "B" + std::to_string(b + 1) + "C" + std::to_string(c + 1);
}

TripartiteSettings TripartiteSettings::reference() {
  const auto first = xy_observable(std::numbers::pi / 6.0);
  const auto second = xy_observable(-std::numbers::pi / 12.0);
  return {first, second, first, second, first, second};
}

TripartiteSettings TripartiteSettings::pauli_xy() {
  const auto x = BlochObservable::x();
  const auto y = BlochObservable::y();
  return {x, y, x, y, x, y};
}

TripartiteSettings TripartiteSettings::from_xy_angles(const std::array<double, 6>& t) {
  return {xy_observable(t[0]), xy_observable(t[1]), xy_observable(t[2]),
          xy_observable(t[3]), xy_observable(t[4]), xy_observable(t[5])};
}

MeasurementSetting TripartiteSettings::context(const Context& ctx) const {
  return {{ctx.a == 0 ? a1 : a2, ctx.b == 0 ? b1 : b2, ctx.c == 0 ? c1 : c2}};
}

std::vector<BlochObservable> TripartiteSettings::flat() const { return {a1, a2, b1, b2, c1, c2}; }

BipartiteSettings BipartiteSettings::from_xy_angles(double a, double a_prime, double b,
                                                    double b_prime) {
  return {xy_observable(a), xy_observable(a_prime), xy_observable(b), xy_observable(b_prime)};
}

std::vector<BlochObservable> BipartiteSettings::flat() const { return {a, a_prime, b, b_prime}; }

InequalityReport entropic_mermin_report(const DensityMatrix& state,
                                        const TripartiteSettings& settings) {
  require_qubits(state, 3, "entropic Mermin inequality");
  std::array<double, 4> h{};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < kTripartiteContexts.size(); ++i) {
    const auto& ctx = kTripartiteContexts[i];
    h[i] = multi_delta(joint_outcome_distribution(state, settings.context(ctx)));
    labels.push_back(std::string(kCompositeNames[i]) + "=" + ctx.label());
  }
  return InequalityReport::make(h[0], {h[1], h[2], h[3]}, std::move(labels));
}

ParadoxTable paradox_table(const DensityMatrix& state) {
  return paradox_table(state, TripartiteSettings::reference());
}

ParadoxTable paradox_table(const DensityMatrix& state, const TripartiteSettings& settings) {
  const auto r = entropic_mermin_report(state, settings);
  return {r.rhs_terms[0], r.rhs_terms[1], r.rhs_terms[2], r.lhs};
}

InequalityReport mermin_correlation_report(const DensityMatrix& state,
                                           const TripartiteSettings& settings) {
  require_qubits(state, 3, "Mermin inequality");
  std::array<double, 4> e{};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < kTripartiteContexts.size(); ++i) {
    const auto& ctx = kTripartiteContexts[i];
    e[i] = product_expectation(state, settings.context(ctx));
    labels.push_back("1+<" + ctx.label() + ">");
  }
  // Covariance distance of (-A, B, C): flipping Alice's outcomes in every
  // context keeps the entropic chain classically valid and gives M <= 2.
  auto r = InequalityReport::make(
      covariance_delta(-e[0]),
      {covariance_delta(-e[1]), covariance_delta(-e[2]), covariance_delta(-e[3])},
      std::move(labels));
  r.mermin_value = e[0] - e[1] - e[2] - e[3];
  return r;
}

InequalityReport bc_inequality_report(const DensityMatrix& state,
                                      const BipartiteSettings& s) {
  require_qubits(state, 2, "chained bipartite inequality");
  auto d = [&](const BlochObservable& x, const BlochObservable& y) {
    return bc_distance(joint_outcome_distribution(state, MeasurementSetting{{x, y}}));
  };
  return InequalityReport::make(d(s.a, s.b),
                                {d(s.a, s.b_prime), d(s.a_prime, s.b_prime), d(s.a_prime, s.b)},
                                {"d(A,B)", "d(A,B')", "d(A',B')", "d(A',B)"});
}

SignGhzCheck sign_ghz_check(const DensityMatrix& state) {
  require_qubits(state, 3, "sign GHZ check");
  const auto x = BlochObservable::x();
  const auto y = BlochObservable::y();
  SignGhzCheck out;
  out.yyx = product_expectation(state, {{y, y, x}});
  out.yxy = product_expectation(state, {{y, x, y}});
  out.xyy = product_expectation(state, {{x, y, y}});
  out.xxx = product_expectation(state, {{x, x, x}});
  out.consistent = std::abs(out.yyx + 1.0) <= kEigenTol && std::abs(out.yxy + 1.0) <= kEigenTol &&
                   std::abs(out.xyy + 1.0) <= kEigenTol && std::abs(out.xxx - 1.0) <= kEigenTol;
  return out;
}

}  // namespace eghz
