// Test-only reference computations. Nothing here calls into the library's
// linear algebra: traces are explicit index sums over 2x2 factors, and
// closed forms are written out by hand.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat2 = std::array<std::array<C, 2>, 2>;

inline Mat2 bloch_matrix(double x, double y, double z) {
  return {{{C(z, 0), C(x, -y)}, {C(x, y), C(-z, 0)}}};
}

inline Mat2 xy_matrix(double theta) { return bloch_matrix(std::cos(theta), std::sin(theta), 0.0); }

inline Mat2 projector(const Mat2& m, int outcome) {
  Mat2 p{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p[i][j] = 0.5 * ((i == j ? 1.0 : 0.0) + static_cast<double>(outcome) * m[i][j]);
  return p;
}

/// Dense row-major density matrix of dimension 2^n.
struct Rho {
  int n;
  std::vector<C> m;
  C at(int i, int j) const { return m[static_cast<std::size_t>(i * (1 << n) + j)]; }
};

inline Rho pure(int n, const std::vector<C>& ket) {
  const int d = 1 << n;
  Rho r{n, std::vector<C>(static_cast<std::size_t>(d * d))};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r.m[static_cast<std::size_t>(i * d + j)] = ket[i] * std::conj(ket[j]);
  return r;
}

inline Rho ghz() {
  std::vector<C> ket(8, 0.0);
  ket[0] = ket[7] = 1.0 / std::sqrt(2.0);
  return pure(3, ket);
}

inline Rho singlet() {
  std::vector<C> ket(4, 0.0);
  ket[1] = 1.0 / std::sqrt(2.0);
  ket[2] = -1.0 / std::sqrt(2.0);
  return pure(2, ket);
}

inline Rho depolarize(const Rho& r, double p) {
  Rho out = r;
  const int d = 1 << r.n;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto& e = out.m[static_cast<std::size_t>(i * d + j)];
      e = (1.0 - p) * e + (i == j ? p / d : 0.0);
    }
  return out;
}

/// Tr[ρ (F_0 ⊗ F_1 ⊗ ...)], with party 0 as the most significant bit:
/// Σ_{i,j} ρ_ij ∏_k F_k[j_k][i_k].
inline double trace_product(const Rho& r, const std::vector<Mat2>& factors) {
  const int d = 1 << r.n;
  C acc = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      C f = 1.0;
      for (int k = 0; k < r.n; ++k) {
        const int ik = (i >> (r.n - 1 - k)) & 1;
        const int jk = (j >> (r.n - 1 - k)) & 1;
        f *= factors[static_cast<std::size_t>(k)][jk][ik];
      }
      acc += r.at(i, j) * f;
    }
  return acc.real();
}

/// Outcome table in library index order (bit 1 <-> outcome -1, party 0 = MSB).
inline std::vector<double> outcome_table(const Rho& r, const std::vector<Mat2>& observables) {
  std::vector<double> out(static_cast<std::size_t>(1 << r.n));
  for (int idx = 0; idx < (1 << r.n); ++idx) {
    std::vector<Mat2> proj;
    for (int k = 0; k < r.n; ++k) {
      const int outcome = ((idx >> (r.n - 1 - k)) & 1) ? -1 : 1;
      proj.push_back(projector(observables[static_cast<std::size_t>(k)], outcome));
    }
    out[static_cast<std::size_t>(idx)] = trace_product(r, proj);
  }
  return out;
}

inline double h2(double q) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-14) {
  const bool lo_negative = f(lo) < 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) < 0.0) == lo_negative ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Entropic margin under the reference settings on ρ(p): 3 h(p/2) - 1.
inline double entropic_margin_closed_form(double p) { return 3.0 * h2(p / 2.0) - 1.0; }

/// Chained bipartite margin on the noisy singlet with the 0, θ, 2θ, 3θ chain.
inline double bc_chain_margin(double p, double theta) {
  const double v = 1.0 - p;
  auto d = [&](double angle) { return 2.0 * h2((1.0 - v * std::cos(angle)) / 2.0); };
  return 3.0 * d(theta) - d(3.0 * theta);
}

}  // namespace oracle
