// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "entropic_ghz/bitstream.hpp"
#include "entropic_ghz/codecs.hpp"
#include "entropic_ghz/inequalities.hpp"
#include "entropic_ghz/infometrics.hpp"
#include "entropic_ghz/lhv.hpp"
#include "entropic_ghz/noise.hpp"
#include "entropic_ghz/rng.hpp"
#include "oracles.hpp"

using namespace eghz;
using std::numbers::pi;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double time_limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > time_limit_s) {
    out.ok = false;
    out.detail += (out.detail.empty() ? "" : "; ") + std::string("over time limit");
  }
  if (!out.ok) ++failures;
  std::printf("%s %2d %-28s %7.3f s / %4.0f s  %s\n", out.ok ? "PASS" : "FAIL", id, name, elapsed,
              time_limit_s, out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

DensityMatrix random_state(Rng& rng) {
  Eigen::VectorXcd ket(8);
  for (int i = 0; i < 8; ++i) ket(i) = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
  ket.normalize();
  return noisy_state(DensityMatrix::from_matrix(ket * ket.adjoint()), rng.uniform());
}

BlochObservable random_observable(Rng& rng) {
  return BlochObservable::from_spherical(std::acos(2.0 * rng.uniform() - 1.0), 2 * pi * rng.uniform());
}

JointOutcomeDistribution random_joint3(Rng& rng) {
  std::vector<double> w(8);
  double sum = 0.0;
  for (double& x : w) sum += (x = rng.exponential());
  for (double& x : w) x /= sum;
  return {3, std::move(w)};
}

BitString random_bits(Rng& rng, std::size_t n, double p_one) {
  BitString b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, rng.uniform() < p_one);
  return b;
}

}  // namespace

int main() {
  criterion(1, "entropic GHZ paradox", 1.0, [] {
    Outcome o;
    const auto t = paradox_table(ghz_state());
    o.require(std::abs(t.h_a) <= 1e-9 && std::abs(t.h_b) <= 1e-9 && std::abs(t.h_c) <= 1e-9,
              "H(A), H(B), H(C) not 0");
    o.require(std::abs(t.h_d - 1.0) <= 1e-9, "H(D) not 1");
    const auto r = entropic_mermin_report(ghz_state(), TripartiteSettings::reference());
    o.require(std::abs(r.margin + 1.0) <= 1e-9, "margin not -1");
    o.require(r.violated, "not violated");
    o.detail = o.ok ? "H = (" + fmt("%.1e", t.h_a) + ", " + fmt("%.1e", t.h_b) + ", " + fmt("%.1e", t.h_c) +
                          ", " + fmt("%.12f", t.h_d) + "), margin " + fmt("%.12f", r.margin)
                    : o.detail;
    return o;
  });

  criterion(2, "sign GHZ baseline", 1.0, [] {
    Outcome o;
    const auto s = sign_ghz_check(ghz_state());
    o.require(std::abs(s.yyx + 1) <= 1e-10 && std::abs(s.yxy + 1) <= 1e-10 && std::abs(s.xyy + 1) <= 1e-10,
              "YYX/YXY/XYY not -1");
    o.require(std::abs(s.xxx - 1) <= 1e-10, "XXX not +1");
    o.require(s.consistent, "flag false");
    if (o.ok) o.detail = "(-1, -1, -1, +1)";
    return o;
  });

  criterion(3, "tripartite noise threshold", 5.0, [] {
    Outcome o;
    const auto t = find_threshold(preset_scenario(Family::kEntropic3));
    o.require(t.status == ThresholdStatus::kFound, "no threshold");
    o.require(t.p_star >= 0.121 && t.p_star <= 0.125, "p* outside [0.121, 0.125]");
    const double cross = 3.0 * oracle::h2(t.p_star / 2.0);
    o.require(std::abs(cross - 1.0) <= 1e-3, "3 h(p*/2) != 1");
    if (o.ok) o.detail = "p* = " + fmt("%.6f", t.p_star) + ", 3h(p*/2) = " + fmt("%.6f", cross);
    return o;
  });

  criterion(4, "bipartite threshold", 60.0, [] {
    Outcome o;
    const auto scenario = preset_scenario(Family::kBc2);
    const auto t = find_threshold(scenario);
    o.require(t.status == ThresholdStatus::kFound, "no threshold");
    o.require(t.p_star >= 0.03 && t.p_star <= 0.05, "p* outside [0.03, 0.05]");
    std::string angles;
    for (const auto& s : scenario.settings()) {
      angles += (angles.empty() ? "" : ",") + fmt("%.4f", std::atan2(s.bloch()(1), s.bloch()(0)));
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("p* = ") + fmt("%.6f", t.p_star) +
                ", angles a,a',b,b' = " + angles;
    return o;
  });

  criterion(5, "Mermin recovery", 10.0, [] {
    Outcome o;
    Rng rng(5);
    double worst = 0.0;
    int mismatched = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto state = random_state(rng);
      TripartiteSettings s{random_observable(rng), random_observable(rng), random_observable(rng),
                           random_observable(rng), random_observable(rng), random_observable(rng)};
      const auto r = mermin_correlation_report(state, s);
      worst = std::max(worst, std::abs(r.margin - (2.0 - *r.mermin_value)));
      if (r.violated != (*r.mermin_value > 2.0 + kViolationTol)) ++mismatched;
    }
    o.require(worst <= 1e-12, "identity off by " + fmt("%.2e", worst));
    o.require(mismatched == 0, "violation flag disagrees with M > 2");
    const auto g = mermin_correlation_report(ghz_state(), TripartiteSettings::pauli_xy());
    o.require(std::abs(*g.mermin_value - 4.0) <= 1e-10, "M != 4 on GHZ");
    o.require(g.violated, "GHZ not violated");
    if (o.ok) o.detail = "max |margin - (2 - M)| = " + fmt("%.1e", worst) + ", M(GHZ) = " + fmt("%.12f", *g.mermin_value);
    return o;
  });

  criterion(6, "classical soundness", 30.0, [] {
    Outcome o;
    int violations = 0;
    double worst = INFINITY;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      const auto c = derivation_chain(random_joint(seed));
      for (double m : {c.first_margin, c.second_margin, c.final.margin}) {
        worst = std::min(worst, m);
        if (m < -1e-10) ++violations;
      }
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("min margin ") + fmt("%.3e", worst);
    return o;
  });

  criterion(7, "compression test", 10.0, [] {
    Outcome o;
    const std::size_t n = 65536;
    const auto run = [&] {
      const auto samples = sample_rounds(ghz_state(), TripartiteSettings::reference(), n, 7);
      std::vector<std::vector<std::uint8_t>> blobs;
      for (std::size_t k = 0; k < 4; ++k) blobs.push_back(compress(samples.xor_string(k), "rle-elias").blob);
      return std::pair{compression_inequality_report(samples, "rle-elias"), blobs};
    };
    const auto [r, blobs] = run();
    const auto [r2, blobs2] = run();
    for (double t : r.report.rhs_terms) o.require(t <= 73, "rhs term over 73 bits");
    o.require(r.side_condition_met, "side condition not met");
    o.require(r.report.lhs >= 0.99 * n, "lhs below 0.99 n");
    o.require(r.report.violated, "not violated");
    o.require(blobs == blobs2 && r.report.lhs == r2.report.lhs, "reruns differ");
    if (o.ok) {
      o.detail = "lhs " + fmt("%.0f", r.report.lhs) + " bits, rhs " + fmt("%.0f", r.report.rhs_terms[0]) + "+" +
                 fmt("%.0f", r.report.rhs_terms[1]) + "+" + fmt("%.0f", r.report.rhs_terms[2]) + " bits";
    }
    return o;
  });

  criterion(8, "LHV infeasibility", 5.0, [] {
    Outcome o;
    const auto ghz = quantum_contexts(ghz_state(), TripartiteSettings::reference());
    const auto g = lhv_feasibility(ghz);
    o.require(!g.feasible, "GHZ contexts feasible");
    if (!g.feasible) {
      const auto a = context_marginal_matrix();
      Eigen::VectorXd b(32);
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 8; ++i) b(static_cast<int>(8 * k + i)) = ghz[k].prob(i);
      o.require((a.transpose() * g.farkas).maxCoeff() <= 1e-9 && g.farkas.dot(b) > 1e-9,
                "Farkas certificate does not verify");
    }
    const auto noisy = quantum_contexts(noisy_state(ghz_state(), 0.9), TripartiteSettings::reference());
    const auto n = lhv_feasibility(noisy);
    o.require(n.feasible && n.witness.has_value(), "p = 0.9 infeasible");
    if (o.ok) o.detail = "GHZ infeasibility " + fmt("%.3e", g.infeasibility) + ", p=0.9 residual " + fmt("%.1e", n.max_residual);
    return o;
  });

  criterion(9, "metric property suite", 10.0, [] {
    Outcome o;
    Rng rng(9);
    const int aa[] = {0, 0}, ab[] = {0, 1}, ba[] = {1, 0}, bc[] = {1, 2}, ac[] = {0, 2};
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto j = random_joint3(rng);
      worst = std::max(worst, product_entropy(j, aa));
      worst = std::max(worst, std::abs(product_entropy(j, ab) - product_entropy(j, ba)));
      worst = std::max(worst, product_entropy(j, ab) - product_entropy(j, bc) - product_entropy(j, ac));
    }
    for (int i = 0; i < 1000; ++i) {
      const auto j = random_joint3(rng);
      const double delta = multi_delta(j);
      worst = std::max(worst, std::abs(delta - product_distance(product_variables(j, {{0}, {1, 2}}))));
      worst = std::max(worst, std::abs(delta - product_distance(product_variables(j, {{1}, {0, 2}}))));
      worst = std::max(worst, std::abs(delta - product_distance(product_variables(j, {{2}, {0, 1}}))));
    }
    o.require(worst <= 1e-12, "worst deviation " + fmt("%.2e", worst));
    if (o.ok) o.detail = "worst deviation " + fmt("%.1e", worst);
    return o;
  });

  criterion(10, "codec suite", 10.0, [] {
    Outcome o;
    Rng rng(10);
    int failed = 0;
    for (int i = 0; i < 1000; ++i) {
      const std::size_t len = i < 16 ? static_cast<std::size_t>(i) : static_cast<std::size_t>(rng.next() % 4097);
      const double p_one = (i % 4 == 0) ? 0.0 : (i % 4 == 1) ? 1.0 : (i % 4 == 2) ? 0.03 : 0.5;
      const auto input = random_bits(rng, len, p_one);
      for (const char* codec : {"rle-elias", "block-huffman"}) {
        const auto c = compress(input, codec);
        if (!c.report.lossless_verified || !(decompress(c.blob) == input)) ++failed;
      }
    }
    o.require(failed == 0, std::to_string(failed) + " lossy round trips");
    const auto random = block_huffman_compress(random_bits(rng, 65536, 0.5));
    o.require(random.report.output_bits >= 0.99 * 65536, "random input compressed below 0.99 n");
    if (o.ok) o.detail = "2000 round trips, random 65536 bits -> " + std::to_string(random.report.output_bits) + " bits";
    return o;
  });

  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
