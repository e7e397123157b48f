#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "entropic_ghz/codecs.hpp"
#include "entropic_ghz/inequalities.hpp"
#include "entropic_ghz/infometrics.hpp"
#include "entropic_ghz/lhv.hpp"
#include "entropic_ghz/rng.hpp"

namespace eghz::cli {

namespace {

constexpr double kIdentityTol = 1e-12;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

JointOutcomeDistribution random_joint3(Rng& rng) {
  std::vector<double> w(8);
  double sum = 0.0;
  for (double& x : w) sum += (x = rng.exponential());
  for (double& x : w) x /= sum;
  return {3, std::move(w)};
}

SuiteResult metric(int samples, std::uint64_t seed) {
  Rng rng(seed, 1);
  const int aa[] = {0, 0}, ab[] = {0, 1}, ba[] = {1, 0}, bc[] = {1, 2}, ac[] = {0, 2};
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto j = random_joint3(rng);
    worst = std::max(worst, product_entropy(j, aa));
    worst = std::max(worst, std::abs(product_entropy(j, ab) - product_entropy(j, ba)));
    worst = std::max(worst, product_entropy(j, ab) - product_entropy(j, bc) - product_entropy(j, ac));
  }
  return {"metric", worst <= kIdentityTol, "worst deviation " + sci(worst)};
}

SuiteResult associativity(int samples, std::uint64_t seed) {
  Rng rng(seed, 2);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto j = random_joint3(rng);
    const double delta = multi_delta(j);
    for (const auto& split : {std::vector<std::vector<int>>{{0}, {1, 2}}, {{1}, {0, 2}}, {{2}, {0, 1}}}) {
      worst = std::max(worst, std::abs(delta - product_distance(product_variables(j, split))));
    }
  }
  return {"associativity", worst <= kIdentityTol, "worst deviation " + sci(worst)};
}

SuiteResult derivation(int samples, std::uint64_t seed) {
  int bad = 0;
  double worst = INFINITY;
  for (int i = 0; i < samples; ++i) {
    const auto c = derivation_chain(random_joint(seed + static_cast<std::uint64_t>(i)));
    for (double m : {c.first_margin, c.second_margin, c.final.margin}) {
      worst = std::min(worst, m);
      if (m < -kViolationTol) ++bad;
    }
  }
  return {"derivation", bad == 0, std::to_string(bad) + " violations, min margin " + sci(worst)};
}

// Context marginals of random classical joints must be LHV-feasible and
// satisfy the entropic chain.
SuiteResult lhv(int samples, std::uint64_t seed) {
  int violated = 0, infeasible = 0;
  const int lp_cases = std::min(samples, 200);
  for (int i = 0; i < samples; ++i) {
    const auto joint = random_joint(seed + static_cast<std::uint64_t>(i));
    if (classical_entropic_mermin(joint).violated) ++violated;
    if (i < lp_cases) {
      const std::array<JointOutcomeDistribution, 4> ctx{
          joint.context_marginal(kTripartiteContexts[0]), joint.context_marginal(kTripartiteContexts[1]),
          joint.context_marginal(kTripartiteContexts[2]), joint.context_marginal(kTripartiteContexts[3])};
      if (!lhv_feasibility(ctx).feasible) ++infeasible;
    }
  }
  const auto ghz = lhv_feasibility(quantum_contexts(ghz_state(), TripartiteSettings::reference()));
  const bool ok = violated == 0 && infeasible == 0 && !ghz.feasible;
  return {"lhv", ok,
          std::to_string(samples) + " joints, " + std::to_string(violated) + " violations, " +
              std::to_string(infeasible) + "/" + std::to_string(lp_cases) + " infeasible, GHZ " +
              (ghz.feasible ? "feasible" : "infeasible")};
}

SuiteResult codecs(int samples, std::uint64_t seed) {
  Rng rng(seed, 5);
  int failed = 0;
  for (int i = 0; i < samples; ++i) {
    const std::size_t len = i < 16 ? static_cast<std::size_t>(i) : static_cast<std::size_t>(rng.next() % 4097);
    const double p_one = (i % 4 == 0) ? 0.0 : (i % 4 == 1) ? 1.0 : (i % 4 == 2) ? 0.03 : 0.5;
    BitString input(len);
    for (std::size_t k = 0; k < len; ++k) input.set(k, rng.uniform() < p_one);
    for (const char* codec : {"rle-elias", "block-huffman"}) {
      const auto c = compress(input, codec);
      if (!c.report.lossless_verified || !(decompress(c.blob) == input)) ++failed;
    }
  }
  return {"codecs", failed == 0, std::to_string(2 * samples) + " round trips, " + std::to_string(failed) + " failed"};
}

SuiteResult sign_ghz(int, std::uint64_t) {
  const auto s = sign_ghz_check(ghz_state());
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%+.4f, %+.4f, %+.4f, %+.4f)", s.yyx, s.yxy, s.xyy, s.xxx);
  return {"sign-ghz", s.consistent, buf};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"metric", "associativity", "derivation", "lhv", "codecs", "sign-ghz"};
  return names;
}

SuiteResult run_suite(std::string_view name, int samples, std::uint64_t seed) {
  if (name == "metric") return metric(samples, seed);
  if (name == "associativity") return associativity(samples, seed);
  if (name == "derivation") return derivation(samples, seed);
  if (name == "lhv") return lhv(samples, seed);
  if (name == "codecs") return codecs(samples, seed);
  if (name == "sign-ghz") return sign_ghz(samples, seed);
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

}  // namespace eghz::cli
