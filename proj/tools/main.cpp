// entropic-ghz: command-line front end.
//
// Exit codes: 0 success (including rendered "not violated" verdicts),
// 1 usage error, 2 invariant failure, 3 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "entropic_ghz/bitstream.hpp"
#include "entropic_ghz/codecs.hpp"
#include "entropic_ghz/inequalities.hpp"
#include "entropic_ghz/noise.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace eghz::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitIo = 3;

constexpr const char* kOutEnv = "ENTROPIC_GHZ_OUT";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string state = "ghz";
  double noise = 0.0;
  std::string angles = "paper";
  std::string format = "text";
  int jobs = 1;
  std::uint64_t seed = 7;
  int restarts = 4;
};

std::string f4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  // Avoid printing "-0.0000".
  return std::string(buf) == "-0.0000" ? "0.0000" : buf;
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void add_state_options(CLI::App* cmd, Common& c, bool with_angles = true) {
  cmd->add_option("--state", c.state, "State preset")->check(CLI::IsMember({"ghz", "singlet", "mixed"}));
  cmd->add_option("--noise", c.noise, "White-noise fraction p")->check(CLI::Range(0.0, 1.0));
  if (with_angles) {
    cmd->add_option("--angles", c.angles, "'paper' or xy:a1,a2,b1,b2,c1,c2 (radians; 4 values for bc2)");
  }
}

void add_format_option(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

DensityMatrix make_state(const std::string& name, double noise, int qubits) {
  if (name == "mixed") return maximally_mixed_state(qubits);
  if (name == "ghz") {
    if (qubits != 3) throw UsageError("state ghz is tripartite; this command needs " + std::to_string(qubits) + " qubits");
    return noisy_state(ghz_state(), noise);
  }
  if (qubits != 2) throw UsageError("state singlet is bipartite; this command needs " + std::to_string(qubits) + " qubits");
  return noisy_state(singlet_state(), noise);
}

/// nullopt for the "paper" preset, otherwise the explicit XY-plane angles.
std::optional<std::vector<double>> parse_angles(const std::string& spec, std::size_t expected) {
  if (spec == "paper") return std::nullopt;
  if (spec.rfind("xy:", 0) != 0) throw UsageError("--angles must be 'paper' or xy:<comma-separated radians>");
  std::vector<double> out;
  std::stringstream ss(spec.substr(3));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad angle '" + item + "'");
    }
  }
  if (out.size() != expected) {
    throw UsageError("--angles needs " + std::to_string(expected) + " values, got " + std::to_string(out.size()));
  }
  return out;
}

TripartiteSettings tripartite_settings(const std::string& spec) {
  const auto a = parse_angles(spec, 6);
  if (!a) return TripartiteSettings::reference();
  return TripartiteSettings::from_xy_angles({(*a)[0], (*a)[1], (*a)[2], (*a)[3], (*a)[4], (*a)[5]});
}

json report_json(const InequalityReport& r) {
  json j{{"lhs", r.lhs},       {"rhs_terms", r.rhs_terms}, {"rhs_total", r.rhs_total},
         {"margin", r.margin}, {"violated", r.violated},   {"labels", r.labels}};
  if (r.mermin_value) j["mermin_value"] = *r.mermin_value;
  return j;
}

void print_report_csv(const InequalityReport& r) {
  std::cout << "lhs,rhs_1,rhs_2,rhs_3,rhs_total,margin,violated\n"
            << full(r.lhs) << ',' << full(r.rhs_terms[0]) << ',' << full(r.rhs_terms[1]) << ','
            << full(r.rhs_terms[2]) << ',' << full(r.rhs_total) << ',' << full(r.margin) << ','
            << (r.violated ? "true" : "false") << '\n';
}

void print_report_text(const InequalityReport& r) {
  std::cout << "lhs " << f4(r.lhs) << "  rhs";
  for (double t : r.rhs_terms) std::cout << ' ' << f4(t);
  std::cout << "  rhs_total " << f4(r.rhs_total) << "  margin " << f4(r.margin) << '\n'
            << (r.violated ? "VIOLATED" : "not violated") << '\n';
}

// ---------------------------------------------------------------- paradox

int cmd_paradox(const Common& c) {
  const auto state = make_state(c.state, c.noise, 3);
  const auto settings = tripartite_settings(c.angles);
  const auto t = paradox_table(state, settings);
  const auto r = entropic_mermin_report(state, settings);
  if (c.format == "json") {
    json j = report_json(r);
    j["command"] = "paradox";
    j["state"] = c.state;
    j["noise"] = c.noise;
    j["entropies"] = {{"A", t.h_a}, {"B", t.h_b}, {"C", t.h_c}, {"D", t.h_d}};
    std::cout << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    print_report_csv(r);
  } else {
    std::cout << "state " << c.state << ", noise " << f4(c.noise) << ", angles " << c.angles << '\n'
              << "H(A) = " << f4(t.h_a) << "   " << r.labels[1] << '\n'
              << "H(B) = " << f4(t.h_b) << "   " << r.labels[2] << '\n'
              << "H(C) = " << f4(t.h_c) << "   " << r.labels[3] << '\n'
              << "H(D) = " << f4(t.h_d) << "   " << r.labels[0] << '\n'
              << "H(D) <= H(A) + H(B) + H(C)\n";
    print_report_text(r);
  }
  return kExitOk;
}

// -------------------------------------------------------------- threshold

struct ThresholdArgs {
  std::string family;
  double tol = 1e-4;
  int sweep_points = 0;
  bool state_set = false;
};

double reference_threshold(Family f) {
  switch (f) {
    case Family::kEntropic3: return 0.123;
    case Family::kMermin3: return 0.5;
    case Family::kBc2: return 0.04;
  }
  return 0.0;
}

std::string status_name(ThresholdStatus s) {
  switch (s) {
    case ThresholdStatus::kFound: return "found";
    case ThresholdStatus::kNoViolation: return "no_violation";
    case ThresholdStatus::kNoCrossing: return "no_crossing";
    case ThresholdStatus::kNonMonotone: return "non_monotone";
  }
  return "unknown";
}

constexpr const char* kBc2Assumption =
    "coplanar settings optimized for the strongest violation at p = 0, then held fixed";

double xy_angle(const BlochObservable& o) { return std::atan2(o.bloch()(1), o.bloch()(0)); }

int cmd_threshold(const Common& c, const ThresholdArgs& t) {
  const auto family = parse_family(t.family);
  if (!family) throw UsageError("unknown family " + t.family);
  const int qubits = *family == Family::kBc2 ? 2 : 3;
  const std::size_t n_settings = static_cast<std::size_t>(settings_count(*family));
  const auto angles = parse_angles(c.angles, n_settings);
  const std::string default_state = qubits == 2 ? "singlet" : "ghz";
  const std::string state_name = t.state_set ? c.state : default_state;
  const auto state = make_state(state_name, 0.0, qubits);

  OptimizeOptions opts;
  opts.restarts = c.restarts;
  opts.seed = c.seed;
  opts.jobs = c.jobs;

  std::vector<BlochObservable> settings;
  if (angles) {
    for (double a : *angles) settings.push_back(xy_observable(a));
  } else if (*family == Family::kBc2) {
    settings = optimize_settings(*family, state, 0.0, opts).scenario.settings();
  } else {
    settings = preset_scenario(*family, opts).settings();
  }
  const Scenario scenario(*family, state, settings);
  const bool preset = !angles && state_name == default_state;

  if (t.sweep_points > 0) {
    std::vector<double> ps;
    for (int i = 0; i <= t.sweep_points; ++i) ps.push_back(static_cast<double>(i) / t.sweep_points);
    const auto rows = sweep(scenario, ps, c.jobs);
    if (c.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back({{"p", r.p}, {"lhs", r.lhs}, {"rhs_total", r.rhs_total}, {"margin", r.margin}});
      std::cout << arr.dump(2) << '\n';
    } else {
      std::cout << "p,lhs,rhs_total,margin\n";
      for (const auto& r : rows) {
        std::cout << full(r.p) << ',' << full(r.lhs) << ',' << full(r.rhs_total) << ',' << full(r.margin) << '\n';
      }
    }
    return kExitOk;
  }

  const auto result = find_threshold(scenario, t.tol);
  std::vector<double> setting_angles;
  for (const auto& o : settings) setting_angles.push_back(xy_angle(o));
  const double reference = reference_threshold(*family);

  if (c.format == "json") {
    json j{{"command", "threshold"},
           {"family", t.family},
           {"state", state_name},
           {"status", status_name(result.status)},
           {"p_star", result.p_star},
           {"iterations", result.iterations},
           {"bracket_width", result.bracket_width},
           {"margin_at_p_star", result.margin_at_p_star},
           {"settings_xy_angles", setting_angles}};
    if (preset) j["reference_p"] = reference;
    if (*family == Family::kBc2 && !angles) j["assumption"] = kBc2Assumption;
    std::cout << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    std::cout << "family,status,p_star,iterations,bracket_width,margin_at_p_star\n"
              << t.family << ',' << status_name(result.status) << ',' << full(result.p_star) << ','
              << result.iterations << ',' << full(result.bracket_width) << ',' << full(result.margin_at_p_star)
              << '\n';
  } else {
    std::cout << "family " << t.family << ", state " << state_name << '\n' << "settings (xy angles)";
    for (double a : setting_angles) std::cout << ' ' << f4(a);
    std::cout << '\n';
    if (*family == Family::kBc2 && !angles) std::cout << "assumption: " << kBc2Assumption << '\n';
    if (result.status == ThresholdStatus::kFound) {
      std::cout << "p_star " << f4(result.p_star) << "  (bracket " << f4(result.bracket_width) << ", "
                << result.iterations << " iterations)\n";
      if (preset) {
        std::cout << "reference value p = " << reference << "; difference " << f4(result.p_star - reference)
                  << '\n';
      }
    } else if (result.status == ThresholdStatus::kNoViolation) {
      std::cout << "no threshold: not violated at p = 0\n";
    } else {
      std::cout << "no threshold: " << status_name(result.status) << '\n';
    }
  }
  return kExitOk;
}

// --------------------------------------------------------------- compress

struct CompressArgs {
  std::size_t n = 65536;
  std::string codec = "rle-elias";
  std::string out;
};

void write_blob(const fs::path& path, const std::vector<std::uint8_t>& blob) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(blob.data()), static_cast<std::streamsize>(blob.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

int cmd_compress(const Common& c, const CompressArgs& a) {
  if (a.n < 16) throw UsageError("-n must be at least 16");
  const auto state = make_state(c.state, c.noise, 3);
  const auto settings = tripartite_settings(c.angles);
  std::string out_dir = a.out;
  if (out_dir.empty()) {
    const char* env = std::getenv(kOutEnv);
    out_dir = env && *env ? env : "entropic_ghz_out";
  }

  const auto samples = sample_rounds(state, settings, a.n, c.seed, c.jobs);
  const auto result = compression_inequality_report(samples, a.codec);

  static const char* kParty = "ABC";
  std::vector<std::string> written;
  try {
    fs::create_directories(out_dir);
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string ctx = kTripartiteContexts[k].label();
      for (std::size_t p = 0; p < 3; ++p) {
        const fs::path path = fs::path(out_dir) / ("raw_" + ctx + "_" + kParty[p] + ".bits");
        write_bitstring_file(path, samples.party_string(k, p));
        written.push_back(path.string());
      }
      const fs::path xor_path = fs::path(out_dir) / ("xor_" + ctx + ".bits");
      write_bitstring_file(xor_path, samples.xor_string(k));
      written.push_back(xor_path.string());
      const fs::path blob_path = fs::path(out_dir) / ("xor_" + ctx + "." + a.codec + ".blob");
      write_blob(blob_path, compress(samples.xor_string(k), a.codec).blob);
      written.push_back(blob_path.string());
    }
  } catch (const fs::filesystem_error& e) {
    throw IoError(e.what());
  } catch (const IoError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }

  const auto& r = result.report;
  if (c.format == "json") {
    json j = report_json(r);
    j["command"] = "compress";
    j["state"] = c.state;
    j["noise"] = c.noise;
    j["n"] = a.n;
    j["seed"] = c.seed;
    j["codec"] = a.codec;
    j["log_bound"] = result.log_bound;
    j["side_condition_met"] = result.side_condition_met;
    j["output_dir"] = out_dir;
    json strings = json::array();
    for (const auto& s : result.strings) {
      strings.push_back({{"input_bits", s.input_bits}, {"output_bits", s.output_bits}, {"lossless_verified", s.lossless_verified}});
    }
    j["strings"] = strings;
    std::cout << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    print_report_csv(r);
  } else {
    std::cout << "state " << c.state << ", noise " << f4(c.noise) << ", n " << a.n << ", seed " << c.seed
              << ", codec " << a.codec << '\n';
    for (std::size_t k = 0; k < 4; ++k) {
      std::cout << "C(x" << kTripartiteContexts[k].a + 1 << kTripartiteContexts[k].b + 1
                << kTripartiteContexts[k].c + 1 << ") = " << result.strings[k].output_bits << " bits"
                << (result.strings[k].lossless_verified ? "" : "  (round trip FAILED)") << '\n';
    }
    std::cout << "C(x111) <= C(x122) + C(x212) + C(x221): " << static_cast<std::size_t>(r.lhs) << " vs "
              << static_cast<std::size_t>(r.rhs_total) << " bits\n"
              << "log bound 64*log2(n) = " << f4(result.log_bound) << " bits, side condition "
              << (result.side_condition_met ? "met" : "not met") << '\n'
              << (r.violated ? "VIOLATED" : "not violated") << '\n'
              << "wrote " << written.size() << " files to " << out_dir << '\n';
  }
  for (const auto& s : result.strings) {
    if (!s.lossless_verified) return kExitInvariant;
  }
  return kExitOk;
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  std::vector<std::string> suites;
  int samples = 1000;
};

int cmd_verify(const Common& c, const VerifyArgs& v) {
  const auto& names = v.suites.empty() ? suite_names() : v.suites;
  std::vector<SuiteResult> results;
  bool all = true;
  for (const auto& name : names) {
    results.push_back(run_suite(name, v.samples, c.seed));
    all = all && results.back().passed;
  }
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : results) arr.push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    std::cout << json{{"command", "verify"}, {"samples", v.samples}, {"passed", all}, {"suites", arr}}.dump(2) << '\n';
  } else if (c.format == "csv") {
    std::cout << "suite,passed,detail\n";
    for (const auto& r : results) std::cout << r.name << ',' << (r.passed ? "true" : "false") << ",\"" << r.detail << "\"\n";
  } else {
    for (const auto& r : results) std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
  }
  return all ? kExitOk : kExitInvariant;
}

}  // namespace
}  // namespace eghz::cli

int main(int argc, char** argv) {
  using namespace eghz::cli;
  CLI::App app{"Entropic GHZ paradox, noise thresholds and compression tests"};
  app.require_subcommand(1);

  Common common;
  ThresholdArgs targs;
  CompressArgs cargs;
  VerifyArgs vargs;

  auto* paradox = app.add_subcommand("paradox", "Entropies of the four composite observables and the verdict");
  add_state_options(paradox, common);
  add_format_option(paradox, common);

  auto* threshold = app.add_subcommand("threshold", "Noise fraction at which the violation vanishes");
  threshold->add_option("--family", targs.family, "Inequality family")
      ->required()
      ->check(CLI::IsMember({"entropic3", "mermin3", "bc2"}));
  threshold->add_option("--tol", targs.tol, "Bracket width")->check(CLI::PositiveNumber);
  threshold->add_option("--sweep", targs.sweep_points, "Emit margins at N+1 evenly spaced p values instead")
      ->check(CLI::Range(1, 100000));
  auto* state_opt = threshold->add_option("--state", common.state, "Base state")
                        ->check(CLI::IsMember({"ghz", "singlet", "mixed"}));
  threshold->add_option("--angles", common.angles, "'paper' or xy:<radians> (6 values, 4 for bc2)");
  threshold->add_option("--restarts", common.restarts, "Optimizer restarts (bc2)")->check(CLI::Range(1, 1000));
  threshold->add_option("--seed", common.seed, "Optimizer seed");
  threshold->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::Range(1, 256));
  add_format_option(threshold, common);

  auto* comp = app.add_subcommand("compress", "Sample bit strings and test the compression inequality");
  add_state_options(comp, common);
  comp->add_option("-n,--rounds", cargs.n, "Rounds per context");
  comp->add_option("--seed", common.seed, "Sampling seed");
  comp->add_option("--codec", cargs.codec, "Codec")->check(CLI::IsMember({"rle-elias", "block-huffman", "huffman"}));
  comp->add_option("--out", cargs.out, std::string("Output directory (default $") + kOutEnv + " or ./entropic_ghz_out)");
  comp->add_option("--jobs", common.jobs, "Worker threads")->check(CLI::Range(1, 256));
  add_format_option(comp, common);

  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--suites", vargs.suites, "Comma-separated subset")
      ->delimiter(',')
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--samples", vargs.samples, "Cases per suite")->check(CLI::Range(1, 10000000));
  verify->add_option("--seed", common.seed, "Seed");
  add_format_option(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*paradox) return cmd_paradox(common);
    if (*threshold) {
      targs.state_set = state_opt->count() > 0;
      return cmd_threshold(common, targs);
    }
    if (*comp) return cmd_compress(common, cargs);
    if (*verify) return cmd_verify(common, vargs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitUsage;
}
