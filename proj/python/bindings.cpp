#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entropic_ghz/bitstream.hpp"
#include "entropic_ghz/codecs.hpp"
#include "entropic_ghz/inequalities.hpp"
#include "entropic_ghz/infometrics.hpp"
#include "entropic_ghz/lhv.hpp"
#include "entropic_ghz/noise.hpp"
#include "entropic_ghz/qstate.hpp"

namespace py = pybind11;
using namespace eghz;

namespace {

void bind_states(py::module_& m) {
  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def_static("from_matrix", &DensityMatrix::from_matrix, py::arg("matrix"))
      .def_property_readonly("n_qubits", &DensityMatrix::n_qubits)
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def("purity", &DensityMatrix::purity)
      .def("min_eigenvalue", &DensityMatrix::min_eigenvalue);

  py::class_<BlochObservable>(m, "BlochObservable")
      .def(py::init<const Bloch&>(), py::arg("bloch"))
      .def_static("from_spherical", &BlochObservable::from_spherical, py::arg("polar"), py::arg("azimuth"))
      .def_static("x", &BlochObservable::x)
      .def_static("y", &BlochObservable::y)
      .def_static("z", &BlochObservable::z)
      .def_property_readonly("bloch", &BlochObservable::bloch)
      .def_property_readonly("matrix", &BlochObservable::matrix);

  m.def("xy_observable", &xy_observable, py::arg("theta"));
  m.def("ghz_state", &ghz_state, py::arg("n") = 3);
  m.def("singlet_state", &singlet_state);
  m.def("maximally_mixed_state", &maximally_mixed_state, py::arg("n"));
  m.def("noisy_state", &noisy_state, py::arg("state"), py::arg("p"));
  m.def(
      "outcome_distribution",
      [](const DensityMatrix& rho, const std::vector<BlochObservable>& obs) {
        return joint_outcome_distribution(rho, MeasurementSetting{obs}).probs();
      },
      py::arg("state"), py::arg("observables"),
      "Probabilities over outcome indices; bit 1 = outcome -1, party 0 most significant.");
  m.def(
      "product_expectation",
      [](const DensityMatrix& rho, const std::vector<BlochObservable>& obs) {
        return product_expectation(rho, MeasurementSetting{obs});
      },
      py::arg("state"), py::arg("observables"));
}

void bind_info(py::module_& m) {
  m.def("shannon_entropy", [](const std::vector<double>& p) { return shannon_entropy(p); }, py::arg("probs"));
  m.def("binary_entropy", &binary_entropy, py::arg("p"));
  m.def("covariance_delta", &covariance_delta, py::arg("expectation"));
}

void bind_inequalities(py::module_& m) {
  py::class_<InequalityReport>(m, "InequalityReport")
      .def_readonly("lhs", &InequalityReport::lhs)
      .def_readonly("rhs_terms", &InequalityReport::rhs_terms)
      .def_readonly("rhs_total", &InequalityReport::rhs_total)
      .def_readonly("margin", &InequalityReport::margin)
      .def_readonly("violated", &InequalityReport::violated)
      .def_readonly("labels", &InequalityReport::labels)
      .def_readonly("mermin_value", &InequalityReport::mermin_value)
      .def("__repr__", [](const InequalityReport& r) {
        return "InequalityReport(lhs=" + std::to_string(r.lhs) + ", rhs_total=" + std::to_string(r.rhs_total) +
               ", margin=" + std::to_string(r.margin) + ", violated=" + (r.violated ? "True" : "False") + ")";
      });

  py::class_<TripartiteSettings>(m, "TripartiteSettings")
      .def_static("reference", &TripartiteSettings::reference)
      .def_static("pauli_xy", &TripartiteSettings::pauli_xy)
      .def_static("from_xy_angles", &TripartiteSettings::from_xy_angles, py::arg("angles"))
      .def("flat", &TripartiteSettings::flat);

  py::class_<BipartiteSettings>(m, "BipartiteSettings")
      .def_static("from_xy_angles", &BipartiteSettings::from_xy_angles, py::arg("a"), py::arg("a_prime"),
                  py::arg("b"), py::arg("b_prime"))
      .def("flat", &BipartiteSettings::flat);

  py::class_<ParadoxTable>(m, "ParadoxTable")
      .def_readonly("h_a", &ParadoxTable::h_a)
      .def_readonly("h_b", &ParadoxTable::h_b)
      .def_readonly("h_c", &ParadoxTable::h_c)
      .def_readonly("h_d", &ParadoxTable::h_d);

  py::class_<SignGhzCheck>(m, "SignGhzCheck")
      .def_readonly("yyx", &SignGhzCheck::yyx)
      .def_readonly("yxy", &SignGhzCheck::yxy)
      .def_readonly("xyy", &SignGhzCheck::xyy)
      .def_readonly("xxx", &SignGhzCheck::xxx)
      .def_readonly("consistent", &SignGhzCheck::consistent);

  m.def("entropic_mermin_report", &entropic_mermin_report, py::arg("state"),
        py::arg("settings") = TripartiteSettings::reference());
  m.def("mermin_correlation_report", &mermin_correlation_report, py::arg("state"),
        py::arg("settings") = TripartiteSettings::pauli_xy());
  m.def("bc_inequality_report", &bc_inequality_report, py::arg("state"), py::arg("settings"));
  m.def("paradox_table", py::overload_cast<const DensityMatrix&, const TripartiteSettings&>(&paradox_table),
        py::arg("state"), py::arg("settings") = TripartiteSettings::reference());
  m.def("sign_ghz_check", &sign_ghz_check, py::arg("state"));
}

void bind_noise(py::module_& m) {
  py::enum_<Family>(m, "Family")
      .value("entropic3", Family::kEntropic3)
      .value("mermin3", Family::kMermin3)
      .value("bc2", Family::kBc2);

  py::enum_<ThresholdStatus>(m, "ThresholdStatus")
      .value("found", ThresholdStatus::kFound)
      .value("no_violation", ThresholdStatus::kNoViolation)
      .value("no_crossing", ThresholdStatus::kNoCrossing)
      .value("non_monotone", ThresholdStatus::kNonMonotone);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<Family, DensityMatrix, std::vector<BlochObservable>>(), py::arg("family"),
           py::arg("base_state"), py::arg("settings"))
      .def_property_readonly("family", &Scenario::family)
      .def_property_readonly("base_state", &Scenario::base_state)
      .def_property_readonly("settings", &Scenario::settings);

  py::class_<ThresholdResult>(m, "ThresholdResult")
      .def_readonly("status", &ThresholdResult::status)
      .def_readonly("p_star", &ThresholdResult::p_star)
      .def_readonly("iterations", &ThresholdResult::iterations)
      .def_readonly("bracket_width", &ThresholdResult::bracket_width)
      .def_readonly("margin_at_p_star", &ThresholdResult::margin_at_p_star);

  m.def(
      "preset_scenario",
      [](Family f, int restarts, std::uint64_t seed, int jobs) {
        OptimizeOptions o;
        o.restarts = restarts;
        o.seed = seed;
        o.jobs = jobs;
        return preset_scenario(f, o);
      },
      py::arg("family"), py::arg("restarts") = 4, py::arg("seed") = 0, py::arg("jobs") = 1);
  m.def("report_at", &report_at, py::arg("scenario"), py::arg("p"));
  m.def("margin_at", &margin_at, py::arg("scenario"), py::arg("p"));
  m.def("find_threshold", &find_threshold, py::arg("scenario"), py::arg("tol") = 1e-4,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "sweep",
      [](const Scenario& s, const std::vector<double>& ps, int jobs) {
        std::vector<std::tuple<double, double, double, double>> rows;
        for (const auto& r : sweep(s, ps, jobs)) rows.emplace_back(r.p, r.lhs, r.rhs_total, r.margin);
        return rows;
      },
      py::arg("scenario"), py::arg("ps"), py::arg("jobs") = 1, "Rows of (p, lhs, rhs_total, margin).");
}

void bind_bitstream(py::module_& m) {
  py::class_<BitString>(m, "BitString")
      .def(py::init<>())
      .def_static("from_string", &BitString::from_string, py::arg("bits"))
      .def("__len__", &BitString::size)
      .def("__str__", &BitString::to_string)
      .def("__eq__", [](const BitString& a, const BitString& b) { return a == b; })
      .def("count_ones", &BitString::count_ones)
      .def("to_bytes", [](const BitString& b) {
        return py::bytes(reinterpret_cast<const char*>(b.bytes().data()), b.bytes().size());
      });

  py::class_<RoundSamples>(m, "RoundSamples")
      .def_readonly("seed", &RoundSamples::seed)
      .def_readonly("n", &RoundSamples::n)
      .def("party_string", &RoundSamples::party_string, py::arg("context"), py::arg("party"))
      .def("xor_string", &RoundSamples::xor_string, py::arg("context"));

  py::class_<CompressionReport>(m, "CompressionReport")
      .def_readonly("codec", &CompressionReport::codec)
      .def_readonly("input_bits", &CompressionReport::input_bits)
      .def_readonly("output_bits", &CompressionReport::output_bits)
      .def_readonly("lossless_verified", &CompressionReport::lossless_verified);

  py::class_<CompressionInequality>(m, "CompressionInequality")
      .def_readonly("report", &CompressionInequality::report)
      .def_readonly("strings", &CompressionInequality::strings)
      .def_readonly("log_bound", &CompressionInequality::log_bound)
      .def_readonly("side_condition_met", &CompressionInequality::side_condition_met);

  m.def("sample_rounds", &sample_rounds, py::arg("state"), py::arg("settings"), py::arg("n"), py::arg("seed"),
        py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("compression_inequality_report", &compression_inequality_report, py::arg("samples"),
        py::arg("codec") = "rle-elias");
  m.def(
      "compress",
      [](const BitString& bits, const std::string& codec) {
        const auto c = compress(bits, codec);
        return py::make_tuple(c.report, py::bytes(reinterpret_cast<const char*>(c.blob.data()), c.blob.size()));
      },
      py::arg("bits"), py::arg("codec") = "rle-elias", "Returns (CompressionReport, blob bytes).");
  m.def(
      "decompress",
      [](const py::bytes& blob) {
        const std::string s = blob;
        return decompress(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
      },
      py::arg("blob"));
}

void bind_lhv(py::module_& m) {
  py::class_<ClassicalJoint>(m, "ClassicalJoint")
      .def(py::init<std::vector<double>>(), py::arg("probs"))
      .def_property_readonly("probs", [](const ClassicalJoint& j) { return j.distribution().probs(); });

  py::class_<LhvFeasibility>(m, "LhvFeasibility")
      .def_readonly("feasible", &LhvFeasibility::feasible)
      .def_readonly("witness", &LhvFeasibility::witness)
      .def_readonly("infeasibility", &LhvFeasibility::infeasibility)
      .def_readonly("farkas", &LhvFeasibility::farkas)
      .def_readonly("max_residual", &LhvFeasibility::max_residual);

  m.def("random_joint", &random_joint, py::arg("seed"));
  m.def("classical_entropic_mermin", &classical_entropic_mermin, py::arg("joint"));
  m.def(
      "lhv_feasibility",
      [](const DensityMatrix& state, const TripartiteSettings& settings) {
        return lhv_feasibility(quantum_contexts(state, settings));
      },
      py::arg("state"), py::arg("settings") = TripartiteSettings::reference(),
      "Whether the four context distributions of the state admit a joint distribution.");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropic GHZ paradox: states, entropic inequalities, noise thresholds, compression tests";
  bind_states(m);
  bind_info(m);
  bind_inequalities(m);
  bind_noise(m);
  bind_bitstream(m);
  bind_lhv(m);
}
