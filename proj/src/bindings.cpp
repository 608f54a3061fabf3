// bindings.cpp
// Python bindings for the main operations. Matrices cross the boundary as
// numpy arrays via Eigen; reports and certificates as lightweight classes.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bosesep/bosonic_space.hpp"
#include "bosesep/hunt.hpp"
#include "bosesep/separability.hpp"
#include "bosesep/state_factory.hpp"
#include "bosesep/state_io.hpp"

namespace py = pybind11;
using namespace bosesep;

namespace {

Seed make_seed(std::uint64_t master, std::uint64_t stream) { return Seed{master, stream}; }

StateRecord state_from_matrix(int n, int k, const std::string& basis,
                              const ComplexMatrix& matrix, const std::string& provenance) {
  StateRecord state;
  state.shape = SystemShape::make(n, k);
  state.basis_tag = basis;
  state.matrix = matrix;
  state.provenance = provenance;
  return state;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Separability toolkit for identical-boson (permutation-symmetric) states";

  py::register_exception<Error>(m, "BosesepError");

  py::class_<SystemShape>(m, "SystemShape")
      .def(py::init(&SystemShape::make), py::arg("n"), py::arg("k"))
      .def_readonly("n", &SystemShape::n)
      .def_readonly("k", &SystemShape::k)
      .def_readonly("full_dim", &SystemShape::full_dim)
      .def_readonly("sym_dim", &SystemShape::sym_dim)
      .def("__repr__", [](const SystemShape& s) {
        std::ostringstream out;
        out << "SystemShape(n=" << s.n << ", k=" << s.k << ")";
        return out.str();
      });

  py::class_<Seed>(m, "Seed")
      .def(py::init(&make_seed), py::arg("master") = 0, py::arg("stream") = 0)
      .def_readwrite("master", &Seed::master)
      .def_readwrite("stream", &Seed::stream);

  py::class_<OccupationVector>(m, "OccupationVector")
      .def(py::init([](std::vector<int> counts) { return OccupationVector{std::move(counts)}; }),
           py::arg("counts"))
      .def_readonly("counts", &OccupationVector::counts)
      .def("total", &OccupationVector::total);

  py::class_<StateRecord>(m, "StateRecord")
      .def(py::init(&state_from_matrix), py::arg("n"), py::arg("k"), py::arg("basis"),
           py::arg("matrix"), py::arg("provenance") = "")
      .def_readonly("shape", &StateRecord::shape)
      .def_readonly("basis", &StateRecord::basis_tag)
      .def_readonly("matrix", &StateRecord::matrix)
      .def_readonly("provenance", &StateRecord::provenance)
      .def("invariant_violation", &StateRecord::invariant_violation)
      .def("to_json", [](const StateRecord& s) { return state_to_json(s).dump(); });

  py::class_<CertificateTerm>(m, "CertificateTerm")
      .def_readonly("weight", &CertificateTerm::weight)
      .def_readonly("f", &CertificateTerm::f);

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("shape", &Certificate::shape)
      .def_readonly("terms", &Certificate::terms)
      .def_readonly("trace_distance", &Certificate::reconstruction_trace_distance)
      .def("reconstruct_full", &Certificate::reconstruct_full)
      .def("to_json", [](const Certificate& c) { return certificate_to_json(c).dump(); });

  py::class_<RankWindow>(m, "RankWindow")
      .def_readonly("lo", &RankWindow::lo)
      .def_readonly("hi", &RankWindow::hi)
      .def("empty", &RankWindow::empty)
      .def("contains", &RankWindow::contains);

  py::class_<SeparabilityReport>(m, "SeparabilityReport")
      .def_property_readonly("verdict",
                             [](const SeparabilityReport& r) { return to_string(r.verdict); })
      .def_property_readonly("rule",
                             [](const SeparabilityReport& r) { return to_string(r.rule_fired); })
      .def_readonly("rank", &SeparabilityReport::rank)
      .def_readonly("threshold", &SeparabilityReport::threshold_used)
      .def_readonly("min_pt_eigenvalue_per_cut", &SeparabilityReport::min_pt_eigenvalue_per_cut)
      .def_readonly("notes", &SeparabilityReport::notes)
      .def_readonly("window", &SeparabilityReport::window)
      .def("to_json", [](const SeparabilityReport& r) { return report_to_json(r).dump(); });

  py::class_<HuntSummary>(m, "HuntSummary")
      .def_readonly("trials", &HuntSummary::trials)
      .def_readonly("converged", &HuntSummary::converged)
      .def_readonly("ppt_in_window", &HuntSummary::ppt_in_window)
      .def_readonly("flagged", &HuntSummary::flagged);

  // tensor_linalg
  m.def("kron", &kron, py::arg("a"), py::arg("b"));
  m.def("tensor_power", &tensor_power, py::arg("f"), py::arg("k"));
  m.def("eps_rank", &eps_rank, py::arg("a"), py::arg("rel_tol") = tol::eps_rank_rel);
  m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("shape"), py::arg("parties"));
  m.def("partial_transpose", &partial_transpose, py::arg("rho"), py::arg("shape"),
        py::arg("parties"));
  m.def(
      "schmidt_decompose",
      [](const ComplexVector& psi, Index dim_a, Index dim_b) {
        SchmidtDecomposition s = schmidt_decompose(psi, dim_a, dim_b);
        return py::make_tuple(s.coefficients, s.left, s.right);
      },
      py::arg("psi"), py::arg("dim_a"), py::arg("dim_b"));
  m.def("trace_norm", &trace_norm, py::arg("a"));
  m.def("trace_distance", &trace_distance, py::arg("a"), py::arg("b"));
  m.def("psd_subtraction_weight", &psd_subtraction_weight, py::arg("rho"), py::arg("v"));

  // bosonic_space
  m.def("bosonic_dim", &bosonic_dim, py::arg("n"), py::arg("k"));
  m.def(
      "occupation_basis",
      [](int n, int k) {
        std::vector<std::vector<int>> out;
        for (const OccupationVector& occ : occupation_basis(n, k)) out.push_back(occ.counts);
        return out;
      },
      py::arg("n"), py::arg("k"));
  m.def(
      "dicke_vector",
      [](const std::vector<int>& counts, const SystemShape& shape) {
        return dicke_vector(OccupationVector{counts}, shape);
      },
      py::arg("occ"), py::arg("shape"));
  m.def("symmetrizer", &symmetrizer, py::arg("shape"));
  m.def(
      "symmetric_isometry",
      [](const SystemShape& shape) { return symmetric_isometry(shape).v; }, py::arg("shape"));
  m.def("symmetric_support_residual",
        py::overload_cast<const ComplexMatrix&, const SystemShape&>(&symmetric_support_residual),
        py::arg("rho"), py::arg("shape"));
  m.def("compress", py::overload_cast<const ComplexMatrix&, const SystemShape&>(&compress),
        py::arg("rho_full"), py::arg("shape"));
  m.def("expand", py::overload_cast<const ComplexMatrix&, const SystemShape&>(&expand),
        py::arg("rho_sym"), py::arg("shape"));

  // state_factory
  m.def("product_power", &product_power, py::arg("f"), py::arg("k"));
  m.def("ghz_like", &ghz_like, py::arg("n"), py::arg("k"));
  m.def(
      "dicke_state",
      [](const std::vector<int>& counts, const SystemShape& shape) {
        return dicke_state(OccupationVector{counts}, shape);
      },
      py::arg("occ"), py::arg("shape"));
  m.def("random_symmetric_pure", &random_symmetric_pure, py::arg("shape"), py::arg("seed"));
  m.def("random_separable_mixture", &random_separable_mixture, py::arg("shape"), py::arg("r"),
        py::arg("seed"));
  m.def("random_rank_r_symmetric", &random_rank_r_symmetric, py::arg("shape"), py::arg("r"),
        py::arg("seed"));

  // separability
  m.def(
      "ppt_check",
      [](const StateRecord& state, const std::vector<std::vector<int>>& cuts) {
        std::vector<py::tuple> out;
        for (const PtCutResult& r : ppt_check(state, cuts))
          out.push_back(py::make_tuple(r.cut, r.min_eigenvalue, r.pass));
        return out;
      },
      py::arg("state"), py::arg("cuts") = std::vector<std::vector<int>>{});
  m.def(
      "rank_threshold",
      [](const SystemShape& shape) {
        RankThreshold t = rank_threshold(shape);
        return py::make_tuple(t.threshold, to_string(t.rule));
      },
      py::arg("shape"));
  m.def("bound_window", &bound_window, py::arg("shape"));
  m.def("classify", &classify, py::arg("state"));
  m.def(
      "find_symmetric_product_in_range",
      [](const ComplexMatrix& projector, const SystemShape& shape, Seed seed, int restarts,
         int max_iters) {
        ProductSearchConfig config;
        config.restarts = restarts;
        config.max_iters = max_iters;
        ProductVectorResult r = find_symmetric_product_in_range(projector, shape, seed, config);
        return py::make_tuple(r.found, r.f, r.overlap);
      },
      py::arg("range_projector"), py::arg("shape"), py::arg("seed"), py::arg("restarts") = 64,
      py::arg("max_iters") = 500);
  m.def(
      "extract_certificate",
      [](const StateRecord& state, Seed seed, bool force) {
        ExtractionConfig config;
        config.force = force;
        return extract_certificate(state, seed, config);
      },
      py::arg("state"), py::arg("seed") = Seed{}, py::arg("force") = false);
  m.def("ccnr_value", &ccnr_value, py::arg("state"), py::arg("cut"));

  // hunt + io
  m.def(
      "run_hunt",
      [](int n, int k, Index target_rank, int trials, std::uint64_t master_seed,
         int projection_iters, const std::string& detector, const std::string& jsonl_path) {
        HuntConfig config;
        config.shape = SystemShape::make(n, k);
        config.target_rank = target_rank;
        config.trials = trials;
        config.master_seed = master_seed;
        config.projection_iters = projection_iters;
        auto parsed = detector_from_string(detector);
        if (!parsed) fail(ErrorCode::Unsupported, "unknown detector \"" + detector + "\"");
        config.detector = *parsed;
        std::ofstream sink(jsonl_path);
        if (!sink) fail(ErrorCode::IoError, "cannot open " + jsonl_path);
        return run_hunt(config, sink);
      },
      py::arg("n"), py::arg("k"), py::arg("target_rank"), py::arg("trials"),
      py::arg("master_seed") = 0, py::arg("projection_iters") = 500,
      py::arg("detector") = "both", py::arg("jsonl_path") = "hunt.jsonl");
  m.def(
      "load_state", [](const std::string& path) { return load_state(path); }, py::arg("path"));
  m.def(
      "save_state",
      [](const std::string& path, const StateRecord& state) { save_state(path, state); },
      py::arg("path"), py::arg("state"));

#ifdef BOSESEP_VERSION
  m.attr("__version__") = BOSESEP_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
