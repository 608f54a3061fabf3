#include "bosesep/state_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace bosesep {

namespace {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, Index rows, Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    fail(ErrorCode::ParseError, "matrix has wrong number of rows");
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      fail(ErrorCode::ParseError, "matrix row " + std::to_string(i) + " has wrong length");
    for (Index c = 0; c < cols; ++c) {
      const json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number())
        fail(ErrorCode::ParseError, "matrix entries must be [re, im] pairs");
      m(i, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i)
    out.push_back(json::array({v(i).real(), v(i).imag()}));
  return out;
}

ComplexVector vector_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "vector must be an array");
  ComplexVector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) {
    const json& entry = j[i];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
        !entry[1].is_number())
      fail(ErrorCode::ParseError, "vector entries must be [re, im] pairs");
    v(i) = Complex(entry[0].get<double>(), entry[1].get<double>());
  }
  return v;
}

void require_schema(const json& j, const std::string& expected) {
  if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string())
    fail(ErrorCode::ParseError, "missing schema field");
  const std::string got = j["schema"].get<std::string>();
  if (got != expected)
    fail(ErrorCode::ParseError, "schema is \"" + got + "\", expected \"" + expected + "\"");
}

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.contains(key))
    fail(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad field \"") + key + "\": " + e.what());
  }
}

}  // namespace

json state_to_json(const StateRecord& state) {
  return json{{"schema", "bose-state-v1"},
              {"n", state.shape.n},
              {"k", state.shape.k},
              {"basis", state.basis_tag},
              {"matrix", matrix_to_json(state.matrix)},
              {"provenance", state.provenance}};
}

StateRecord state_from_json(const json& j) {
  require_schema(j, "bose-state-v1");
  StateRecord state;
  int n = get_field<int>(j, "n");
  int k = get_field<int>(j, "k");
  try {
    state.shape = SystemShape::make(n, k);
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  state.basis_tag = get_field<std::string>(j, "basis");
  if (state.basis_tag != "full" && state.basis_tag != "symmetric")
    fail(ErrorCode::ParseError, "basis must be \"full\" or \"symmetric\"");
  const Index d = state.basis_tag == "full" ? state.shape.full_dim : state.shape.sym_dim;
  if (!j.contains("matrix")) fail(ErrorCode::ParseError, "missing field \"matrix\"");
  state.matrix = matrix_from_json(j["matrix"], d, d);
  state.provenance = j.value("provenance", std::string{});
  return state;
}

json certificate_to_json(const Certificate& cert) {
  json terms = json::array();
  for (const CertificateTerm& term : cert.terms)
    terms.push_back(json{{"weight", term.weight}, {"vector", vector_to_json(term.f)}});
  return json{{"schema", "bose-cert-v1"},
              {"n", cert.shape.n},
              {"k", cert.shape.k},
              {"terms", std::move(terms)},
              {"trace_distance", cert.reconstruction_trace_distance}};
}

Certificate certificate_from_json(const json& j) {
  require_schema(j, "bose-cert-v1");
  Certificate cert;
  try {
    cert.shape = SystemShape::make(get_field<int>(j, "n"), get_field<int>(j, "k"));
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  if (!j.contains("terms") || !j["terms"].is_array())
    fail(ErrorCode::ParseError, "missing terms array");
  for (const json& term : j["terms"]) {
    CertificateTerm t;
    t.weight = get_field<double>(term, "weight");
    if (!term.contains("vector")) fail(ErrorCode::ParseError, "term missing vector");
    t.f = vector_from_json(term["vector"]);
    if (t.f.size() != cert.shape.n)
      fail(ErrorCode::ParseError, "term vector has wrong dimension");
    cert.terms.push_back(std::move(t));
  }
  cert.reconstruction_trace_distance = j.value("trace_distance", 0.0);
  return cert;
}

json report_to_json(const SeparabilityReport& report, const Certificate* certificate) {
  json j{{"schema", "bose-report-v1"},
         {"verdict", to_string(report.verdict)},
         {"rule", to_string(report.rule_fired)},
         {"rank", report.rank},
         {"threshold", report.threshold_used},
         {"min_pt_eigenvalue_per_cut", report.min_pt_eigenvalue_per_cut},
         {"notes", report.notes}};
  if (report.window)
    j["window"] = json{{"lo", report.window->lo}, {"hi", report.window->hi}};
  if (certificate) j["certificate"] = certificate_to_json(*certificate);
  return j;
}

SeparabilityReport report_from_json(const json& j) {
  require_schema(j, "bose-report-v1");
  SeparabilityReport report;
  auto verdict = verdict_from_string(get_field<std::string>(j, "verdict"));
  auto rule = rule_from_string(get_field<std::string>(j, "rule"));
  if (!verdict || !rule) fail(ErrorCode::ParseError, "unknown verdict or rule");
  report.verdict = *verdict;
  report.rule_fired = *rule;
  report.rank = get_field<Index>(j, "rank");
  report.threshold_used = get_field<Index>(j, "threshold");
  report.min_pt_eigenvalue_per_cut = get_field<std::vector<double>>(j, "min_pt_eigenvalue_per_cut");
  report.notes = j.value("notes", std::string{});
  if (j.contains("window")) {
    RankWindow window;
    window.lo = get_field<Index>(j["window"], "lo");
    window.hi = get_field<Index>(j["window"], "hi");
    report.window = window;
  }
  return report;
}

json candidate_to_json(const CandidateRecord& record) {
  return json{{"schema", "hunt-v1"},
              {"trial_index", record.trial_index},
              {"seed", json{{"master", record.seed.master}, {"stream", record.seed.stream}}},
              {"state", state_to_json(record.state)},
              {"rank", record.rank},
              {"min_pt_eigenvalues", record.min_pt_eigenvalues},
              {"ccnr", record.ccnr_values},
              {"extraction", json{{"attempted", record.extraction_attempted},
                                  {"failed", record.extraction_failed},
                                  {"outcome", record.extraction_outcome}}},
              {"ccnr_flag", record.ccnr_flag},
              {"flagged", record.flagged}};
}

CandidateRecord candidate_from_json(const json& j) {
  require_schema(j, "hunt-v1");
  CandidateRecord record;
  record.trial_index = get_field<int>(j, "trial_index");
  if (!j.contains("seed")) fail(ErrorCode::ParseError, "missing seed");
  record.seed.master = get_field<std::uint64_t>(j["seed"], "master");
  record.seed.stream = get_field<std::uint64_t>(j["seed"], "stream");
  if (!j.contains("state")) fail(ErrorCode::ParseError, "missing state");
  record.state = state_from_json(j["state"]);
  record.rank = get_field<Index>(j, "rank");
  record.min_pt_eigenvalues = get_field<std::vector<double>>(j, "min_pt_eigenvalues");
  record.ccnr_values = get_field<std::vector<double>>(j, "ccnr");
  if (!j.contains("extraction")) fail(ErrorCode::ParseError, "missing extraction");
  record.extraction_attempted = get_field<bool>(j["extraction"], "attempted");
  record.extraction_failed = get_field<bool>(j["extraction"], "failed");
  record.extraction_outcome = j["extraction"].value("outcome", std::string{});
  record.ccnr_flag = get_field<bool>(j, "ccnr_flag");
  record.flagged = get_field<bool>(j, "flagged");
  return record;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::ParseError, "invalid JSON in " + path.string());
  return j;
}

void save_state(const std::filesystem::path& path, const StateRecord& state) {
  write_json_file(path, state_to_json(state));
}

StateRecord load_state(const std::filesystem::path& path) {
  return state_from_json(read_json_file(path));
}

}  // namespace bosesep
