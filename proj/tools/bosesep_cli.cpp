// bosesep_cli.cpp
// Command-line surface over the library. Exit codes are a machine contract:
//   0 success / Separable        4 EntangledNPT
//   2 bad arguments, invalid     5 Undetermined
//     input, failed precondition 6 extraction failed
//   3 I/O failure                7 verification failed

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bosesep/bosonic_space.hpp"
#include "bosesep/hunt.hpp"
#include "bosesep/separability.hpp"
#include "bosesep/state_factory.hpp"
#include "bosesep/state_io.hpp"

namespace {

using namespace bosesep;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitEntangledNpt = 4;
constexpr int kExitUndetermined = 5;
constexpr int kExitExtractionFailed = 6;
constexpr int kExitVerifyFailed = 7;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::IoError: return kExitIo;
    case ErrorCode::ExtractionFailed: return kExitExtractionFailed;
    default: return kExitBadInput;
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    size_t pos = 0;
    int value = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad integer \"" + item + "\"");
    out.push_back(value);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

struct GenArgs {
  std::string kind;
  int n = 0, k = 0;
  int rank = 1;
  std::string occ;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  SystemShape shape = SystemShape::make(args.n, args.k);
  Seed seed{args.seed, 0};
  StateRecord state;
  if (args.kind == "product") {
    RandomStream rng(seed);
    state = product_power(rng.haar_unit(shape.n), shape.k);
    state.provenance += " seed=" + std::to_string(args.seed);
  } else if (args.kind == "ghz") {
    state = ghz_like(args.n, args.k);
  } else if (args.kind == "dicke") {
    if (args.occ.empty()) fail(ErrorCode::ShapeError, "--occ is required for kind=dicke");
    state = dicke_state(OccupationVector{parse_int_list(args.occ)}, shape);
  } else if (args.kind == "random-pure") {
    state = random_symmetric_pure(shape, seed);
  } else if (args.kind == "random-separable") {
    state = random_separable_mixture(shape, args.rank, seed);
  } else if (args.kind == "random-rank") {
    state = random_rank_r_symmetric(shape, args.rank, seed);
  } else {
    fail(ErrorCode::Unsupported, "unknown kind \"" + args.kind + "\"");
  }
  save_state(args.out, state);
  std::cout << "wrote " << args.out << " (" << state.provenance << ")\n";
  return kExitOk;
}

int run_classify(const std::string& in, const std::string& report_path) {
  StateRecord state = load_state(in);
  SeparabilityReport report = classify(state);
  if (!report_path.empty()) write_json_file(report_path, report_to_json(report));

  switch (report.verdict) {
    case Verdict::Separable:
      std::cout << "Separable (" << to_string(report.rule_fired) << "), rank " << report.rank
                << " <= threshold " << report.threshold_used << "\n";
      return kExitOk;
    case Verdict::EntangledNPT:
      std::cout << "EntangledNPT (" << to_string(report.rule_fired) << ")\n";
      return kExitEntangledNpt;
    case Verdict::Undetermined:
      std::cout << "Undetermined, rank " << report.rank << ", window ["
                << report.window->lo << "," << report.window->hi << "]\n";
      return kExitUndetermined;
    case Verdict::InvalidInput:
      std::cout << "InvalidInput: " << report.notes << "\n";
      return kExitBadInput;
  }
  return kExitBadInput;
}

int run_decompose(const std::string& in, const std::string& out, std::uint64_t seed_value,
                  bool force) {
  StateRecord state = load_state(in);
  ExtractionConfig config;
  config.force = force;
  Certificate cert = extract_certificate(state, Seed{seed_value, 0}, config);
  write_json_file(out, certificate_to_json(cert));
  std::cout << "wrote " << out << " (" << cert.terms.size() << " terms, trace distance "
            << cert.reconstruction_trace_distance << ")\n";
  return kExitOk;
}

int run_pt(const std::string& in, const std::string& parties, const std::string& out) {
  StateRecord state = load_state(in);
  std::vector<int> cut = parse_int_list(parties);
  StateRecord full = to_full_basis(state);
  StateRecord transposed = full;
  transposed.matrix = partial_transpose(full.matrix, full.shape, cut);
  transposed.provenance = full.provenance + " | partial_transpose(parties=" + parties + ")";
  transposed.ground_truth.reset();
  save_state(out, transposed);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int run_hunt_cmd(int n, int k, Index rank, int trials, std::uint64_t seed, int iters,
                 const std::string& detector_name, const std::string& out) {
  HuntConfig config;
  config.shape = SystemShape::make(n, k);
  config.target_rank = rank;
  config.trials = trials;
  config.master_seed = seed;
  config.projection_iters = iters;
  auto detector = detector_from_string(detector_name);
  if (!detector)
    fail(ErrorCode::Unsupported, "unknown detector \"" + detector_name + "\"");
  config.detector = *detector;

  std::ofstream sink(out);
  if (!sink) fail(ErrorCode::IoError, "cannot open " + out + " for writing");
  HuntSummary summary = run_hunt(config, sink);
  sink.flush();
  if (!sink) fail(ErrorCode::IoError, "write failed for " + out);
  std::cout << "trials=" << summary.trials << " converged=" << summary.converged
            << " ppt_in_window=" << summary.ppt_in_window << " flagged=" << summary.flagged
            << "\n";
  return kExitOk;
}

int run_verify(const std::string& in) {
  std::ifstream input(in);
  if (!input) fail(ErrorCode::IoError, "cannot open " + in);
  int line_number = 0;
  int checked = 0;
  bool all_pass = true;
  std::string line;
  while (std::getline(input, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      fail(ErrorCode::ParseError, "invalid JSON on line " + std::to_string(line_number));
    CandidateRecord record = candidate_from_json(j);
    VerifyReport report = verify_candidate(record);
    ++checked;
    if (!report.pass) {
      all_pass = false;
      std::cout << "FAIL trial " << record.trial_index << " (line " << line_number << ")\n";
      for (const std::string& mismatch : report.mismatches)
        std::cout << "  " << mismatch << "\n";
    }
  }
  if (checked == 0) fail(ErrorCode::ParseError, "no records in " + in);
  std::cout << (all_pass ? "PASS" : "FAIL") << " (" << checked << " records)\n";
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bosesep — separability toolkit for identical-boson states"};
  app.require_subcommand(1);

  auto* dim_cmd = app.add_subcommand("dim", "print the symmetric-subspace dimension I^k_n");
  int dim_n = 0, dim_k = 0;
  dim_cmd->add_option("--n", dim_n, "local dimension")->required();
  dim_cmd->add_option("--k", dim_k, "party count")->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate a state file");
  GenArgs gen_args;
  gen_cmd->add_option("--kind", gen_args.kind,
                      "product | ghz | dicke | random-pure | random-separable | random-rank")
      ->required();
  gen_cmd->add_option("--n", gen_args.n, "local dimension")->required();
  gen_cmd->add_option("--k", gen_args.k, "party count")->required();
  gen_cmd->add_option("--rank", gen_args.rank, "term count / rank for random kinds");
  gen_cmd->add_option("--occ", gen_args.occ, "occupation counts, e.g. 2,1,0 (dicke)");
  gen_cmd->add_option("--seed", gen_args.seed, "master seed");
  gen_cmd->add_option("--out", gen_args.out, "output state file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "classify a state file");
  std::string classify_in, classify_report;
  classify_cmd->add_option("--in", classify_in, "input state file")->required();
  classify_cmd->add_option("--report", classify_report, "optional report file");

  auto* decompose_cmd = app.add_subcommand("decompose", "extract a separable decomposition");
  std::string dec_in, dec_out;
  std::uint64_t dec_seed = 0;
  bool dec_force = false;
  decompose_cmd->add_option("--in", dec_in, "input state file")->required();
  decompose_cmd->add_option("--out", dec_out, "output certificate file")->required();
  decompose_cmd->add_option("--seed", dec_seed, "search seed");
  decompose_cmd->add_flag("--force", dec_force, "attempt even when not classified Separable");

  auto* pt_cmd = app.add_subcommand("pt", "partial transpose of a state file");
  std::string pt_in, pt_parties = "0", pt_out;
  pt_cmd->add_option("--in", pt_in, "input state file")->required();
  pt_cmd->add_option("--parties", pt_parties, "comma-separated party indices");
  pt_cmd->add_option("--out", pt_out, "output file")->required();

  auto* hunt_cmd = app.add_subcommand("hunt", "search the bound-entanglement rank window");
  int hunt_n = 0, hunt_k = 0, hunt_trials = 0, hunt_iters = 500;
  Index hunt_rank = 0;
  std::uint64_t hunt_seed = 0;
  std::string hunt_out, hunt_detector = "both";
  hunt_cmd->add_option("--n", hunt_n, "local dimension")->required();
  hunt_cmd->add_option("--k", hunt_k, "party count")->required();
  hunt_cmd->add_option("--rank", hunt_rank, "target rank (inside the window)")->required();
  hunt_cmd->add_option("--trials", hunt_trials, "number of trials")->required();
  hunt_cmd->add_option("--seed", hunt_seed, "master seed");
  hunt_cmd->add_option("--iters", hunt_iters, "projection iteration budget");
  hunt_cmd->add_option("--detector", hunt_detector, "ccnr | extraction-failure | both");
  hunt_cmd->add_option("--out", hunt_out, "output JSONL file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "re-verify hunt candidate records");
  std::string verify_in;
  verify_cmd->add_option("--in", verify_in, "JSONL record file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (dim_cmd->parsed()) {
      std::cout << bosonic_dim(dim_n, dim_k) << "\n";
      return kExitOk;
    }
    if (gen_cmd->parsed()) return run_gen(gen_args);
    if (classify_cmd->parsed()) return run_classify(classify_in, classify_report);
    if (decompose_cmd->parsed()) return run_decompose(dec_in, dec_out, dec_seed, dec_force);
    if (pt_cmd->parsed()) return run_pt(pt_in, pt_parties, pt_out);
    if (hunt_cmd->parsed())
      return run_hunt_cmd(hunt_n, hunt_k, hunt_rank, hunt_trials, hunt_seed, hunt_iters,
                          hunt_detector, hunt_out);
    if (verify_cmd->parsed()) return run_verify(verify_in);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitBadInput;
}
