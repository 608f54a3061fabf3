// hunt.hpp
// Seeded randomized search for PPT states inside the bound-entanglement rank
// window, with beyond-PPT detectors (CCNR and extraction failure) deciding
// which states get flagged as candidates. Flags never assert entanglement:
// a CCNR value above 1 under PPT is a genuine certificate, an extraction
// failure is only a heuristic hint, and records keep the two apart.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bosesep/separability.hpp"
#include "bosesep/state_factory.hpp"

namespace bosesep {

enum class Detector { Ccnr, ExtractionFailure, Both };

const char* to_string(Detector detector);
std::optional<Detector> detector_from_string(const std::string& text);

struct HuntConfig {
  SystemShape shape;
  Index target_rank = 0;        // must lie in bound_window(shape)
  int trials = 0;
  std::uint64_t master_seed = 0;
  int projection_iters = 500;
  Detector detector = Detector::Both;
};

struct CandidateRecord {
  int trial_index = 0;
  Seed seed;
  StateRecord state;                     // symmetric-basis embedding
  Index rank = 0;
  std::vector<double> min_pt_eigenvalues;  // per single-party cut
  std::vector<double> ccnr_values;         // per single-party cut
  bool extraction_attempted = false;
  bool extraction_failed = false;
  std::string extraction_outcome;
  bool ccnr_flag = false;                // some ccnr value > 1 + 1e-8
  bool flagged = false;
};

struct HuntSummary {
  int trials = 0;
  int converged = 0;
  int ppt_in_window = 0;
  int flagged = 0;
};

// Alternate between the nearest rank-<=r approximation (spectral truncation
// in symmetric coordinates) and the nearest PPT state for the {0} cut
// (negative PT eigenvalues clipped), until both constraint residuals fall
// below 1e-9. Error{NoConvergence} when the iteration budget runs out.
StateRecord alternating_projection(const StateRecord& rho0, Index target_rank, int iters = 500);

// One JSONL line per PPT-in-window trial, plus counters. Output is a pure
// function of the config; trials derive their RNG from (master_seed, index).
// When `keep` is non-null the emitted records are also collected there.
HuntSummary run_hunt(const HuntConfig& config, std::ostream& jsonl_out,
                     std::vector<CandidateRecord>* keep = nullptr);

struct VerifyReport {
  bool pass = false;
  std::vector<std::string> mismatches;
};

// Recomputes rank, PT spectra, CCNR values, and the support residual from
// the embedded state and compares against the record's fields within 1e-8.
VerifyReport verify_candidate(const CandidateRecord& record);

}  // namespace bosesep
