// separability.hpp
// PPT testing, rank-threshold separability classification, the bound
// entanglement rank windows, explicit separable-decomposition certificates,
// and the CCNR realignment detector.
//
// The rank rules are one-directional: low rank plus PPT implies separable,
// but nothing here ever certifies bound entanglement. States that pass every
// PPT cut and exceed the threshold come back Undetermined with the rank
// window attached.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bosesep/certificate.hpp"
#include "bosesep/rng.hpp"
#include "bosesep/state_factory.hpp"
#include "bosesep/tensor_linalg.hpp"

namespace bosesep {

enum class Verdict { Separable, EntangledNPT, Undetermined, InvalidInput };

enum class Rule { RT1, RT2, R2B, R3Q, RKQ, RNPT, RNone };

const char* to_string(Verdict verdict);
const char* to_string(Rule rule);
std::optional<Verdict> verdict_from_string(const std::string& text);
std::optional<Rule> rule_from_string(const std::string& text);

struct PtCutResult {
  std::vector<int> cut;
  double min_eigenvalue = 0.0;
  bool pass = false;  // min >= -1e-9 * max(1, lambda_max of the PT matrix)
};

// Min partial-transpose eigenvalue per cut; empty cut list means all single
// parties {0}, ..., {k-1}.
std::vector<PtCutResult> ppt_check(const StateRecord& state,
                                   const std::vector<std::vector<int>>& cuts = {});

struct RankThreshold {
  Index threshold = 0;
  Rule rule = Rule::RNone;
};

// Largest rank at which PPT implies separable for this shape:
//   k = 2          -> max(n, n(n+1)/2 - 2)   (R-2B)
//   k = 3, n = 2   -> 4 = sym_dim            (R-3Q, all PPT separable)
//   k = 3, n >= 3  -> n^2                    (R-T1)
//   k >= 4, n = 2  -> k = sym_dim - 1        (R-KQ, all but maximal rank)
//   k >= 4, n >= 3 -> I^(k-1)_n              (R-T2)
// Error{Unsupported} for k < 2.
RankThreshold rank_threshold(const SystemShape& shape);

struct RankWindow {
  Index lo = 1;
  Index hi = 0;
  SystemShape shape;

  bool empty() const { return lo > hi; }
  bool contains(Index r) const { return r >= lo && r <= hi; }
};

// [threshold + 1, sym_dim]: the only ranks a PPT entangled state could have.
RankWindow bound_window(const SystemShape& shape);

struct SeparabilityReport {
  Verdict verdict = Verdict::InvalidInput;
  Rule rule_fired = Rule::RNone;
  Index rank = 0;
  std::vector<double> min_pt_eigenvalue_per_cut;
  Index threshold_used = 0;
  std::string notes;
  std::optional<RankWindow> window;  // attached on Undetermined
};

// Full pipeline: invariants -> symmetric support -> PPT on all single-party
// cuts -> rank vs. threshold. Errors become InvalidInput verdicts.
SeparabilityReport classify(const StateRecord& state);

struct ProductSearchConfig {
  int restarts = 64;
  int max_iters = 500;
  double delta_tol = 1e-12;        // stop an iteration run when |delta g| falls below
  double early_exit_gap = 1e-13;   // stop restarting once 1 - g is this small
};

struct ProductVectorResult {
  bool found = false;      // best overlap reached 1 - 1e-8
  ComplexVector f;         // best local vector seen (also set when !found)
  double overlap = 0.0;    // g = <f^k| Q |f^k>
};

// Maximizes g(f) = <f^(tensor k)| Q |f^(tensor k)> over unit f in C^n by
// symmetric higher-order power iteration with multi-start. Q must be an
// orthogonal projector (idempotent Hermitian). Ties across restarts keep the
// first maximizer in stream order.
ProductVectorResult find_symmetric_product_in_range(const ComplexMatrix& range_projector,
                                                    const SystemShape& shape, Seed seed,
                                                    const ProductSearchConfig& config = {});

struct ExtractionConfig {
  // The search runs to machine saturation here, tighter than the standalone
  // defaults: each term's reconstruction error scales as sqrt(1 - g), so a
  // 1e-12 plateau would cap certificates near 1e-6 trace distance.
  ProductSearchConfig search{.restarts = 64, .max_iters = 500, .delta_tol = 1e-16,
                             .early_exit_gap = 1e-14};
  double residual_trace_tol = 1e-9;
  bool force = false;  // allow non-Separable classifications, best effort
};

// Greedy decomposition: find a product vector in the range, subtract it at
// the PSD-preserving weight (rank drops by one each round), repeat until the
// residual trace is negligible. Throws Error{ExtractionFailed} when no
// product vector is found; that is heuristic incompleteness, not a
// refutation of separability.
Certificate extract_certificate(const StateRecord& state, Seed seed = {},
                                const ExtractionConfig& config = {});

// Trace norm of the realignment of rho across the bipartition (cut vs. the
// complement). Values above 1 + 1e-8 certify entanglement; the converse
// fails, so values <= 1 prove nothing.
double ccnr_value(const StateRecord& state, const std::vector<int>& cut);

}  // namespace bosesep
