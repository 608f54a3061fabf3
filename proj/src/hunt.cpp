#include "bosesep/hunt.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bosesep/bosonic_space.hpp"
#include "bosesep/state_io.hpp"

namespace bosesep {

namespace {

constexpr double kProjectionResidualTol = 1e-9;
constexpr double kCcnrSlack = 1e-8;
constexpr std::uint64_t kExtractionSubstream = 0xE117;

double clipped_negative_norm(const RealVector& w) {
  double acc = 0.0;
  for (Index i = 0; i < w.size(); ++i)
    if (w(i) < 0.0) acc += w(i) * w(i);
  return std::sqrt(acc);
}

}  // namespace

const char* to_string(Detector detector) {
  switch (detector) {
    case Detector::Ccnr: return "ccnr";
    case Detector::ExtractionFailure: return "extraction-failure";
    case Detector::Both: return "both";
  }
  return "both";
}

std::optional<Detector> detector_from_string(const std::string& text) {
  for (Detector d : {Detector::Ccnr, Detector::ExtractionFailure, Detector::Both})
    if (text == to_string(d)) return d;
  return std::nullopt;
}

StateRecord alternating_projection(const StateRecord& rho0, Index target_rank, int iters) {
  const SystemShape shape = rho0.shape;
  if (target_rank < 1 || target_rank > shape.sym_dim)
    fail(ErrorCode::RankTooLarge, "target rank must lie in 1..sym_dim");

  SymmetricIsometry iso = symmetric_isometry(shape);
  ComplexMatrix full = full_matrix(rho0);
  if (symmetric_support_residual(full, iso) > tol::support)
    fail(ErrorCode::NotSymmetricSupport, "seed state is not symmetric-supported");

  for (int iter = 0; iter <= iters; ++iter) {
    // Residuals of the current iterate against both constraint sets.
    ComplexMatrix sym = iso.v.adjoint() * full * iso.v;
    sym = 0.5 * (sym + sym.adjoint()).eval();
    EigenSystem es = hermitian_eigensystem(sym);
    const Index d = es.eigenvalues.size();
    double rank_residual_sq = 0.0;
    for (Index i = 0; i < d; ++i) {
      const bool kept = i >= d - target_rank && es.eigenvalues(i) > 0.0;
      if (!kept) rank_residual_sq += es.eigenvalues(i) * es.eigenvalues(i);
    }
    const double rank_residual = std::sqrt(rank_residual_sq);

    RealVector pt_eigs = hermitian_eigenvalues(partial_transpose(full, shape, {0}));
    const double ppt_residual = clipped_negative_norm(pt_eigs);

    if (rank_residual < kProjectionResidualTol && ppt_residual < kProjectionResidualTol) {
      StateRecord out;
      out.shape = shape;
      out.basis_tag = "full";
      out.matrix = full;
      out.provenance = rho0.provenance + " | alternating_projection(rank<=" +
                       std::to_string(target_rank) + ", iters=" + std::to_string(iter) + ")";
      return out;
    }
    if (iter == iters) break;

    // (a) nearest rank-<=r PSD approximation in symmetric coordinates.
    ComplexMatrix truncated = ComplexMatrix::Zero(d, d);
    for (Index i = std::max<Index>(0, d - target_rank); i < d; ++i)
      if (es.eigenvalues(i) > 0.0)
        truncated.noalias() +=
            es.eigenvalues(i) * (es.eigenvectors.col(i) * es.eigenvectors.col(i).adjoint());
    double trace = std::real(truncated.trace());
    if (trace <= 0.0)
      fail(ErrorCode::NumericalFailure, "projection collapsed to the zero matrix");
    truncated /= trace;
    full = iso.v * truncated * iso.v.adjoint();

    // (b) nearest PPT state for the {0} cut, then back onto the symmetric support.
    ComplexMatrix pt = partial_transpose(full, shape, {0});
    EigenSystem pes = hermitian_eigensystem(pt);
    ComplexMatrix clipped = ComplexMatrix::Zero(pt.rows(), pt.cols());
    for (Index i = 0; i < pes.eigenvalues.size(); ++i)
      if (pes.eigenvalues(i) > 0.0)
        clipped.noalias() +=
            pes.eigenvalues(i) * (pes.eigenvectors.col(i) * pes.eigenvectors.col(i).adjoint());
    full = partial_transpose(clipped, shape, {0});
    full = 0.5 * (full + full.adjoint()).eval();
    full = iso.v * (iso.v.adjoint() * full * iso.v) * iso.v.adjoint();
    trace = std::real(full.trace());
    if (trace <= 0.0)
      fail(ErrorCode::NumericalFailure, "projection collapsed to the zero matrix");
    full /= trace;
  }

  fail(ErrorCode::NoConvergence,
       "constraint residuals did not both reach " + std::to_string(kProjectionResidualTol) +
           " within " + std::to_string(iters) + " iterations");
}

HuntSummary run_hunt(const HuntConfig& config, std::ostream& jsonl_out,
                     std::vector<CandidateRecord>* keep) {
  if (config.trials < 0) fail(ErrorCode::Precondition, "trial count must be nonnegative");
  RankWindow window = bound_window(config.shape);
  if (!window.contains(config.target_rank)) {
    std::ostringstream msg;
    msg << "target rank " << config.target_rank << " outside the bound-entanglement window [";
    if (window.empty())
      msg << "empty";
    else
      msg << window.lo << ", " << window.hi;
    msg << "] for n=" << config.shape.n << ", k=" << config.shape.k;
    fail(ErrorCode::Precondition, msg.str());
  }

  SymmetricIsometry iso = symmetric_isometry(config.shape);
  HuntSummary summary;
  summary.trials = config.trials;

  for (int trial = 0; trial < config.trials; ++trial) {
    Seed seed{config.master_seed, static_cast<std::uint64_t>(trial)};
    StateRecord drawn =
        random_rank_r_symmetric(config.shape, static_cast<int>(config.target_rank), seed);

    StateRecord projected;
    try {
      projected = alternating_projection(drawn, config.target_rank, config.projection_iters);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoConvergence) continue;
      throw;
    }
    ++summary.converged;

    std::vector<PtCutResult> pt = ppt_check(projected);
    bool all_pass = true;
    for (const PtCutResult& cut : pt) all_pass = all_pass && cut.pass;
    const Index rank = eps_rank(compress(projected.matrix, iso));
    if (!all_pass || !window.contains(rank)) continue;
    ++summary.ppt_in_window;

    CandidateRecord record;
    record.trial_index = trial;
    record.seed = seed;
    record.state = to_symmetric_basis(projected);
    record.rank = rank;
    for (const PtCutResult& cut : pt) record.min_pt_eigenvalues.push_back(cut.min_eigenvalue);
    for (int p = 0; p < config.shape.k; ++p)
      record.ccnr_values.push_back(ccnr_value(projected, {p}));
    for (double value : record.ccnr_values)
      record.ccnr_flag = record.ccnr_flag || value > 1.0 + kCcnrSlack;

    if (config.detector == Detector::Ccnr) {
      record.extraction_outcome = "skipped (detector=ccnr)";
    } else {
      record.extraction_attempted = true;
      ExtractionConfig extraction;
      extraction.force = true;
      try {
        Certificate cert =
            extract_certificate(projected, seed.substream(kExtractionSubstream), extraction);
        std::ostringstream outcome;
        outcome << "certificate with " << cert.terms.size() << " terms, trace distance "
                << cert.reconstruction_trace_distance;
        record.extraction_outcome = outcome.str();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ExtractionFailed) throw;
        record.extraction_failed = true;
        record.extraction_outcome = e.what();
      }
    }

    switch (config.detector) {
      case Detector::Ccnr: record.flagged = record.ccnr_flag; break;
      case Detector::ExtractionFailure: record.flagged = record.extraction_failed; break;
      case Detector::Both: record.flagged = record.ccnr_flag || record.extraction_failed; break;
    }
    if (record.flagged) ++summary.flagged;

    jsonl_out << candidate_to_json(record).dump() << "\n";
    if (keep) keep->push_back(record);
  }
  return summary;
}

VerifyReport verify_candidate(const CandidateRecord& record) {
  VerifyReport report;
  constexpr double tolerance = 1e-8;
  auto mismatch = [&](const std::string& what) { report.mismatches.push_back(what); };

  const StateRecord& state = record.state;
  if (auto violation = state.invariant_violation()) {
    mismatch("embedded state violates its invariants: " + *violation);
    report.pass = false;
    return report;
  }

  const ComplexMatrix full = full_matrix(state);
  double support = symmetric_support_residual(full, state.shape);
  if (support > tolerance)
    mismatch("support residual " + std::to_string(support) + " above tolerance");

  try {
    const ComplexMatrix sym =
        state.basis_tag == "symmetric" ? state.matrix : compress(full, state.shape);
    Index rank = eps_rank(sym);
    if (rank != record.rank)
      mismatch("rank recomputed as " + std::to_string(rank) + ", record says " +
               std::to_string(record.rank));
  } catch (const Error& e) {
    mismatch(std::string("rank recomputation failed: ") + e.what());
  }

  std::vector<PtCutResult> pt = ppt_check(state);
  if (pt.size() != record.min_pt_eigenvalues.size()) {
    mismatch("PT eigenvalue list has wrong length");
  } else {
    for (size_t i = 0; i < pt.size(); ++i)
      if (std::abs(pt[i].min_eigenvalue - record.min_pt_eigenvalues[i]) > tolerance)
        mismatch("min PT eigenvalue for cut {" + std::to_string(i) + "} recomputed as " +
                 std::to_string(pt[i].min_eigenvalue) + ", record says " +
                 std::to_string(record.min_pt_eigenvalues[i]));
  }

  if (static_cast<int>(record.ccnr_values.size()) != state.shape.k) {
    mismatch("CCNR value list has wrong length");
  } else {
    for (int p = 0; p < state.shape.k; ++p) {
      double value = ccnr_value(state, {p});
      if (std::abs(value - record.ccnr_values[p]) > tolerance)
        mismatch("CCNR for cut {" + std::to_string(p) + "} recomputed as " +
                 std::to_string(value) + ", record says " +
                 std::to_string(record.ccnr_values[p]));
    }
  }

  bool ccnr_flag = false;
  for (double value : record.ccnr_values) ccnr_flag = ccnr_flag || value > 1.0 + kCcnrSlack;
  if (ccnr_flag != record.ccnr_flag) mismatch("ccnr_flag inconsistent with stored CCNR values");
  if (record.flagged && !(record.ccnr_flag || record.extraction_failed))
    mismatch("flagged record carries no detector signal");

  report.pass = report.mismatches.empty();
  return report;
}

}  // namespace bosesep
