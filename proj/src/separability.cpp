#include "bosesep/separability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bosesep/bosonic_space.hpp"

namespace bosesep {

namespace {

std::vector<std::vector<int>> single_party_cuts(int k) {
  std::vector<std::vector<int>> cuts;
  cuts.reserve(k);
  for (int p = 0; p < k; ++p) cuts.push_back({p});
  return cuts;
}

// Contract w in (C^n)^(tensor m) against conj(f) on every party except the
// slowest; leaves a vector in C^n. Assumes the project-wide index order.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> contract_all_but_first(
    const Eigen::Vector<Scalar, Eigen::Dynamic>& w,
    const Eigen::Vector<Scalar, Eigen::Dynamic>& f) {
  const Index n = f.size();
  Eigen::Vector<Scalar, Eigen::Dynamic> cur = w;
  Eigen::Vector<Scalar, Eigen::Dynamic> fc = f.conjugate();
  while (cur.size() > n) {
    Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        view(cur.data(), cur.size() / n, n);
    cur = view * fc;
  }
  return cur;
}

template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> tensor_power_t(
    const Eigen::Vector<Scalar, Eigen::Dynamic>& f, int k) {
  Eigen::Vector<Scalar, Eigen::Dynamic> out = f;
  const Index n = f.size();
  for (int step = 1; step < k; ++step) {
    Eigen::Vector<Scalar, Eigen::Dynamic> next(out.size() * n);
    for (Index i = 0; i < out.size(); ++i) next.segment(i * n, n) = out(i) * f;
    out.swap(next);
  }
  return out;
}

using LongComplex = std::complex<long double>;
using LongMatrix = Eigen::Matrix<LongComplex, Eigen::Dynamic, Eigen::Dynamic>;
using LongVector = Eigen::Vector<LongComplex, Eigen::Dynamic>;

struct PolishedProduct {
  ComplexVector f;         // refined local vector
  ComplexVector in_range;  // unit vector exactly inside range(residual)
};

// Extended-precision refinement of a found product vector. The double
// eigensolver's range projector carries an error of order eps/gap, and the
// certificate error per term is sqrt(1 - g), so a double-only pipeline
// bottoms out near 1e-7 trace distance when the smallest mixture weight is
// small. Redoing the range projection and a few power iterations in long
// double pushes the floor well below the 1e-9 residual target.
PolishedProduct polish_product_vector(const ComplexMatrix& residual, const ComplexVector& f0,
                                      const SystemShape& shape, int iters) {
  LongMatrix r(residual.rows(), residual.cols());
  for (Index i = 0; i < residual.rows(); ++i)
    for (Index j = 0; j < residual.cols(); ++j)
      r(i, j) = LongComplex(residual(i, j).real(), residual(i, j).imag());
  r = (r + r.adjoint()).eval() / 2.0L;

  Eigen::SelfAdjointEigenSolver<LongMatrix> solver(r);
  const long double lambda_max = solver.eigenvalues()(solver.eigenvalues().size() - 1);
  const long double cut = tol::eps_rank_rel * std::max<long double>(1.0L, lambda_max);
  LongMatrix q = LongMatrix::Zero(r.rows(), r.cols());
  for (Index i = 0; i < solver.eigenvalues().size(); ++i)
    if (solver.eigenvalues()(i) > cut)
      q.noalias() +=
          solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();

  LongVector f(f0.size());
  for (Index i = 0; i < f0.size(); ++i) f(i) = LongComplex(f0(i).real(), f0(i).imag());
  f /= f.norm();

  long double g_prev = -1.0L;
  LongVector w;
  for (int iter = 0; iter < iters; ++iter) {
    LongVector power = tensor_power_t<LongComplex>(f, shape.k);
    w = q * power;
    long double g = power.dot(w).real();
    if (std::abs(g - g_prev) < 1e-30L) break;
    g_prev = g;
    LongVector next = contract_all_but_first<LongComplex>(w, f);
    long double norm = next.norm();
    if (norm <= 0.0L) break;
    f = next / norm;
  }

  LongVector snapped = q * tensor_power_t<LongComplex>(f, shape.k);
  snapped /= snapped.norm();

  PolishedProduct out;
  out.f.resize(f.size());
  for (Index i = 0; i < f.size(); ++i)
    out.f(i) = Complex(static_cast<double>(f(i).real()), static_cast<double>(f(i).imag()));
  out.f /= out.f.norm();
  out.in_range.resize(snapped.size());
  for (Index i = 0; i < snapped.size(); ++i)
    out.in_range(i) = Complex(static_cast<double>(snapped(i).real()),
                              static_cast<double>(snapped(i).imag()));
  out.in_range /= out.in_range.norm();
  return out;
}

}  // namespace

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Separable: return "Separable";
    case Verdict::EntangledNPT: return "EntangledNPT";
    case Verdict::Undetermined: return "Undetermined";
    case Verdict::InvalidInput: return "InvalidInput";
  }
  return "InvalidInput";
}

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::RT1: return "R-T1";
    case Rule::RT2: return "R-T2";
    case Rule::R2B: return "R-2B";
    case Rule::R3Q: return "R-3Q";
    case Rule::RKQ: return "R-KQ";
    case Rule::RNPT: return "R-NPT";
    case Rule::RNone: return "R-NONE";
  }
  return "R-NONE";
}

std::optional<Verdict> verdict_from_string(const std::string& text) {
  for (Verdict v : {Verdict::Separable, Verdict::EntangledNPT, Verdict::Undetermined,
                    Verdict::InvalidInput})
    if (text == to_string(v)) return v;
  return std::nullopt;
}

std::optional<Rule> rule_from_string(const std::string& text) {
  for (Rule r : {Rule::RT1, Rule::RT2, Rule::R2B, Rule::R3Q, Rule::RKQ, Rule::RNPT, Rule::RNone})
    if (text == to_string(r)) return r;
  return std::nullopt;
}

std::vector<PtCutResult> ppt_check(const StateRecord& state,
                                   const std::vector<std::vector<int>>& cuts) {
  const ComplexMatrix full = full_matrix(state);
  const std::vector<std::vector<int>> chosen =
      cuts.empty() ? single_party_cuts(state.shape.k) : cuts;

  std::vector<PtCutResult> results;
  results.reserve(chosen.size());
  for (const std::vector<int>& cut : chosen) {
    RealVector w = hermitian_eigenvalues(partial_transpose(full, state.shape, cut));
    PtCutResult r;
    r.cut = cut;
    r.min_eigenvalue = w(0);
    r.pass = w(0) >= -tol::psd_slack * std::max(1.0, w(w.size() - 1));
    results.push_back(std::move(r));
  }
  return results;
}

RankThreshold rank_threshold(const SystemShape& shape) {
  if (shape.k < 2)
    fail(ErrorCode::Unsupported, "rank thresholds are defined for k >= 2");
  const Index n = shape.n;
  if (shape.k == 2) {
    Index two_boson = n * (n + 1) / 2 - 2;
    return {std::max(n, two_boson), Rule::R2B};
  }
  if (shape.k == 3) {
    if (n == 2) return {shape.sym_dim, Rule::R3Q};  // 4: every PPT state
    return {n * n, Rule::RT1};
  }
  if (n == 2) return {shape.sym_dim - 1, Rule::RKQ};  // k: all but maximal rank
  return {static_cast<Index>(bosonic_dim(shape.n, shape.k - 1)), Rule::RT2};
}

RankWindow bound_window(const SystemShape& shape) {
  RankThreshold th = rank_threshold(shape);
  RankWindow window;
  window.lo = th.threshold + 1;
  window.hi = shape.sym_dim;
  window.shape = shape;
  return window;
}

SeparabilityReport classify(const StateRecord& state) {
  SeparabilityReport report;

  if (auto violation = state.invariant_violation()) {
    report.verdict = Verdict::InvalidInput;
    report.notes = *violation;
    return report;
  }

  Index rank = 0;
  try {
    const ComplexMatrix sym =
        state.basis_tag == "symmetric" ? state.matrix : compress(state.matrix, state.shape);
    rank = eps_rank(sym);
  } catch (const Error& e) {
    report.verdict = Verdict::InvalidInput;
    report.notes = e.what();
    return report;
  }
  report.rank = rank;

  std::vector<PtCutResult> pt = ppt_check(state);
  bool all_pass = true;
  for (const PtCutResult& cut : pt) {
    report.min_pt_eigenvalue_per_cut.push_back(cut.min_eigenvalue);
    all_pass = all_pass && cut.pass;
  }

  if (state.shape.k == 1) {
    report.verdict = Verdict::Separable;
    report.rule_fired = Rule::RNone;
    report.threshold_used = state.shape.n;
    report.notes = "single party; trivially separable";
    return report;
  }

  RankThreshold th = rank_threshold(state.shape);
  report.threshold_used = th.threshold;

  if (!all_pass) {
    report.verdict = Verdict::EntangledNPT;
    report.rule_fired = Rule::RNPT;
    report.notes = "negative partial transpose on at least one cut";
    return report;
  }

  if (rank <= th.threshold) {
    report.verdict = Verdict::Separable;
    report.rule_fired = th.rule;
    if (th.rule == Rule::R2B || th.rule == Rule::R3Q || th.rule == Rule::RKQ)
      report.notes = "cited background result for this shape, applied as stated";
    return report;
  }

  report.verdict = Verdict::Undetermined;
  report.rule_fired = Rule::RNone;
  report.window = bound_window(state.shape);
  std::ostringstream notes;
  notes << "PPT on every cut but rank " << rank << " exceeds the separability threshold "
        << th.threshold << " (" << to_string(th.rule) << "); any PPT entangled state of this "
        << "shape must have rank in [" << report.window->lo << ", " << report.window->hi
        << "]. Candidate status only; no entanglement is asserted.";
  report.notes = notes.str();
  return report;
}

ProductVectorResult find_symmetric_product_in_range(const ComplexMatrix& range_projector,
                                                    const SystemShape& shape, Seed seed,
                                                    const ProductSearchConfig& config) {
  if (range_projector.rows() != shape.full_dim || range_projector.cols() != shape.full_dim)
    fail(ErrorCode::ShapeError, "projector does not match the shape's full dimension");

  ProductVectorResult best;
  best.overlap = -1.0;

  for (int restart = 0; restart < config.restarts; ++restart) {
    RandomStream rng(seed.substream(restart));
    ComplexVector f = rng.haar_unit(shape.n);
    double g = 0.0;
    double g_prev = -1.0;
    ComplexVector best_f = f;
    double best_g = -1.0;

    for (int iter = 0; iter < config.max_iters; ++iter) {
      ComplexVector power = tensor_power(f, shape.k);
      ComplexVector w = range_projector * power;
      g = std::real(power.dot(w));
      if (g > best_g) {
        best_g = g;
        best_f = f;
      }
      if (std::abs(g - g_prev) < config.delta_tol) break;
      g_prev = g;

      ComplexVector next = contract_all_but_first(w, f);
      double norm = next.norm();
      if (norm < 1e-300) {
        f = rng.haar_unit(shape.n);  // landed in the kernel; restart within budget
        g_prev = -1.0;
        continue;
      }
      f = next / norm;
    }

    if (best_g > best.overlap) {
      best.overlap = best_g;
      best.f = best_f;
    }
    if (1.0 - best.overlap < config.early_exit_gap) break;
  }

  best.found = best.overlap >= 1.0 - tol::range_membership;
  return best;
}

Certificate extract_certificate(const StateRecord& state, Seed seed,
                                const ExtractionConfig& config) {
  SeparabilityReport report = classify(state);
  if (report.verdict != Verdict::Separable && !config.force)
    fail(ErrorCode::Precondition,
         std::string("state classifies as ") + to_string(report.verdict) +
             "; extraction requires the force flag for best-effort attempts");

  const ComplexMatrix rho = full_matrix(state);
  ComplexMatrix residual = rho;
  Certificate cert;
  cert.shape = state.shape;
  const int term_budget = static_cast<int>(state.shape.sym_dim) + 16;

  for (int round = 0;; ++round) {
    const double remaining = std::real(residual.trace());
    if (remaining < config.residual_trace_tol) break;
    if (round >= term_budget)
      fail(ErrorCode::ExtractionFailed,
           "term budget exhausted with residual trace " + std::to_string(remaining));

    EigenSystem es = hermitian_eigensystem(residual);
    const double lambda_max = es.eigenvalues(es.eigenvalues.size() - 1);
    if (lambda_max <= 0.0) break;
    const double cut = tol::eps_rank_rel * std::max(1.0, lambda_max);
    ComplexMatrix range_projector = ComplexMatrix::Zero(residual.rows(), residual.cols());
    for (Index i = 0; i < es.eigenvalues.size(); ++i)
      if (es.eigenvalues(i) > cut)
        range_projector.noalias() += es.eigenvectors.col(i) * es.eigenvectors.col(i).adjoint();

    ProductVectorResult found =
        find_symmetric_product_in_range(range_projector, state.shape, seed.substream(round),
                                        config.search);
    if (!found.found)
      fail(ErrorCode::ExtractionFailed,
           "no product vector found in the residual range (best overlap " +
               std::to_string(found.overlap) + ", residual trace " +
               std::to_string(remaining) + ")");

    // Subtract along a unit vector exactly inside the range: the out-of-range
    // component of a raw f^(tensor k) (norm ~ sqrt(1-g)) would leak a
    // negative eigenvalue of order weight * sqrt(1-g) into the residual and
    // spoil the exact rank drop. The certificate stores the polished f; any
    // residual mismatch shows up honestly in the reported trace distance.
    PolishedProduct polished =
        polish_product_vector(residual, found.f, state.shape, config.search.max_iters);
    const ComplexVector& v = polished.in_range;
    double weight = 0.0;
    try {
      weight = psd_subtraction_weight(residual, v);
    } catch (const Error& e) {
      fail(ErrorCode::ExtractionFailed, std::string("subtraction step failed: ") + e.what());
    }
    residual.noalias() -= weight * (v * v.adjoint());
    cert.terms.push_back({weight, polished.f});
  }

  if (cert.terms.empty())
    fail(ErrorCode::ExtractionFailed, "state has no extractable weight");

  double total = 0.0;
  for (const CertificateTerm& term : cert.terms) total += term.weight;
  for (CertificateTerm& term : cert.terms) term.weight /= total;
  cert.reconstruction_trace_distance = trace_distance(cert.reconstruct_full(), rho);
  return cert;
}

double ccnr_value(const StateRecord& state, const std::vector<int>& cut) {
  const SystemShape& shape = state.shape;
  std::vector<int> a_parties = cut;
  std::sort(a_parties.begin(), a_parties.end());
  a_parties.erase(std::unique(a_parties.begin(), a_parties.end()), a_parties.end());
  for (int p : a_parties)
    if (p < 0 || p >= shape.k) fail(ErrorCode::IndexError, "party index outside 0..k-1");
  if (a_parties.empty() || static_cast<int>(a_parties.size()) == shape.k)
    fail(ErrorCode::IndexError, "cut must be a nonempty proper subset of the parties");

  std::vector<int> b_parties;
  for (int p = 0; p < shape.k; ++p)
    if (!std::binary_search(a_parties.begin(), a_parties.end(), p)) b_parties.push_back(p);

  Index dim_a = 1, dim_b = 1;
  for (size_t i = 0; i < a_parties.size(); ++i) dim_a *= shape.n;
  for (size_t i = 0; i < b_parties.size(); ++i) dim_b *= shape.n;

  const ComplexMatrix rho = full_matrix(state);
  auto split = [&](Index flat, Index& a_sub, Index& b_sub) {
    std::vector<int> letters = decode_index(flat, shape);
    a_sub = 0;
    for (int p : a_parties) a_sub = a_sub * shape.n + letters[p];
    b_sub = 0;
    for (int p : b_parties) b_sub = b_sub * shape.n + letters[p];
  };

  // Realignment: R[(i,i'),(j,j')] = rho[(i,j),(i',j')] with i over the cut.
  ensure_within_size_limit(dim_a * dim_a, dim_b * dim_b);
  ComplexMatrix realigned(dim_a * dim_a, dim_b * dim_b);
  for (Index r = 0; r < shape.full_dim; ++r) {
    Index i = 0, j = 0;
    split(r, i, j);
    for (Index c = 0; c < shape.full_dim; ++c) {
      Index ip = 0, jp = 0;
      split(c, ip, jp);
      realigned(i * dim_a + ip, j * dim_b + jp) = rho(r, c);
    }
  }
  return trace_norm(realigned);
}

}  // namespace bosesep
