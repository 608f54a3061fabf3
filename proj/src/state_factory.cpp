#include "bosesep/state_factory.hpp"

#include <cmath>
#include <sstream>

namespace bosesep {

namespace {

std::string seed_tag(Seed seed) {
  std::ostringstream out;
  out << RandomStream::algorithm << " master=" << seed.master << " stream=" << seed.stream;
  return out.str();
}

Index expected_dim(const StateRecord& state) {
  return state.basis_tag == "symmetric" ? state.shape.sym_dim : state.shape.full_dim;
}

}  // namespace

std::optional<std::string> StateRecord::invariant_violation() const {
  if (basis_tag != "full" && basis_tag != "symmetric")
    return "basis tag must be \"full\" or \"symmetric\"";
  const Index d = expected_dim(*this);
  if (matrix.rows() != d || matrix.cols() != d)
    return "matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
           ", expected " + std::to_string(d) + "x" + std::to_string(d);
  if (!is_hermitian(matrix)) return "matrix is not Hermitian within tolerance";
  const double trace = matrix.real().trace();
  if (std::abs(trace - 1.0) > tol::trace_one)
    return "trace is " + std::to_string(trace) + ", expected 1";
  RealVector w = hermitian_eigenvalues(matrix);
  const double lambda_max = w(w.size() - 1);
  if (w(0) < -tol::psd_slack * std::max(1.0, lambda_max))
    return "matrix is not PSD, min eigenvalue " + std::to_string(w(0));
  if (basis_tag == "full") {
    double residual = symmetric_support_residual(matrix, shape);
    if (residual > tol::support)
      return "state is not symmetric-supported, residual " + std::to_string(residual);
  }
  return std::nullopt;
}

StateRecord to_full_basis(const StateRecord& state) {
  if (state.basis_tag == "full") return state;
  StateRecord out = state;
  out.basis_tag = "full";
  out.matrix = expand(state.matrix, state.shape);
  return out;
}

StateRecord to_symmetric_basis(const StateRecord& state) {
  if (state.basis_tag == "symmetric") return state;
  StateRecord out = state;
  out.basis_tag = "symmetric";
  out.matrix = compress(state.matrix, state.shape);
  return out;
}

ComplexMatrix full_matrix(const StateRecord& state) {
  if (state.basis_tag == "symmetric") return expand(state.matrix, state.shape);
  return state.matrix;
}

StateRecord product_power(const ComplexVector& f, int k) {
  if (std::abs(f.norm() - 1.0) > tol::unit_norm)
    fail(ErrorCode::NormError, "local vector is not unit norm");
  SystemShape shape = SystemShape::make(static_cast<int>(f.size()), k);
  ComplexVector v = tensor_power(f, k);
  ensure_within_size_limit(shape.full_dim, shape.full_dim);
  StateRecord out;
  out.shape = shape;
  out.basis_tag = "full";
  out.matrix = v * v.adjoint();
  out.provenance = "product_power(n=" + std::to_string(shape.n) + ", k=" + std::to_string(k) + ")";
  return out;
}

StateRecord ghz_like(int n, int k) {
  if (n < 2 || k < 2) fail(ErrorCode::ShapeError, "ghz_like requires n >= 2 and k >= 2");
  SystemShape shape = SystemShape::make(n, k);
  ensure_within_size_limit(shape.full_dim, shape.full_dim);
  ComplexVector psi = ComplexVector::Zero(shape.full_dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int level = 0; level < n; ++level) {
    std::vector<int> letters(k, level);
    psi(encode_index(letters, shape)) = amp;
  }
  StateRecord out;
  out.shape = shape;
  out.basis_tag = "full";
  out.matrix = psi * psi.adjoint();
  out.provenance = "ghz_like(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
  return out;
}

StateRecord dicke_state(const OccupationVector& occ, const SystemShape& shape) {
  ComplexVector psi = dicke_vector(occ, shape);
  ensure_within_size_limit(shape.full_dim, shape.full_dim);
  StateRecord out;
  out.shape = shape;
  out.basis_tag = "full";
  out.matrix = psi * psi.adjoint();
  std::string counts;
  for (size_t i = 0; i < occ.counts.size(); ++i)
    counts += (i ? "," : "") + std::to_string(occ.counts[i]);
  out.provenance = "dicke_state(occ=" + counts + ")";
  return out;
}

StateRecord random_symmetric_pure(const SystemShape& shape, Seed seed) {
  RandomStream rng(seed);
  ComplexVector coords = rng.haar_unit(shape.sym_dim);
  ComplexVector psi = symmetric_isometry(shape).v * coords;
  StateRecord out;
  out.shape = shape;
  out.basis_tag = "full";
  out.matrix = psi * psi.adjoint();
  out.provenance = "random_symmetric_pure(" + seed_tag(seed) + ")";
  return out;
}

StateRecord random_separable_mixture(const SystemShape& shape, int r, Seed seed) {
  if (r < 1) fail(ErrorCode::ShapeError, "mixture needs at least one term");
  constexpr int kMaxTerms = 4096;
  if (r > kMaxTerms) fail(ErrorCode::RankTooLarge, "mixture term count exceeds configured max");
  ensure_within_size_limit(shape.full_dim, shape.full_dim);

  RandomStream rng(seed);
  RealVector weights = rng.dirichlet_uniform(r);
  Certificate cert;
  cert.shape = shape;
  ComplexMatrix rho = ComplexMatrix::Zero(shape.full_dim, shape.full_dim);
  for (int i = 0; i < r; ++i) {
    ComplexVector f = rng.haar_unit(shape.n);
    ComplexVector v = tensor_power(f, shape.k);
    rho.noalias() += weights(i) * (v * v.adjoint());
    cert.terms.push_back({weights(i), std::move(f)});
  }
  cert.reconstruction_trace_distance = 0.0;  // the construction itself

  StateRecord out;
  out.shape = shape;
  out.basis_tag = "full";
  out.matrix = std::move(rho);
  out.provenance = "random_separable_mixture(r=" + std::to_string(r) + ", " + seed_tag(seed) + ")";
  out.ground_truth = std::move(cert);
  return out;
}

StateRecord random_rank_r_symmetric(const SystemShape& shape, int r, Seed seed) {
  if (r < 1) fail(ErrorCode::ShapeError, "rank must be at least 1");
  if (r > shape.sym_dim)
    fail(ErrorCode::RankTooLarge,
         "rank " + std::to_string(r) + " exceeds sym_dim " + std::to_string(shape.sym_dim));
  RandomStream rng(seed);
  RealVector weights = rng.dirichlet_uniform(r);
  ComplexMatrix rho_sym = ComplexMatrix::Zero(shape.sym_dim, shape.sym_dim);
  for (int i = 0; i < r; ++i) {
    ComplexVector c = rng.haar_unit(shape.sym_dim);
    rho_sym.noalias() += weights(i) * (c * c.adjoint());
  }
  StateRecord out;
  out.shape = shape;
  out.basis_tag = "full";
  out.matrix = expand(rho_sym, shape);
  out.provenance = "random_rank_r_symmetric(r=" + std::to_string(r) + ", " + seed_tag(seed) + ")";
  return out;
}

}  // namespace bosesep
