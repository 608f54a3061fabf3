#include "bosesep/tensor_linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace bosesep {

namespace {

// Checked n^k in 64-bit; Error{SizeLimit} on overflow.
std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > UINT64_MAX / base)
      fail(ErrorCode::SizeLimit, "integer overflow in n^k");
    out *= base;
  }
  return out;
}

std::vector<int> checked_party_set(const std::vector<int>& parties, int k) {
  std::vector<int> sorted = parties;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int p : sorted)
    if (p < 0 || p >= k)
      fail(ErrorCode::IndexError,
           "party index " + std::to_string(p) + " outside 0.." + std::to_string(k - 1));
  return sorted;
}

void require_square(const ComplexMatrix& rho, const SystemShape& shape) {
  if (rho.rows() != shape.full_dim || rho.cols() != shape.full_dim)
    fail(ErrorCode::ShapeError,
         "matrix is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
             ", expected " + std::to_string(shape.full_dim) + "^2");
}

}  // namespace

std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    std::uint64_t num = n - k + i;
    if (out > UINT64_MAX / num)
      fail(ErrorCode::SizeLimit, "integer overflow in binomial coefficient");
    out = out * num / i;  // exact at every step: C(n-k+i, i) is integral
  }
  return out;
}

SystemShape SystemShape::make(int n, int k) {
  if (n < 2) fail(ErrorCode::ShapeError, "local dimension must be >= 2");
  if (k < 1) fail(ErrorCode::ShapeError, "party count must be >= 1");
  SystemShape shape;
  shape.n = n;
  shape.k = k;
  std::uint64_t full = checked_pow(static_cast<std::uint64_t>(n), k);
  std::uint64_t sym = checked_binomial(static_cast<std::uint64_t>(n) + k - 1, k);
  if (full > static_cast<std::uint64_t>(std::numeric_limits<Index>::max()))
    fail(ErrorCode::SizeLimit, "n^k does not fit an index type");
  shape.full_dim = static_cast<Index>(full);
  shape.sym_dim = static_cast<Index>(sym);
  return shape;
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() <= rel_tol * scale;
}

std::vector<int> decode_index(Index index, const SystemShape& shape) {
  std::vector<int> letters(shape.k);
  for (int p = shape.k - 1; p >= 0; --p) {
    letters[p] = static_cast<int>(index % shape.n);
    index /= shape.n;
  }
  return letters;
}

Index encode_index(const std::vector<int>& letters, const SystemShape& shape) {
  Index index = 0;
  for (int p = 0; p < shape.k; ++p) index = index * shape.n + letters[p];
  return index;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ensure_within_size_limit(a.rows() * b.rows(), a.cols() * b.cols());
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector tensor_power(const ComplexVector& f, int k) {
  if (k < 1) fail(ErrorCode::ShapeError, "tensor power requires k >= 1");
  const Index n = f.size();
  std::uint64_t total = checked_pow(static_cast<std::uint64_t>(n), k);
  ensure_within_size_limit(static_cast<std::int64_t>(total), 1);
  ComplexVector out = f;
  for (int step = 1; step < k; ++step) {
    ComplexVector next(out.size() * n);
    for (Index i = 0; i < out.size(); ++i)
      next.segment(i * n, n) = out(i) * f;
    out.swap(next);
  }
  return out;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& a) {
  if (!is_hermitian(a))
    fail(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::NumericalFailure, "eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  if (!is_hermitian(a))
    fail(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::NumericalFailure, "eigensolver did not converge");
  return solver.eigenvalues();
}

Index eps_rank(const ComplexMatrix& a, double rel_tol) {
  RealVector w = hermitian_eigenvalues(a);
  if (w.size() == 0) return 0;
  const double lambda_max = w(w.size() - 1);
  if (w(0) < -rel_tol * std::max(1.0, lambda_max))
    fail(ErrorCode::NotPSD,
         "negative eigenvalue " + std::to_string(w(0)) + " below tolerance");
  if (lambda_max <= 0.0) return 0;
  // Same max(1, lambda_max) scale as the NotPSD slack, so that residuals of
  // exact subtractions (all eigenvalues at noise level) report rank 0.
  const double cut = rel_tol * std::max(1.0, lambda_max);
  Index rank = 0;
  for (Index i = 0; i < w.size(); ++i)
    if (w(i) > cut) ++rank;
  return rank;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SystemShape& shape,
                            const std::vector<int>& parties) {
  require_square(rho, shape);
  std::vector<int> traced = checked_party_set(parties, shape.k);
  std::vector<int> kept;
  for (int p = 0; p < shape.k; ++p)
    if (!std::binary_search(traced.begin(), traced.end(), p)) kept.push_back(p);

  Index kept_dim = 1, traced_dim = 1;
  for (size_t i = 0; i < kept.size(); ++i) kept_dim *= shape.n;
  for (size_t i = 0; i < traced.size(); ++i) traced_dim *= shape.n;

  // Strides of each party in the flat index (party 0 slowest).
  std::vector<Index> stride(shape.k);
  Index s = 1;
  for (int p = shape.k - 1; p >= 0; --p) {
    stride[p] = s;
    s *= shape.n;
  }

  auto offset = [&](const std::vector<int>& which, Index sub) {
    Index off = 0;
    for (int i = static_cast<int>(which.size()) - 1; i >= 0; --i) {
      off += (sub % shape.n) * stride[which[i]];
      sub /= shape.n;
    }
    return off;
  };

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (Index rk = 0; rk < kept_dim; ++rk) {
    Index row_base = offset(kept, rk);
    for (Index ck = 0; ck < kept_dim; ++ck) {
      Index col_base = offset(kept, ck);
      Complex acc = 0.0;
      for (Index t = 0; t < traced_dim; ++t) {
        Index d = offset(traced, t);
        acc += rho(row_base + d, col_base + d);
      }
      out(rk, ck) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const SystemShape& shape,
                                const std::vector<int>& parties) {
  require_square(rho, shape);
  std::vector<int> swap = checked_party_set(parties, shape.k);

  std::vector<Index> stride(shape.k);
  Index s = 1;
  for (int p = shape.k - 1; p >= 0; --p) {
    stride[p] = s;
    s *= shape.n;
  }

  ComplexMatrix out(shape.full_dim, shape.full_dim);
  std::vector<int> row_letters(shape.k), col_letters(shape.k);
  for (Index r = 0; r < shape.full_dim; ++r) {
    Index rr = r;
    for (int p = shape.k - 1; p >= 0; --p) {
      row_letters[p] = static_cast<int>(rr % shape.n);
      rr /= shape.n;
    }
    for (Index c = 0; c < shape.full_dim; ++c) {
      Index cc = c;
      for (int p = shape.k - 1; p >= 0; --p) {
        col_letters[p] = static_cast<int>(cc % shape.n);
        cc /= shape.n;
      }
      Index r2 = r, c2 = c;
      for (int p : swap) {
        r2 += (col_letters[p] - row_letters[p]) * stride[p];
        c2 += (row_letters[p] - col_letters[p]) * stride[p];
      }
      out(r2, c2) = rho(r, c);
    }
  }
  return out;
}

SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, Index dim_a, Index dim_b) {
  if (dim_a < 1 || dim_b < 1 || psi.size() != dim_a * dim_b)
    fail(ErrorCode::ShapeError, "vector length does not factor as dim_a * dim_b");
  if (std::abs(psi.norm() - 1.0) > tol::unit_norm)
    fail(ErrorCode::NormError, "input vector is not unit norm");

  // psi[(i,j)] = M(i,j), M = U S V^dag, so psi = sum_r s_r |u_r>|conj(v_r)>.
  ComplexMatrix m(dim_a, dim_b);
  for (Index i = 0; i < dim_a; ++i)
    for (Index j = 0; j < dim_b; ++j) m(i, j) = psi(i * dim_b + j);

  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  return out;
}

double trace_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 0.5 * trace_norm(a - b);
}

double psd_subtraction_weight(const ComplexMatrix& rho, const ComplexVector& v) {
  if (v.size() != rho.rows())
    fail(ErrorCode::ShapeError, "vector length does not match matrix dimension");
  EigenSystem es = hermitian_eigensystem(rho);
  const double lambda_max = es.eigenvalues(es.eigenvalues.size() - 1);
  if (es.eigenvalues(0) < -tol::psd_slack * std::max(1.0, lambda_max))
    fail(ErrorCode::NotPSD, "matrix is not PSD within tolerance");
  if (lambda_max <= 0.0) fail(ErrorCode::NotInRange, "matrix is zero");

  const double cut = tol::eps_rank_rel * std::max(1.0, lambda_max);
  double in_range = 0.0;   // ||P_range v||^2
  double inv_quad = 0.0;   // <v| rho^+ |v>
  for (Index i = 0; i < es.eigenvalues.size(); ++i) {
    if (es.eigenvalues(i) <= cut) continue;
    double overlap = std::norm(es.eigenvectors.col(i).dot(v));
    in_range += overlap;
    inv_quad += overlap / es.eigenvalues(i);
  }
  const double residual = 1.0 - in_range / v.squaredNorm();
  if (residual > tol::range_membership)
    fail(ErrorCode::NotInRange,
         "vector lies outside range(rho), squared residual " + std::to_string(residual));
  return 1.0 / inv_quad;
}

}  // namespace bosesep
