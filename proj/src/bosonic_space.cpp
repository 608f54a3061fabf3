#include "bosesep/bosonic_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bosesep {

namespace {

constexpr std::uint64_t kPermutationSumCutoff = 120;  // k! above this uses V V^dag

std::uint64_t factorial(int k) {
  std::uint64_t out = 1;
  for (int i = 2; i <= k; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

void require_occupation(const OccupationVector& occ, const SystemShape& shape) {
  if (static_cast<int>(occ.counts.size()) != shape.n)
    fail(ErrorCode::ShapeError, "occupation vector has wrong number of levels");
  int total = 0;
  for (int m : occ.counts) {
    if (m < 0) fail(ErrorCode::ShapeError, "negative occupation count");
    total += m;
  }
  if (total != shape.k)
    fail(ErrorCode::ShapeError, "occupation counts do not sum to the party count");
}

}  // namespace

int OccupationVector::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

std::uint64_t bosonic_dim(int n, int k) {
  if (n < 1) fail(ErrorCode::ShapeError, "local dimension must be >= 1");
  if (k < 0) fail(ErrorCode::ShapeError, "party count must be >= 0");
  return checked_binomial(static_cast<std::uint64_t>(n) + k - 1, k);
}

std::vector<OccupationVector> occupation_basis(int n, int k) {
  std::uint64_t count = bosonic_dim(n, k);
  ensure_within_size_limit(static_cast<std::int64_t>(count), n);

  std::vector<OccupationVector> basis;
  basis.reserve(count);
  std::vector<int> current(n, 0);
  // Descending lexicographic order falls out of filling the leftmost level
  // with the largest remaining count first.
  auto emit = [&](auto&& self, int level, int remaining) -> void {
    if (level == n - 1) {
      current[level] = remaining;
      basis.push_back({current});
      return;
    }
    for (int m = remaining; m >= 0; --m) {
      current[level] = m;
      self(self, level + 1, remaining - m);
    }
  };
  emit(emit, 0, k);
  return basis;
}

ComplexVector dicke_vector(const OccupationVector& occ, const SystemShape& shape) {
  require_occupation(occ, shape);
  ensure_within_size_limit(shape.full_dim, 1);

  // Letter word sorted ascending, then all distinct arrangements.
  std::vector<int> word;
  word.reserve(shape.k);
  for (int level = 0; level < shape.n; ++level)
    for (int m = 0; m < occ.counts[level]; ++m) word.push_back(level);

  std::vector<Index> indices;
  do {
    indices.push_back(encode_index(word, shape));
  } while (std::next_permutation(word.begin(), word.end()));

  ComplexVector out = ComplexVector::Zero(shape.full_dim);
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(indices.size()));
  for (Index idx : indices) out(idx) = amplitude;
  return out;
}

ComplexMatrix permutation_operator(const std::vector<int>& perm, const SystemShape& shape) {
  if (static_cast<int>(perm.size()) != shape.k)
    fail(ErrorCode::ShapeError, "permutation length does not match party count");
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  for (int p = 0; p < shape.k; ++p)
    if (check[p] != p) fail(ErrorCode::ShapeError, "not a permutation of 0..k-1");

  ensure_within_size_limit(shape.full_dim, shape.full_dim);
  ComplexMatrix u = ComplexMatrix::Zero(shape.full_dim, shape.full_dim);
  std::vector<int> permuted(shape.k);
  for (Index j = 0; j < shape.full_dim; ++j) {
    std::vector<int> letters = decode_index(j, shape);
    for (int p = 0; p < shape.k; ++p) permuted[p] = letters[perm[p]];
    u(encode_index(permuted, shape), j) = 1.0;
  }
  return u;
}

SymmetricIsometry symmetric_isometry(const SystemShape& shape) {
  ensure_within_size_limit(shape.full_dim, shape.sym_dim);
  std::vector<OccupationVector> basis = occupation_basis(shape.n, shape.k);
  ComplexMatrix v(shape.full_dim, shape.sym_dim);
  for (Index col = 0; col < shape.sym_dim; ++col)
    v.col(col) = dicke_vector(basis[col], shape);
  return {std::move(v), shape};
}

ComplexMatrix symmetrizer(const SystemShape& shape) {
  ensure_within_size_limit(shape.full_dim, shape.full_dim);
  const std::uint64_t kfact = factorial(shape.k);
  if (kfact > kPermutationSumCutoff) {
    SymmetricIsometry iso = symmetric_isometry(shape);
    return iso.v * iso.v.adjoint();
  }

  ComplexMatrix p = ComplexMatrix::Zero(shape.full_dim, shape.full_dim);
  const double weight = 1.0 / static_cast<double>(kfact);
  std::vector<int> perm(shape.k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> permuted(shape.k);
  do {
    for (Index j = 0; j < shape.full_dim; ++j) {
      std::vector<int> letters = decode_index(j, shape);
      for (int q = 0; q < shape.k; ++q) permuted[q] = letters[perm[q]];
      p(encode_index(permuted, shape), j) += weight;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return p;
}

double symmetric_support_residual(const ComplexMatrix& rho, const SymmetricIsometry& iso) {
  if (rho.rows() != iso.shape.full_dim || rho.cols() != iso.shape.full_dim)
    fail(ErrorCode::ShapeError, "matrix does not match the shape's full dimension");
  ComplexMatrix projected = iso.v * (iso.v.adjoint() * rho * iso.v) * iso.v.adjoint();
  return (projected - rho).norm();
}

double symmetric_support_residual(const ComplexMatrix& rho, const SystemShape& shape) {
  return symmetric_support_residual(rho, symmetric_isometry(shape));
}

ComplexMatrix compress(const ComplexMatrix& rho_full, const SymmetricIsometry& iso) {
  double residual = symmetric_support_residual(rho_full, iso);
  if (residual > tol::support)
    fail(ErrorCode::NotSymmetricSupport,
         "state is not supported on the symmetric subspace, residual " +
             std::to_string(residual));
  return iso.v.adjoint() * rho_full * iso.v;
}

ComplexMatrix compress(const ComplexMatrix& rho_full, const SystemShape& shape) {
  return compress(rho_full, symmetric_isometry(shape));
}

ComplexMatrix expand(const ComplexMatrix& rho_sym, const SymmetricIsometry& iso) {
  if (rho_sym.rows() != iso.shape.sym_dim || rho_sym.cols() != iso.shape.sym_dim)
    fail(ErrorCode::ShapeError, "matrix does not match the shape's symmetric dimension");
  ensure_within_size_limit(iso.shape.full_dim, iso.shape.full_dim);
  return iso.v * rho_sym * iso.v.adjoint();
}

ComplexMatrix expand(const ComplexMatrix& rho_sym, const SystemShape& shape) {
  return expand(rho_sym, symmetric_isometry(shape));
}

}  // namespace bosesep
