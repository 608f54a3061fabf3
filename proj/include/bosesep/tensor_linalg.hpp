// tensor_linalg.hpp
// Dense complex linear algebra and multi-index tensor operations shared by
// every other component: Kronecker products, partial trace/transpose over
// selected parties, Schmidt splits, spectral decompositions, and the
// epsilon-rank that stands in for exact matrix rank in floating point.
//
// Multi-index convention (fixed project-wide): party 0 is the slowest-varying
// index, i.e. the leftmost tensor factor. For letters (l_0, ..., l_{k-1}) the
// flat index is sum_p l_p * n^(k-1-p).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "bosesep/config.hpp"
#include "bosesep/error.hpp"

namespace bosesep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Relative tolerances, chosen for double precision and matrices up to ~10^3.
namespace tol {
inline constexpr double hermiticity = 1e-12;    // ||A - A^dag||_F / max(1, ||A||_F)
inline constexpr double psd_slack = 1e-9;       // negative-eigenvalue slack, relative to lambda_max
inline constexpr double eps_rank_rel = 1e-10;   // eigenvalue counting threshold
inline constexpr double unit_norm = 1e-10;      // |norm - 1| for state vectors
inline constexpr double trace_one = 1e-9;       // |Tr rho - 1|
inline constexpr double support = 1e-9;         // symmetric-support residual
inline constexpr double range_membership = 1e-8;  // 1 - ||P_range v||^2
}  // namespace tol

// (n, k) system: k parties of local dimension n.
struct SystemShape {
  int n = 0;            // local dimension, >= 2
  int k = 0;            // party count, >= 1
  Index full_dim = 0;   // n^k
  Index sym_dim = 0;    // I^k_n = C(n+k-1, k)

  static SystemShape make(int n, int k);

  friend bool operator==(const SystemShape& a, const SystemShape& b) {
    return a.n == b.n && a.k == b.k;
  }
};

// Exact binomial C(n, k) in 64-bit, multiplicative form; Error{SizeLimit} on overflow.
std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k);

struct EigenSystem {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, A = V diag(w) V^dag
};

struct SchmidtDecomposition {
  RealVector coefficients;  // nonnegative, descending, sum of squares = 1
  ComplexMatrix left;       // dim_a x r, orthonormal columns
  ComplexMatrix right;      // dim_b x r, orthonormal columns
};

bool is_hermitian(const ComplexMatrix& a, double rel_tol = tol::hermiticity);

// Flat index <-> per-party letters under the project-wide convention above.
std::vector<int> decode_index(Index index, const SystemShape& shape);
Index encode_index(const std::vector<int>& letters, const SystemShape& shape);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// |f>^(tensor k), length n^k; no normalization applied.
ComplexVector tensor_power(const ComplexVector& f, int k);

// Full spectral decomposition of a Hermitian matrix (eigenvalues ascending).
EigenSystem hermitian_eigensystem(const ComplexMatrix& a);

// Eigenvalues only, ascending. Cheaper than hermitian_eigensystem; used by
// eps_rank and the PPT tests where eigenvectors are never needed.
RealVector hermitian_eigenvalues(const ComplexMatrix& a);

// Number of eigenvalues above rel_tol * lambda_max (0 if lambda_max <= 0).
// Requires A Hermitian and PSD within rel_tol slack; Error{NotPSD} otherwise.
Index eps_rank(const ComplexMatrix& a, double rel_tol = tol::eps_rank_rel);

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SystemShape& shape,
                            const std::vector<int>& parties);

// Transposes the row/column sub-indices of the listed parties. Applying the
// same party set twice returns the input bit-exactly (pure entry permutation).
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const SystemShape& shape,
                                const std::vector<int>& parties);

SchmidtDecomposition schmidt_decompose(const ComplexVector& psi, Index dim_a, Index dim_b);

double trace_norm(const ComplexMatrix& a);

// (1/2) ||a - b||_1
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest lambda with rho - lambda |v><v| still PSD, for unit v in range(rho):
// lambda = 1 / <v| rho^+ |v> with the pseudo-inverse taken on the range.
// The subtraction reduces eps_rank by exactly one. Error{NotInRange} if the
// squared out-of-range component of v exceeds tol::range_membership.
double psd_subtraction_weight(const ComplexMatrix& rho, const ComplexVector& v);

}  // namespace bosesep
