// bosonic_space.hpp
// The symmetric (bosonic) subspace of (C^n)^(tensor k): occupation-number
// basis, Dicke vectors, the symmetrizer projector, and the isometry between
// symmetric coordinates (dimension I^k_n) and the full tensor space.
//
// Basis order is fixed forever: occupation vectors in lexicographically
// descending order, starting at (k, 0, ..., 0). File formats depend on it.

#pragma once

#include <cstdint>
#include <vector>

#include "bosesep/tensor_linalg.hpp"

namespace bosesep {

// Multiset (m_0, ..., m_{n-1}) with sum m_i = k: which local level each of
// the k parties occupies, forgetting order.
struct OccupationVector {
  std::vector<int> counts;

  int total() const;
  friend bool operator==(const OccupationVector& a, const OccupationVector& b) {
    return a.counts == b.counts;
  }
};

// I^k_n = C(n+k-1, k), exact; Error{SizeLimit} on 64-bit overflow.
std::uint64_t bosonic_dim(int n, int k);

// All compositions of k into n parts, lexicographically descending.
std::vector<OccupationVector> occupation_basis(int n, int k);

// Normalized symmetric superposition of all distinct letter arrangements
// with the given occupation counts; unit vector in the full space.
ComplexVector dicke_vector(const OccupationVector& occ, const SystemShape& shape);

// U_pi acting on the full space: letters of each basis vector are permuted
// so that position p receives the letter previously at position perm[p].
ComplexMatrix permutation_operator(const std::vector<int>& perm, const SystemShape& shape);

struct SymmetricIsometry {
  ComplexMatrix v;  // full_dim x sym_dim, columns are Dicke vectors in basis order
  SystemShape shape;
};

SymmetricIsometry symmetric_isometry(const SystemShape& shape);

// P = (1/k!) sum over all k! permutation operators; for k! > 120 built as
// V V^dag from the isometry instead (the two agree to 1e-12 where both run).
ComplexMatrix symmetrizer(const SystemShape& shape);

// ||P rho P - rho||_F; callers treat <= 1e-9 as symmetric-supported.
double symmetric_support_residual(const ComplexMatrix& rho, const SystemShape& shape);
double symmetric_support_residual(const ComplexMatrix& rho, const SymmetricIsometry& iso);

// rho_sym = V^dag rho V. Requires symmetric support within tolerance;
// Error{NotSymmetricSupport} otherwise.
ComplexMatrix compress(const ComplexMatrix& rho_full, const SymmetricIsometry& iso);
ComplexMatrix compress(const ComplexMatrix& rho_full, const SystemShape& shape);

// rho_full = V rho_sym V^dag.
ComplexMatrix expand(const ComplexMatrix& rho_sym, const SymmetricIsometry& iso);
ComplexMatrix expand(const ComplexMatrix& rho_sym, const SystemShape& shape);

}  // namespace bosesep
