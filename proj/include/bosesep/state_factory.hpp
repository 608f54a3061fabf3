// state_factory.hpp
// Named and seeded-random bosonic states: classifier inputs, test fixtures,
// and hunt seeds. Every generator output is Hermitian, trace one, PSD, and
// supported on the symmetric subspace.

#pragma once

#include <optional>
#include <string>

#include "bosesep/bosonic_space.hpp"
#include "bosesep/certificate.hpp"
#include "bosesep/rng.hpp"
#include "bosesep/tensor_linalg.hpp"

namespace bosesep {

struct StateRecord {
  SystemShape shape;
  std::string basis_tag;     // "full" (n^k) or "symmetric" (I^k_n coordinates)
  ComplexMatrix matrix;
  std::string provenance;    // generator + algorithm + seed, free text

  // Construction ground truth, attached by random_separable_mixture.
  std::optional<Certificate> ground_truth;

  // First violated invariant as text, or nullopt if the record is valid.
  std::optional<std::string> invariant_violation() const;
};

// Representation changes between the full tensor space and symmetric coords.
StateRecord to_full_basis(const StateRecord& state);
StateRecord to_symmetric_basis(const StateRecord& state);

// Full-space matrix regardless of stored basis.
ComplexMatrix full_matrix(const StateRecord& state);

// Density matrix of |f>^(tensor k); f must be unit norm (Error{NormError}).
StateRecord product_power(const ComplexVector& f, int k);

// Projector onto sum_{i<n} |i>^(tensor k) / sqrt(n).
StateRecord ghz_like(int n, int k);

// Projector onto the Dicke vector with the given occupation.
StateRecord dicke_state(const OccupationVector& occ, const SystemShape& shape);

// Haar-random pure state of the symmetric subspace, expanded to full space.
StateRecord random_symmetric_pure(const SystemShape& shape, Seed seed);

// sum_{i<r} p_i (|f_i><f_i|)^(tensor k), Haar-random f_i, Dirichlet weights.
// Carries its construction as a ground-truth Certificate.
StateRecord random_separable_mixture(const SystemShape& shape, int r, Seed seed);

// Mixture of r random symmetric pure states; eps_rank = r generically.
// Error{RankTooLarge} if r exceeds sym_dim.
StateRecord random_rank_r_symmetric(const SystemShape& shape, int r, Seed seed);

}  // namespace bosesep
