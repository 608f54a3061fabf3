// certificate.hpp
// Explicit separable decomposition rho ~ sum_i p_i (|f_i><f_i|)^(tensor k):
// the constructive proof object produced by the extractor and carried as
// ground truth by the separable-mixture generator.

#pragma once

#include <vector>

#include "bosesep/tensor_linalg.hpp"

namespace bosesep {

struct CertificateTerm {
  double weight = 0.0;   // in (0, 1]
  ComplexVector f;       // unit vector in C^n
};

struct Certificate {
  SystemShape shape;
  std::vector<CertificateTerm> terms;           // weights sum to 1
  double reconstruction_trace_distance = 0.0;   // vs. the state it certifies

  // sum_i p_i |f_i^(tensor k)><f_i^(tensor k)| in the full space.
  ComplexMatrix reconstruct_full() const {
    ComplexMatrix rho = ComplexMatrix::Zero(shape.full_dim, shape.full_dim);
    for (const CertificateTerm& term : terms) {
      ComplexVector v = tensor_power(term.f, shape.k);
      rho.noalias() += term.weight * (v * v.adjoint());
    }
    return rho;
  }
};

}  // namespace bosesep
