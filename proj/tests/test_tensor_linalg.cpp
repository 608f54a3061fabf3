#include <doctest.h>

#include <cmath>
#include <complex>

#include "bosesep/rng.hpp"
#include "bosesep/tensor_linalg.hpp"

using namespace bosesep;
using namespace std::complex_literals;

namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// Random Hermitian with entries scaled to O(1).
ComplexMatrix random_hermitian(RandomStream& rng, Index d) {
  ComplexMatrix a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return 0.5 * (a + a.adjoint());
}

// Random rank-r PSD matrix with unit trace.
ComplexMatrix random_psd(RandomStream& rng, Index d, Index r) {
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (Index i = 0; i < r; ++i) {
    ComplexVector x = rng.complex_gaussian(d);
    a.noalias() += x * x.adjoint();
  }
  return a / std::real(a.trace());
}

}  // namespace

TEST_CASE("SystemShape dimensions") {
  SystemShape s = SystemShape::make(3, 3);
  CHECK(s.full_dim == 27);
  CHECK(s.sym_dim == 10);
  CHECK(SystemShape::make(2, 9).full_dim == 512);
  CHECK_THROWS_AS(SystemShape::make(1, 3), Error);
  CHECK_THROWS_AS(SystemShape::make(3, 0), Error);
}

TEST_CASE("kron identity and diagonal cases") {
  ComplexMatrix a(2, 2);
  a << 1.0 + 2.0i, 3.0, -1.0i, 4.0;

  SUBCASE("I2 x A is block diagonal") {
    ComplexMatrix out = kron(ComplexMatrix::Identity(2, 2), a);
    CHECK(out.rows() == 4);
    CHECK((out.block(0, 0, 2, 2) - a).norm() == 0.0);
    CHECK((out.block(2, 2, 2, 2) - a).norm() == 0.0);
    CHECK(out.block(0, 2, 2, 2).norm() == 0.0);
  }

  SUBCASE("A x I1 is A") {
    ComplexMatrix out = kron(a, ComplexMatrix::Identity(1, 1));
    CHECK((out - a).norm() == 0.0);
  }

  SUBCASE("diag(1,2) x diag(3,4) = diag(3,4,6,8)") {
    ComplexMatrix out = kron(diag2(1, 2), diag2(3, 4));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 3;
    expected(1, 1) = 4;
    expected(2, 2) = 6;
    expected(3, 3) = 8;
    CHECK((out - expected).norm() == 0.0);
  }

  SUBCASE("size limit enforced") {
    std::int64_t saved = size_limit();
    set_size_limit(8);
    CHECK_THROWS_AS(kron(a, a), Error);
    set_size_limit(saved);
  }
}

TEST_CASE("hermitian_eigensystem") {
  SUBCASE("identity") {
    EigenSystem es = hermitian_eigensystem(ComplexMatrix::Identity(5, 5));
    for (Index i = 0; i < 5; ++i) CHECK(es.eigenvalues(i) == doctest::Approx(1.0));
  }

  SUBCASE("diagonal sorts ascending") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 3;
    d(1, 1) = 1;
    d(2, 2) = 2;
    EigenSystem es = hermitian_eigensystem(d);
    CHECK(es.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(es.eigenvalues(1) == doctest::Approx(2.0));
    CHECK(es.eigenvalues(2) == doctest::Approx(3.0));
  }

  SUBCASE("pauli-x spectrum is (-1, +1)") {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    EigenSystem es = hermitian_eigensystem(x);
    CHECK(es.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues(1) == doctest::Approx(1.0));
  }

  SUBCASE("rejects non-Hermitian") {
    ComplexMatrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(hermitian_eigensystem(bad), Error);
  }

  SUBCASE("reconstruction on random inputs") {
    RandomStream rng(Seed{11, 0});
    for (int t = 0; t < 20; ++t) {
      ComplexMatrix a = random_hermitian(rng, 8);
      EigenSystem es = hermitian_eigensystem(a);
      ComplexMatrix rebuilt = es.eigenvectors *
                              es.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                              es.eigenvectors.adjoint();
      CHECK((a - rebuilt).norm() <= 1e-9 * std::max(1.0, a.norm()));
      CHECK((es.eigenvectors.adjoint() * es.eigenvectors -
             ComplexMatrix::Identity(8, 8)).norm() <= 1e-10);
    }
  }
}

TEST_CASE("eps_rank") {
  CHECK(eps_rank(ComplexMatrix::Zero(4, 4)) == 0);
  CHECK(eps_rank(ComplexMatrix::Identity(10, 10) / 10.0) == 10);

  SUBCASE("three orthogonal product projectors have rank 3") {
    // (1/3) sum_i |iii><iii| at n=3, k=3
    SystemShape shape = SystemShape::make(3, 3);
    ComplexMatrix rho = ComplexMatrix::Zero(27, 27);
    for (int i = 0; i < 3; ++i) {
      Index idx = encode_index({i, i, i}, shape);
      rho(idx, idx) = 1.0 / 3.0;
    }
    CHECK(eps_rank(rho) == 3);
  }

  SUBCASE("rejects clearly negative matrices") {
    ComplexMatrix neg = -ComplexMatrix::Identity(3, 3);
    CHECK_THROWS_AS(eps_rank(neg), Error);
  }
}

TEST_CASE("partial_trace") {
  SystemShape two_qubits = SystemShape::make(2, 2);

  SUBCASE("product state: tracing A leaves rho_B") {
    RandomStream rng(Seed{21, 0});
    ComplexMatrix rho_a = random_psd(rng, 2, 2);
    ComplexMatrix rho_b = random_psd(rng, 2, 2);
    ComplexMatrix joint = kron(rho_a, rho_b);
    ComplexMatrix reduced = partial_trace(joint, two_qubits, {0});
    CHECK((reduced - rho_b).norm() <= 1e-12);
  }

  SUBCASE("tracing every party leaves the trace") {
    RandomStream rng(Seed{22, 0});
    ComplexMatrix rho = random_psd(rng, 4, 3);
    ComplexMatrix out = partial_trace(rho, two_qubits, {0, 1});
    CHECK(out.rows() == 1);
    CHECK(std::abs(out(0, 0) - rho.trace()) <= 1e-12);
  }

  SUBCASE("qutrit GHZ reduces to (1/3) sum |ii><ii|") {
    SystemShape shape = SystemShape::make(3, 3);
    ComplexVector psi = ComplexVector::Zero(27);
    for (int i = 0; i < 3; ++i) psi(encode_index({i, i, i}, shape)) = 1.0 / std::sqrt(3.0);
    ComplexMatrix rho = psi * psi.adjoint();
    ComplexMatrix reduced = partial_trace(rho, shape, {0});
    SystemShape pair = SystemShape::make(3, 2);
    ComplexMatrix expected = ComplexMatrix::Zero(9, 9);
    for (int i = 0; i < 3; ++i) {
      Index idx = encode_index({i, i}, pair);
      expected(idx, idx) = 1.0 / 3.0;
    }
    CHECK((reduced - expected).norm() <= 1e-12);
  }

  SUBCASE("trace preserved on random Hermitian inputs") {
    RandomStream rng(Seed{23, 0});
    SystemShape shape = SystemShape::make(2, 3);
    for (int t = 0; t < 1000; ++t) {
      ComplexMatrix a = random_hermitian(rng, shape.full_dim);
      ComplexMatrix out = partial_trace(a, shape, {1});
      CHECK(std::abs(out.trace() - a.trace()) <= 1e-12 * std::max(1.0, std::abs(a.trace())));
    }
  }

  SUBCASE("bad party index") {
    CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(4, 4), two_qubits, {2}), Error);
  }
}

TEST_CASE("partial_transpose") {
  SystemShape two_qubits = SystemShape::make(2, 2);

  SUBCASE("diagonal matrices are fixed points") {
    ComplexMatrix d = ComplexMatrix::Zero(4, 4);
    d.diagonal() << 0.1, 0.2, 0.3, 0.4;
    CHECK((partial_transpose(d, two_qubits, {0}) - d).norm() == 0.0);
  }

  SUBCASE("involution is bit-exact") {
    RandomStream rng(Seed{31, 0});
    SystemShape shape = SystemShape::make(3, 3);
    ComplexMatrix a(shape.full_dim, shape.full_dim);
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
    ComplexMatrix twice = partial_transpose(partial_transpose(a, shape, {0, 2}), shape, {0, 2});
    CHECK((twice.array() == a.array()).all());
  }

  SUBCASE("Bell projector PT has min eigenvalue -1/2") {
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    ComplexMatrix rho = bell * bell.adjoint();
    RealVector w = hermitian_eigenvalues(partial_transpose(rho, two_qubits, {0}));
    CHECK(w(0) == doctest::Approx(-0.5).epsilon(1e-12));
  }

  SUBCASE("PT spectrum is invariant under unitaries on untouched parties") {
    RandomStream rng(Seed{32, 0});
    SystemShape shape = SystemShape::make(2, 3);
    for (int t = 0; t < 20; ++t) {
      ComplexMatrix rho = random_psd(rng, shape.full_dim, 4);
      // Haar-ish unitary on party 1 from a QR factorization
      ComplexMatrix g(2, 2);
      for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
      Eigen::HouseholderQR<ComplexMatrix> qr(g);
      ComplexMatrix u2 = qr.householderQ();
      ComplexMatrix u = kron(ComplexMatrix::Identity(2, 2),
                             kron(u2, ComplexMatrix::Identity(2, 2)));
      RealVector w1 = hermitian_eigenvalues(partial_transpose(rho, shape, {0}));
      RealVector w2 =
          hermitian_eigenvalues(partial_transpose(u * rho * u.adjoint(), shape, {0}));
      CHECK((w1 - w2).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("schmidt_decompose") {
  SUBCASE("|00> has a single unit coefficient") {
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = 1.0;
    SchmidtDecomposition s = schmidt_decompose(psi, 2, 2);
    CHECK(s.coefficients(0) == doctest::Approx(1.0));
    CHECK(s.coefficients(1) == doctest::Approx(0.0));
  }

  SUBCASE("Bell state splits evenly") {
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    SchmidtDecomposition s = schmidt_decompose(psi, 2, 2);
    CHECK(s.coefficients(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(s.coefficients(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
  }

  SUBCASE("already-Schmidt inputs read off their moduli") {
    double a = 0.8, b = 0.6;
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = a;
    psi(3) = b * std::exp(0.7i);
    SchmidtDecomposition s = schmidt_decompose(psi, 2, 2);
    CHECK(s.coefficients(0) == doctest::Approx(a));
    CHECK(s.coefficients(1) == doctest::Approx(b));
  }

  SUBCASE("coefficients match singular values of the reshaping, and reconstruct") {
    RandomStream rng(Seed{41, 0});
    for (int t = 0; t < 50; ++t) {
      Index da = 2 + (t % 3), db = 2 + (t % 4);
      ComplexVector psi = rng.haar_unit(da * db);
      SchmidtDecomposition s = schmidt_decompose(psi, da, db);
      double sq = s.coefficients.squaredNorm();
      CHECK(std::abs(sq - 1.0) <= 1e-10);
      // descending
      for (Index i = 1; i < s.coefficients.size(); ++i)
        CHECK(s.coefficients(i) <= s.coefficients(i - 1) + 1e-15);
      // rebuild psi = sum_r s_r |a_r>|b_r>
      ComplexVector rebuilt = ComplexVector::Zero(da * db);
      for (Index r = 0; r < s.coefficients.size(); ++r)
        for (Index i = 0; i < da; ++i)
          for (Index j = 0; j < db; ++j)
            rebuilt(i * db + j) += s.coefficients(r) * s.left(i, r) * s.right(j, r);
      CHECK((rebuilt - psi).norm() <= 1e-12);
    }
  }

  SUBCASE("length mismatch") {
    ComplexVector psi = ComplexVector::Zero(5);
    psi(0) = 1.0;
    CHECK_THROWS_AS(schmidt_decompose(psi, 2, 2), Error);
  }
}

TEST_CASE("trace_norm") {
  CHECK(trace_norm(ComplexMatrix::Zero(3, 3)) == doctest::Approx(0.0));
  CHECK(trace_norm(ComplexMatrix::Identity(4, 4)) == doctest::Approx(4.0));
  CHECK(trace_norm(diag2(1, -2)) == doctest::Approx(3.0));
}

TEST_CASE("psd_subtraction_weight") {
  SUBCASE("pure state subtracts itself entirely") {
    RandomStream rng(Seed{51, 0});
    ComplexVector v = rng.haar_unit(5);
    ComplexMatrix rho = v * v.adjoint();
    double lambda = psd_subtraction_weight(rho, v);
    CHECK(lambda == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((rho - lambda * v * v.adjoint()).norm() <= 1e-10);
  }

  SUBCASE("diagonal cases") {
    ComplexMatrix rho = 0.5 * ComplexMatrix::Identity(2, 2);
    ComplexVector e0 = ComplexVector::Zero(2);
    e0(0) = 1.0;
    CHECK(psd_subtraction_weight(rho, e0) == doctest::Approx(0.5));
  }

  SUBCASE("two-term orthogonal mixture") {
    RandomStream rng(Seed{52, 0});
    ComplexVector v = rng.haar_unit(4);
    ComplexVector w = rng.complex_gaussian(4);
    w -= v * v.dot(w);
    w /= w.norm();
    ComplexMatrix rho = (2.0 / 3.0) * v * v.adjoint() + (1.0 / 3.0) * w * w.adjoint();
    CHECK(psd_subtraction_weight(rho, v) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  }

  SUBCASE("vector outside the range is rejected") {
    ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
    rho(0, 0) = 1.0;
    ComplexVector v = ComplexVector::Zero(3);
    v(1) = 1.0;
    CHECK_THROWS_AS(psd_subtraction_weight(rho, v), Error);
  }

  SUBCASE("property: rank drops by exactly one on random PSD instances") {
    RandomStream rng(Seed{53, 0});
    for (int t = 0; t < 200; ++t) {
      Index d = 3 + (t % 6);
      Index r = 1 + (t % d);
      ComplexMatrix rho = random_psd(rng, d, r);
      Index rank_before = eps_rank(rho);
      // random vector inside the range
      EigenSystem es = hermitian_eigensystem(rho);
      ComplexVector v = ComplexVector::Zero(d);
      for (Index i = 0; i < d; ++i)
        if (es.eigenvalues(i) > 1e-10 * es.eigenvalues(d - 1))
          v += Complex(rng.gaussian(), rng.gaussian()) * es.eigenvectors.col(i);
      v /= v.norm();
      double lambda = psd_subtraction_weight(rho, v);
      ComplexMatrix rest = rho - lambda * v * v.adjoint();
      CHECK(eps_rank(rest) == rank_before - 1);
      RealVector w = hermitian_eigenvalues(rest);
      CHECK(w(0) >= -1e-9 * std::max(1.0, w(w.size() - 1)));
    }
  }
}
