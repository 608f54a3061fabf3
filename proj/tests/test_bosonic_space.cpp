#include <doctest.h>

#include <cmath>

#include "bosesep/bosonic_space.hpp"
#include "bosesep/rng.hpp"

using namespace bosesep;

TEST_CASE("bosonic_dim anchors") {
  CHECK(bosonic_dim(3, 3) == 10);
  CHECK(bosonic_dim(4, 3) == 20);
  CHECK(bosonic_dim(3, 4) == 15);
  CHECK(bosonic_dim(7, 1) == 7);
  CHECK(bosonic_dim(2, 2) == 3);
  CHECK(bosonic_dim(3, 0) == 1);
  CHECK_THROWS_AS(bosonic_dim(0, 3), Error);
  // 64-bit overflow
  CHECK_THROWS_AS(bosonic_dim(1000, 40), Error);
}

TEST_CASE("occupation_basis order and length") {
  SUBCASE("(2,2)") {
    auto basis = occupation_basis(2, 2);
    REQUIRE(basis.size() == 3);
    CHECK(basis[0].counts == std::vector<int>{2, 0});
    CHECK(basis[1].counts == std::vector<int>{1, 1});
    CHECK(basis[2].counts == std::vector<int>{0, 2});
  }

  SUBCASE("(3,1)") {
    auto basis = occupation_basis(3, 1);
    REQUIRE(basis.size() == 3);
    CHECK(basis[0].counts == std::vector<int>{1, 0, 0});
    CHECK(basis[1].counts == std::vector<int>{0, 1, 0});
    CHECK(basis[2].counts == std::vector<int>{0, 0, 1});
  }

  SUBCASE("length matches bosonic_dim and order is strictly descending") {
    for (int n = 2; n <= 4; ++n)
      for (int k = 1; k <= 4; ++k) {
        auto basis = occupation_basis(n, k);
        CHECK(basis.size() == bosonic_dim(n, k));
        for (size_t i = 1; i < basis.size(); ++i)
          CHECK(basis[i].counts < basis[i - 1].counts);  // lexicographic
      }
  }
}

TEST_CASE("dicke_vector") {
  SUBCASE("occ (k,0,...) is |0...0>") {
    SystemShape shape = SystemShape::make(3, 3);
    ComplexVector v = dicke_vector(OccupationVector{{3, 0, 0}}, shape);
    CHECK(std::abs(v(0) - 1.0) == 0.0);
    CHECK(v.tail(26).norm() == 0.0);
  }

  SUBCASE("n=2, k=2, occ (1,1) is (|01>+|10>)/sqrt(2)") {
    SystemShape shape = SystemShape::make(2, 2);
    ComplexVector v = dicke_vector(OccupationVector{{1, 1}}, shape);
    CHECK(std::abs(v(1) - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(v(2) - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(v(0)) == 0.0);
    CHECK(std::abs(v(3)) == 0.0);
  }

  SUBCASE("n=3, k=3, occ (2,1,0) spreads over three arrangements") {
    SystemShape shape = SystemShape::make(3, 3);
    ComplexVector v = dicke_vector(OccupationVector{{2, 1, 0}}, shape);
    // arrangements 001, 010, 100 -> flat indices 1, 3, 9
    const double amp = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(v(1) - amp) <= 1e-15);
    CHECK(std::abs(v(3) - amp) <= 1e-15);
    CHECK(std::abs(v(9) - amp) <= 1e-15);
    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  }

  SUBCASE("inconsistent occupation is rejected") {
    SystemShape shape = SystemShape::make(3, 3);
    CHECK_THROWS_AS(dicke_vector(OccupationVector{{1, 1, 0}}, shape), Error);
    CHECK_THROWS_AS(dicke_vector(OccupationVector{{3, 0}}, shape), Error);
  }

  SUBCASE("outputs are pairwise orthonormal") {
    SystemShape shape = SystemShape::make(3, 3);
    SymmetricIsometry iso = symmetric_isometry(shape);
    ComplexMatrix gram = iso.v.adjoint() * iso.v;
    CHECK((gram - ComplexMatrix::Identity(shape.sym_dim, shape.sym_dim)).norm() <= 1e-12);
  }
}

TEST_CASE("symmetrizer") {
  SUBCASE("k=1 is the identity") {
    ComplexMatrix p = symmetrizer(SystemShape::make(4, 1));
    CHECK((p - ComplexMatrix::Identity(4, 4)).norm() <= 1e-15);
  }

  SUBCASE("n=2, k=2 projects onto the triplet subspace") {
    ComplexMatrix p = symmetrizer(SystemShape::make(2, 2));
    CHECK(eps_rank(p) == 3);
  }

  SUBCASE("n=3, k=3 has rank 10") {
    ComplexMatrix p = symmetrizer(SystemShape::make(3, 3));
    CHECK(eps_rank(p) == 10);
    CHECK(std::abs(p.trace().real() - 10.0) <= 1e-9);
  }

  SUBCASE("idempotent and Hermitian") {
    SystemShape shape = SystemShape::make(3, 3);
    ComplexMatrix p = symmetrizer(shape);
    CHECK((p * p - p).norm() <= 1e-12);
    CHECK(is_hermitian(p));
  }

  SUBCASE("permutation sum agrees with V V^dag") {
    for (auto [n, k] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{2, 4}}) {
      SystemShape shape = SystemShape::make(n, k);
      ComplexMatrix p = symmetrizer(shape);  // k! <= 120: permutation path
      SymmetricIsometry iso = symmetric_isometry(shape);
      CHECK((p - iso.v * iso.v.adjoint()).norm() <= 1e-12);
    }
  }

  SUBCASE("invariant under party permutations") {
    SystemShape shape = SystemShape::make(2, 4);
    ComplexMatrix p = symmetrizer(shape);
    RandomStream rng(Seed{61, 0});
    std::vector<int> perm{0, 1, 2, 3};
    for (int t = 0; t < 20; ++t) {
      // Fisher-Yates with the deterministic stream
      for (int i = 3; i > 0; --i) {
        int j = static_cast<int>(rng.uniform() * (i + 1));
        std::swap(perm[i], perm[j]);
      }
      ComplexMatrix u = permutation_operator(perm, shape);
      CHECK((u * p * u.adjoint() - p).norm() <= 1e-12);
    }
  }
}

TEST_CASE("symmetric_isometry") {
  SUBCASE("k=1 is the identity") {
    SymmetricIsometry iso = symmetric_isometry(SystemShape::make(5, 1));
    CHECK((iso.v - ComplexMatrix::Identity(5, 5)).norm() == 0.0);
  }

  SUBCASE("(2,2) columns are |00>, (|01>+|10>)/sqrt2, |11>") {
    SymmetricIsometry iso = symmetric_isometry(SystemShape::make(2, 2));
    REQUIRE(iso.v.cols() == 3);
    CHECK(std::abs(iso.v(0, 0) - 1.0) == 0.0);
    CHECK(std::abs(iso.v(1, 1) - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(iso.v(2, 1) - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(iso.v(3, 2) - 1.0) == 0.0);
  }

  SUBCASE("column count for (3,4) is 15") {
    CHECK(symmetric_isometry(SystemShape::make(3, 4)).v.cols() == 15);
  }

  SUBCASE("V^dag V = I and V V^dag = P") {
    SystemShape shape = SystemShape::make(3, 3);
    SymmetricIsometry iso = symmetric_isometry(shape);
    CHECK((iso.v.adjoint() * iso.v -
           ComplexMatrix::Identity(shape.sym_dim, shape.sym_dim)).norm() <= 1e-12);
    CHECK((iso.v * iso.v.adjoint() - symmetrizer(shape)).norm() <= 1e-12);
  }
}

TEST_CASE("symmetric support and compress/expand") {
  SystemShape shape = SystemShape::make(2, 2);

  SUBCASE("product power and normalized symmetrizer have zero residual") {
    ComplexVector e0 = ComplexVector::Zero(4);
    e0(0) = 1.0;
    CHECK(symmetric_support_residual(e0 * e0.adjoint(), shape) <= 1e-14);
    ComplexMatrix p = symmetrizer(shape);
    CHECK(symmetric_support_residual(p / 3.0, shape) <= 1e-14);
  }

  SUBCASE("antisymmetric singlet has residual 1") {
    ComplexVector singlet = ComplexVector::Zero(4);
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);
    ComplexMatrix rho = singlet * singlet.adjoint();
    CHECK(symmetric_support_residual(rho, shape) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(compress(rho, shape), Error);
  }

  SUBCASE("expand of the normalized identity is P / sym_dim") {
    ComplexMatrix out = expand(ComplexMatrix::Identity(3, 3) / 3.0, shape);
    CHECK((out - symmetrizer(shape) / 3.0).norm() <= 1e-13);
  }

  SUBCASE("compress of |00><00| is the rank-1 projector on occ (2,0)") {
    ComplexVector e0 = ComplexVector::Zero(4);
    e0(0) = 1.0;
    ComplexMatrix sym = compress(e0 * e0.adjoint(), shape);
    ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
    expected(0, 0) = 1.0;
    CHECK((sym - expected).norm() <= 1e-13);
  }

  SUBCASE("round-trip on 100 random supported states") {
    SystemShape big = SystemShape::make(3, 3);
    SymmetricIsometry iso = symmetric_isometry(big);
    RandomStream rng(Seed{71, 0});
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      ComplexMatrix sym = ComplexMatrix::Zero(big.sym_dim, big.sym_dim);
      for (int j = 0; j < 3; ++j) {
        ComplexVector c = rng.haar_unit(big.sym_dim);
        sym.noalias() += c * c.adjoint();
      }
      sym /= std::real(sym.trace());
      ComplexMatrix full = expand(sym, iso);
      ComplexMatrix back = compress(full, iso);
      worst = std::max(worst, (back - sym).norm());
      worst = std::max(worst, (expand(back, iso) - full).norm());
    }
    CHECK(worst <= 1e-10);
  }

  SUBCASE("dimension law holds over the sweep that fits the default limit") {
    for (int n = 2; n <= 4; ++n)
      for (int k = 1; k <= 4; ++k) {
        SystemShape s = SystemShape::make(n, k);
        if (s.full_dim * s.full_dim > size_limit()) continue;
        CHECK(eps_rank(symmetrizer(s)) == static_cast<Index>(bosonic_dim(n, k)));
      }
  }
}
