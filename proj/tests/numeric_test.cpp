// Copyright 2026 The branchcons Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "branchcons/numeric.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace branchcons;
using branchcons::testing::diag;
using branchcons::testing::pauli_x;

namespace {

Matrix random_complex(Eigen::Index r, Eigen::Index c, Rng& rng) { return complex_gaussian(r, c, rng); }

}  // namespace

TEST(TensorProduct, identity_times_identity) {
  EXPECT_TRUE(tensor_product(Matrix::Identity(2, 2), Matrix::Identity(2, 2))
                  .isApprox(Matrix::Identity(4, 4)));
}

TEST(TensorProduct, left_factor_is_slow_index) {
  EXPECT_EQ(tensor_product(diag({0, 1}), Matrix::Identity(2, 2)), diag({0, 0, 1, 1}));
}

TEST(TensorProduct, x_x_maps_basis_zero_to_three) {
  const Matrix xx = tensor_product(pauli_x(), pauli_x());
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  const Vector out = xx * e0;
  // Hand enumeration: (X⊗X)_{3,0} = X_{1,0}·X_{1,0} = 1, every other entry of column 0 is 0.
  EXPECT_EQ(out(3), Complex(1.0, 0.0));
  EXPECT_EQ(out(0), Complex(0.0, 0.0));
  EXPECT_EQ(out(1), Complex(0.0, 0.0));
  EXPECT_EQ(out(2), Complex(0.0, 0.0));
}

TEST(TensorProduct, associative) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> d(2, 3);
    const Matrix a = random_complex(d(rng), d(rng), rng);
    const Matrix b = random_complex(d(rng), d(rng), rng);
    const Matrix c = random_complex(d(rng), d(rng), rng);
    const Matrix lhs = tensor_product(tensor_product(a, b), c);
    const Matrix rhs = tensor_product(a, tensor_product(b, c));
    ASSERT_EQ(lhs.rows(), rhs.rows());
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(HermitianEigensystem, diagonal) {
  const auto es = hermitian_eigensystem(diag({0, 1}));
  EXPECT_NEAR(es.values(0), 0.0, 1e-15);
  EXPECT_NEAR(es.values(1), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(es.vectors(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(es.vectors(1, 1)), 1.0, 1e-15);
}

TEST(HermitianEigensystem, pauli_x_eigenvalues) {
  // det(X − λI) = λ² − 1.
  const auto es = hermitian_eigensystem(pauli_x());
  EXPECT_NEAR(es.values(0), -1.0, 1e-14);
  EXPECT_NEAR(es.values(1), 1.0, 1e-14);
}

TEST(HermitianEigensystem, one_by_one_drops_tiny_imaginary_part) {
  Matrix c(1, 1);
  c(0, 0) = Complex(2.5, 1e-14);
  const auto es = hermitian_eigensystem(c);
  EXPECT_DOUBLE_EQ(es.values(0), 2.5);
}

TEST(HermitianEigensystem, rejects_non_hermitian) {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_THROW(hermitian_eigensystem(m), NotHermitian);
  EXPECT_THROW(hermitian_eigensystem(Matrix::Zero(2, 3)), DimensionMismatch);
}

TEST(HermitianEigensystem, reconstruction_property) {
  Rng rng(11);
  for (Eigen::Index dim = 1; dim <= 32; ++dim) {
    const Matrix h = random_hermitian(dim, rng);
    const auto es = hermitian_eigensystem(h);
    const Matrix rebuilt =
        es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    EXPECT_LE((rebuilt - h).norm(), 1e-9 * h.norm()) << "dim " << dim;
    EXPECT_LE(unitarity_defect(es.vectors), 1e-10);
    for (Eigen::Index k = 1; k < dim; ++k) EXPECT_LE(es.values(k - 1), es.values(k));
  }
}

TEST(UnitaryFromHamiltonian, zero_hamiltonian_is_identity) {
  EXPECT_LE((unitary_from_hamiltonian(Matrix::Zero(3, 3), 4.2) - Matrix::Identity(3, 3)).norm(),
            1e-15);
}

TEST(UnitaryFromHamiltonian, phase_periodicity) {
  const Matrix u = unitary_from_hamiltonian(diag({0, 1}), 2.0 * std::numbers::pi);
  EXPECT_LE((u - Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(UnitaryFromHamiltonian, pauli_x_quarter_period) {
  // exp(−iXπ/2) = cos(π/2)·I − i·sin(π/2)·X = −iX.
  const Matrix u = unitary_from_hamiltonian(pauli_x(), std::numbers::pi / 2.0);
  const Matrix expected = Complex(0.0, -1.0) * pauli_x();
  EXPECT_LE((u - expected).norm(), 1e-12);
}

TEST(UnitaryFromHamiltonian, group_property_and_unitarity) {
  Rng rng(3);
  std::uniform_real_distribution<double> t(-3.0, 3.0);
  for (Eigen::Index dim : {2, 5, 9, 16}) {
    const Matrix h = random_hermitian(dim, rng);
    const double t1 = t(rng), t2 = t(rng);
    const Matrix u1 = unitary_from_hamiltonian(h, t1);
    const Matrix u2 = unitary_from_hamiltonian(h, t2);
    const Matrix u12 = unitary_from_hamiltonian(h, t1 + t2);
    EXPECT_LE((u1 * u2 - u12).norm(), 1e-9);
    EXPECT_LE(unitarity_defect(u1), 1e-10);
  }
  EXPECT_THROW(unitary_from_hamiltonian(Matrix::Ones(1, 1) * Complex(0, 1), 1.0), NotHermitian);
}

TEST(RandomUnitary, dim_one_is_a_phase) {
  const Matrix u = random_unitary(1, std::uint64_t{5});
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
}

TEST(RandomUnitary, unitary_and_deterministic) {
  for (Eigen::Index dim : {1, 2, 3, 8, 17, 40}) {
    for (std::uint64_t seed : {0ULL, 1ULL, 12345ULL}) {
      const Matrix u = random_unitary(dim, seed);
      EXPECT_LE(unitarity_defect(u), 1e-10);
      EXPECT_LE((u * u.adjoint() - Matrix::Identity(dim, dim)).norm(), 1e-10);
      const Matrix again = random_unitary(dim, seed);
      EXPECT_EQ(0, std::memcmp(u.data(), again.data(), sizeof(Complex) * u.size()));
    }
  }
  EXPECT_NE(random_unitary(4, std::uint64_t{1}), random_unitary(4, std::uint64_t{2}));
}

TEST(RandomUnitary, haar_phase_statistics) {
  // For Haar U, E[U_00] = 0 and E|U_00|² = 1/d; a QR without the phase fix
  // has a real positive diagonal and fails the first check.
  const Eigen::Index dim = 3;
  const int samples = 4000;
  Rng rng(99);
  Complex mean = 0.0;
  double second = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Matrix u = random_unitary(dim, rng);
    mean += u(0, 0);
    second += std::norm(u(0, 0));
  }
  mean /= samples;
  second /= samples;
  EXPECT_LT(std::abs(mean), 0.05);
  EXPECT_NEAR(second, 1.0 / dim, 0.02);
}
