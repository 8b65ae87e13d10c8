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

#include "branchcons/hilbert.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "oracles.hpp"

using namespace branchcons;
using branchcons::testing::diag;
using branchcons::testing::pauli_x;
using branchcons::testing::pauli_z;

namespace {

HilbertSpace two_qubits() { return HilbertSpace({{"s", 2}, {"r", 2}}); }

QuantumState ket(const HilbertSpace& space, std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return QuantumState::normalized(space, v);
}

}  // namespace

TEST(HilbertSpace, rejects_duplicate_labels_and_empty_factors) {
  EXPECT_THROW(HilbertSpace({{"a", 2}, {"a", 3}}), InvalidArgument);
  EXPECT_THROW(HilbertSpace({{"a", 0}}), InvalidArgument);
  EXPECT_THROW(HilbertSpace(std::vector<HilbertSpace::Factor>{}), InvalidArgument);
}

TEST(HilbertSpace, flat_index_follows_declaration_order) {
  const HilbertSpace space({{"a", 2}, {"b", 3}, {"c", 4}});
  EXPECT_EQ(space.total_dim(), 24);
  EXPECT_EQ(space.flat_index({1, 2, 3}), 1 * 12 + 2 * 4 + 3);
  for (Eigen::Index i = 0; i < 24; ++i) EXPECT_EQ(space.flat_index(space.digits_of(i)), i);
  EXPECT_THROW(space.index_of("z"), UnknownLabel);
}

TEST(QuantumState, enforces_normalization) {
  const auto space = HilbertSpace::single("q", 2);
  EXPECT_THROW(QuantumState(space, Vector::Ones(2)), InvalidArgument);
  EXPECT_THROW(QuantumState(space, Vector::Ones(3) / std::sqrt(3.0)), DimensionMismatch);
  EXPECT_THROW(QuantumState::normalized(space, Vector::Zero(2)), InvalidArgument);
}

TEST(Observable, rejects_non_hermitian) {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_THROW(Observable(HilbertSpace::single("q", 2), m, "x"), NotHermitian);
}

TEST(UnitaryOp, rejects_non_unitary) {
  EXPECT_THROW(UnitaryOp(HilbertSpace::single("q", 2), 2.0 * Matrix::Identity(2, 2)),
               InvalidArgument);
}

TEST(Embed, single_factor_is_identity_map) {
  EXPECT_EQ(embed(pauli_x(), "a", HilbertSpace::single("a", 2)), pauli_x());
}

TEST(Embed, ordering_convention) {
  EXPECT_EQ(embed(diag({0, 1}), "s", two_qubits()), diag({0, 0, 1, 1}));
  // Index = 2·s + r, so r = 1 at indices 1 and 3.
  EXPECT_EQ(embed(diag({0, 1}), "r", two_qubits()), diag({0, 1, 0, 1}));
}

TEST(Embed, errors) {
  EXPECT_THROW(embed(pauli_x(), "nope", two_qubits()), UnknownLabel);
  EXPECT_THROW(embed(Matrix::Identity(3, 3), "s", two_qubits()), DimensionMismatch);
}

TEST(Embed, disjoint_supports_commute) {
  Rng rng(21);
  const HilbertSpace space({{"s", 3}, {"m", 2}, {"r", 4}});
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = embed(complex_gaussian(3, 3, rng), "s", space);
    const Matrix b = embed(complex_gaussian(4, 4, rng), "r", space);
    EXPECT_LE((a * b - b * a).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(TotalObservable, examples) {
  const auto s = HilbertSpace::single("s", 2);
  const auto r = HilbertSpace::single("r", 2);
  const Observable qs(s, diag({0, 1}), "energy");
  EXPECT_EQ(total_observable(qs, Observable(r, Matrix::Zero(2, 2), "energy"), two_qubits()).matrix(),
            diag({0, 0, 1, 1}));
  EXPECT_EQ(total_observable(qs, Observable(r, diag({0, 1}), "energy"), two_qubits()).matrix(),
            diag({0, 1, 1, 2}));
}

TEST(TotalObservable, photon_counter_spectrum_is_n_plus_k) {
  const double hw = 1.7;
  const HilbertSpace joint({{"field", 4}, {"apparatus", 5}});
  const Observable field(HilbertSpace::single("field", 4), hw * diag({0, 1, 2, 3}), "energy");
  const Observable app(HilbertSpace::single("apparatus", 5), hw * diag({0, 1, 2, 3, 4}), "energy");
  const Matrix total = total_observable(field, app, joint).matrix();
  for (Eigen::Index i = 0; i < joint.total_dim(); ++i) {
    const auto d = joint.digits_of(i);
    EXPECT_NEAR(total(i, i).real(), hw * static_cast<double>(d[0] + d[1]), 1e-14);
  }
  EXPECT_EQ((total - Matrix(total.diagonal().asDiagonal())).norm(), 0.0);
}

TEST(TotalObservable, errors) {
  const Observable e(HilbertSpace::single("s", 2), diag({0, 1}), "energy");
  const Observable p(HilbertSpace::single("r", 2), diag({0, 1}), "momentum");
  EXPECT_THROW(total_observable(e, p, two_qubits()), UnitMismatch);
  const Observable other(HilbertSpace::single("x", 2), diag({0, 1}), "energy");
  EXPECT_THROW(total_observable(e, other, two_qubits()), UnknownLabel);
  EXPECT_THROW(total_observable(e, e, two_qubits()), InvalidArgument);
}

TEST(Apply, examples) {
  const auto q = HilbertSpace::single("q", 2);
  const auto zero = QuantumState::basis(q, 0);
  EXPECT_EQ(apply(UnitaryOp::identity(q), zero).amplitudes(), zero.amplitudes());
  EXPECT_EQ(apply(UnitaryOp(q, pauli_x()), zero).amplitudes(), QuantumState::basis(q, 1).amplitudes());
  const UnitaryOp hadamard(q, (pauli_x() + pauli_z()) / std::sqrt(2.0));
  const auto plus = apply(hadamard, zero);
  EXPECT_NEAR(std::abs(plus.amplitudes()(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(plus.amplitudes()(1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_THROW(apply(UnitaryOp::identity(two_qubits()), zero), DimensionMismatch);
}

TEST(Expectation, examples) {
  const auto q = HilbertSpace::single("q", 2);
  EXPECT_EQ(expectation(QuantumState::basis(q, 0), Observable(q, diag({0, 1}), "")), 0.0);
  EXPECT_NEAR(expectation(ket(q, {1, 1}), Observable(q, diag({0, 1}), "")), 0.5, 1e-15);

  // (|0⟩ + |10⟩)/√2 with ħω·n̂: the field averages 5ħω.
  const double hw = 2.0;
  const auto field = HilbertSpace::single("field", 11);
  Vector v = Vector::Zero(11);
  v(0) = v(10) = 1.0;
  RealVector n = RealVector::LinSpaced(11, 0.0, 10.0);
  const Observable number(field, hw * n.cast<Complex>().asDiagonal().toDenseMatrix(), "energy");
  EXPECT_NEAR(expectation(QuantumState::normalized(field, v), number), 5.0 * hw, 1e-13);
}

TEST(Expectation, heisenberg_schrodinger_consistency) {
  Rng rng(5);
  for (Eigen::Index dim : {2, 3, 6, 10}) {
    const auto space = HilbertSpace::single("q", dim);
    const Observable q(space, random_hermitian(dim, rng), "");
    const UnitaryOp u(space, random_unitary(dim, rng));
    const QuantumState psi(space, random_state_vector(dim, rng));
    const Observable heisenberg(space, u.matrix().adjoint() * q.matrix() * u.matrix(), "");
    EXPECT_NEAR(expectation(apply(u, psi), q), expectation(psi, heisenberg), 1e-9);
  }
}
