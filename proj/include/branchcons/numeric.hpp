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

// Dense complex linear algebra shared by every other layer. Everything here
// is a pure function of its arguments; matrices are Eigen values.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "branchcons/errors.hpp"

namespace branchcons {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Relative Frobenius tolerance used by every Hermiticity check.
inline constexpr double kHermitianTol = 1e-10;
/// Absolute Frobenius bound on ‖U†U − I‖ for anything called a unitary.
inline constexpr double kUnitaryTol = 1e-10;

inline double frobenius(const Matrix& m) { return m.norm(); }

inline bool all_finite(const Matrix& m) { return m.allFinite(); }
inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline double hermiticity_defect(const Matrix& h) {
  return (h - h.adjoint()).norm();
}

/// ‖h − h†‖_F ≤ tol·‖h‖_F. The zero matrix is Hermitian.
inline bool is_hermitian(const Matrix& h, double tol = kHermitianTol) {
  if (h.rows() != h.cols()) return false;
  return hermiticity_defect(h) <= tol * h.norm();
}

/// ‖U†U − I‖_F.
inline double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

/// Kronecker product; the left factor is the slow index, so
/// (a⊗b)(i·b.rows + k, j·b.cols + l) = a(i,j)·b(k,l).
inline Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vector tensor_product_vector(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // column k pairs with values(k)
};

/// Eigen-decomposition of a Hermitian matrix. Only the Hermitian part of `h`
/// is used once the tolerance check passes.
inline EigenSystem hermitian_eigensystem(const Matrix& h,
                                         double tol = kHermitianTol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw DimensionMismatch("hermitian_eigensystem: matrix must be square and non-empty");
  }
  if (!h.allFinite()) {
    throw InvalidArgument("hermitian_eigensystem: non-finite entries");
  }
  if (!is_hermitian(h, tol)) {
    throw NotHermitian("hermitian_eigensystem: ‖h − h†‖_F = " +
                       std::to_string(hermiticity_defect(h)) +
                       " exceeds tolerance");
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("hermitian_eigensystem: eigen solver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// exp(−i·h·t) through the spectral decomposition of h.
inline Matrix unitary_from_hamiltonian(const Matrix& h, double t,
                                       double tol = kHermitianTol) {
  const EigenSystem es = hermitian_eigensystem(h, tol);
  Vector phases(es.values.size());
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    phases(k) = std::polar(1.0, -es.values(k) * t);
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

/// Matrix of i.i.d. standard complex normals, E|z|² = 1.
inline Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  Matrix z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) pulled into Q (Mezzadri's correction).
inline Matrix random_unitary(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw InvalidArgument("random_unitary: dim must be >= 1");
  const Matrix z = complex_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

inline Matrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

/// GUE-like random Hermitian matrix, scaled so its spectrum is O(1).
inline Matrix random_hermitian(Eigen::Index dim, Rng& rng) {
  const Matrix a = complex_gaussian(dim, dim, rng);
  return (a + a.adjoint()) / (2.0 * std::sqrt(static_cast<double>(dim)));
}

inline Vector random_state_vector(Eigen::Index dim, Rng& rng) {
  Vector v = complex_gaussian(dim, 1, rng).col(0);
  return v / v.norm();
}

}  // namespace branchcons
