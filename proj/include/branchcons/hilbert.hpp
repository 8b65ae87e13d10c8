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

// Quantum objects over labeled tensor-product spaces. Factor order is the
// declaration order, and all basis indexing follows from it (first factor is
// the slowest index).

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "branchcons/errors.hpp"
#include "branchcons/numeric.hpp"

namespace branchcons {

class HilbertSpace {
 public:
  struct Factor {
    std::string label;
    Eigen::Index dim;

    bool operator==(const Factor&) const = default;
  };

  HilbertSpace() = default;

  explicit HilbertSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidArgument("HilbertSpace: needs at least one factor");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].dim < 1) {
        throw InvalidArgument("HilbertSpace: factor '" + factors_[i].label +
                              "' must have dim >= 1");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (factors_[j].label == factors_[i].label) {
          throw InvalidArgument("HilbertSpace: duplicate label '" + factors_[i].label + "'");
        }
      }
    }
  }

  static HilbertSpace single(std::string label, Eigen::Index dim) {
    return HilbertSpace({{std::move(label), dim}});
  }

  const std::vector<Factor>& factors() const { return factors_; }

  Eigen::Index total_dim() const {
    Eigen::Index d = 1;
    for (const auto& f : factors_) d *= f.dim;
    return d;
  }

  bool contains(const std::string& label) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.label == label; });
  }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].label == label) return i;
    }
    throw UnknownLabel("HilbertSpace: no factor labeled '" + label + "'");
  }

  Eigen::Index dim_of(const std::string& label) const {
    return factors_[index_of(label)].dim;
  }

  /// Flat basis index of a multi-index given in factor order.
  Eigen::Index flat_index(const std::vector<Eigen::Index>& digits) const {
    if (digits.size() != factors_.size()) {
      throw DimensionMismatch("HilbertSpace: multi-index has wrong arity");
    }
    Eigen::Index idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (digits[i] < 0 || digits[i] >= factors_[i].dim) {
        throw DimensionMismatch("HilbertSpace: digit out of range for '" +
                                factors_[i].label + "'");
      }
      idx = idx * factors_[i].dim + digits[i];
    }
    return idx;
  }

  std::vector<Eigen::Index> digits_of(Eigen::Index flat) const {
    std::vector<Eigen::Index> digits(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      digits[i] = flat % factors_[i].dim;
      flat /= factors_[i].dim;
    }
    return digits;
  }

  bool operator==(const HilbertSpace&) const = default;

 private:
  std::vector<Factor> factors_;
};

inline void require_same_space(const HilbertSpace& a, const HilbertSpace& b,
                               const char* where) {
  if (!(a == b)) throw DimensionMismatch(std::string(where) + ": operands live on different spaces");
}

/// Normalized pure state.
class QuantumState {
 public:
  static constexpr double kNormTol = 1e-10;

  QuantumState(HilbertSpace space, Vector amplitudes)
      : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != space_.total_dim()) {
      throw DimensionMismatch("QuantumState: amplitude count does not match space dimension");
    }
    if (!amplitudes_.allFinite()) throw InvalidArgument("QuantumState: non-finite amplitude");
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTol) {
      throw InvalidArgument("QuantumState: amplitudes not normalized (norm " +
                            std::to_string(amplitudes_.norm()) + ")");
    }
  }

  /// Rescales `v` to unit norm. Throws on the zero vector.
  static QuantumState normalized(HilbertSpace space, Vector v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw InvalidArgument("QuantumState::normalized: vector has zero or non-finite norm");
    }
    return QuantumState(std::move(space), v / n);
  }

  static QuantumState basis(HilbertSpace space, Eigen::Index index) {
    Vector v = Vector::Zero(space.total_dim());
    if (index < 0 || index >= v.size()) throw DimensionMismatch("QuantumState::basis: index out of range");
    v(index) = 1.0;
    return QuantumState(std::move(space), std::move(v));
  }

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  HilbertSpace space_;
  Vector amplitudes_;
};

/// Overlap-squared |⟨a|b⟩|², the pure-state fidelity.
inline double fidelity(const QuantumState& a, const QuantumState& b) {
  require_same_space(a.space(), b.space(), "fidelity");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

class Observable {
 public:
  Observable(HilbertSpace space, Matrix matrix, std::string units)
      : space_(std::move(space)), matrix_(std::move(matrix)), units_(std::move(units)) {
    const auto d = space_.total_dim();
    if (matrix_.rows() != d || matrix_.cols() != d) {
      throw DimensionMismatch("Observable: matrix is not total_dim square");
    }
    if (!matrix_.allFinite()) throw InvalidArgument("Observable: non-finite entry");
    if (!is_hermitian(matrix_)) throw NotHermitian("Observable: matrix is not Hermitian");
  }

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }
  const std::string& units() const { return units_; }

 private:
  HilbertSpace space_;
  Matrix matrix_;
  std::string units_;
};

class UnitaryOp {
 public:
  UnitaryOp(HilbertSpace space, Matrix matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {
    const auto d = space_.total_dim();
    if (matrix_.rows() != d || matrix_.cols() != d) {
      throw DimensionMismatch("UnitaryOp: matrix is not total_dim square");
    }
    if (!matrix_.allFinite()) throw InvalidArgument("UnitaryOp: non-finite entry");
    const double defect = unitarity_defect(matrix_);
    if (defect > kUnitaryTol) {
      throw InvalidArgument("UnitaryOp: ‖U†U − I‖_F = " + std::to_string(defect) +
                            " exceeds tolerance");
    }
  }

  static UnitaryOp identity(HilbertSpace space) {
    const auto d = space.total_dim();
    return UnitaryOp(std::move(space), Matrix::Identity(d, d));
  }

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

/// I ⊗ … ⊗ op ⊗ … ⊗ I with `op` placed on the factor named `target_label`.
inline Matrix embed(const Matrix& op, const std::string& target_label,
                    const HilbertSpace& space) {
  const std::size_t pos = space.index_of(target_label);
  const auto& factors = space.factors();
  if (op.rows() != op.cols() || op.rows() != factors[pos].dim) {
    throw DimensionMismatch("embed: operator dim does not match factor '" + target_label + "'");
  }
  Eigen::Index left = 1;
  Eigen::Index right = 1;
  for (std::size_t i = 0; i < pos; ++i) left *= factors[i].dim;
  for (std::size_t i = pos + 1; i < factors.size(); ++i) right *= factors[i].dim;
  return tensor_product(tensor_product(Matrix::Identity(left, left), op),
                        Matrix::Identity(right, right));
}

/// Q_S ⊗ I + I ⊗ Q_R on the joint space. Each operand must live on a
/// single-factor space whose label names a distinct factor of `space`.
inline Observable total_observable(const Observable& q_s, const Observable& q_r,
                                   const HilbertSpace& space) {
  if (q_s.units() != q_r.units()) {
    throw UnitMismatch("total_observable: '" + q_s.units() + "' vs '" + q_r.units() + "'");
  }
  if (q_s.space().factors().size() != 1 || q_r.space().factors().size() != 1) {
    throw InvalidArgument("total_observable: operands must act on a single factor each");
  }
  const auto& ls = q_s.space().factors().front().label;
  const auto& lr = q_r.space().factors().front().label;
  if (ls == lr) throw InvalidArgument("total_observable: operands act on the same factor '" + ls + "'");
  Matrix sum = embed(q_s.matrix(), ls, space) + embed(q_r.matrix(), lr, space);
  sum = 0.5 * (sum + sum.adjoint()).eval();
  return Observable(space, std::move(sum), q_s.units());
}

/// U·ψ. Roundoff drift in the norm above 1e-12 is renormalized away; drift
/// above 1e-8 means U was not unitary and is an error.
inline QuantumState apply(const UnitaryOp& u, const QuantumState& psi) {
  require_same_space(u.space(), psi.space(), "apply");
  Vector out = u.matrix() * psi.amplitudes();
  const double drift = std::abs(out.norm() - 1.0);
  if (drift > 1e-8) {
    throw InvalidArgument("apply: norm drift " + std::to_string(drift) + " after unitary");
  }
  if (drift > 1e-12) out /= out.norm();
  return QuantumState(psi.space(), std::move(out));
}

/// ⟨ψ|Q|ψ⟩.
inline double expectation(const QuantumState& psi, const Observable& q) {
  require_same_space(q.space(), psi.space(), "expectation");
  const Complex value = psi.amplitudes().dot(q.matrix() * psi.amplitudes());
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, q.matrix().norm())) {
    throw NotHermitian("expectation: imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace branchcons
