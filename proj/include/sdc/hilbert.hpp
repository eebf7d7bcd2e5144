// Copyright 2026 The SDC Authors
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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sdc {

using Complex = std::complex<double>;

class DenseOp;

/// Receiver label +-n with 1 <= |n| <= N.
class PositionLabel {
  public:
    explicit PositionLabel(int value);
    int value() const { return value_; }
    int magnitude() const { return value_ < 0 ? -value_ : value_; }
    bool positive() const { return value_ > 0; }
    PositionLabel operator-() const { return PositionLabel(-value_); }
    bool operator==(const PositionLabel &) const = default;

  private:
    int value_;
};

struct BasisIndex {
    std::size_t value;
    auto operator<=>(const BasisIndex &) const = default;
};

/// +n -> n-1 and -n -> N+n-1, so each half-axis is one contiguous block.
BasisIndex label_to_index(PositionLabel n, std::size_t N);
PositionLabel index_to_label(BasisIndex i, std::size_t N);

/// Amplitudes over a tensor product of subsystems; the first subsystem is the
/// most significant digit of the flat index.
class StateVector {
  public:
    explicit StateVector(std::vector<std::size_t> dims);
    StateVector(std::vector<std::size_t> dims, std::vector<Complex> amplitudes);

    static StateVector basis(std::vector<std::size_t> dims, std::size_t flat_index);

    const std::vector<std::size_t> &dims() const { return dims_; }
    std::size_t size() const { return amps_.size(); }

    Complex operator[](std::size_t i) const { return amps_[i]; }
    Complex &operator[](std::size_t i) { return amps_[i]; }

    std::span<const Complex> amplitudes() const { return amps_; }

    /// Flat index for a two-subsystem state.
    std::size_t pair_index(std::size_t first, std::size_t second) const {
        return first * dims_[1] + second;
    }

    double norm_squared() const;

  private:
    std::vector<std::size_t> dims_;
    std::vector<Complex> amps_;
};

StateVector operator+(const StateVector &a, const StateVector &b);
StateVector operator*(Complex c, const StateVector &s);

/// Product state a (x) b; dims are concatenated.
StateVector tensor(const StateVector &a, const StateVector &b);

/// op|i> = phase[i] |target[i]>.
class SignedPermutationOp {
  public:
    SignedPermutationOp(std::vector<std::size_t> target, std::vector<Complex> phase);

    static SignedPermutationOp identity(std::size_t dim);

    std::size_t dim() const { return target_.size(); }
    std::size_t target(std::size_t i) const { return target_[i]; }
    Complex phase(std::size_t i) const { return phase_[i]; }

    SignedPermutationOp inverse() const;
    /// Integer power; negative exponents use the inverse.
    SignedPermutationOp pow(long exponent) const;

    bool operator==(const SignedPermutationOp &) const = default;

    DenseOp dense() const;

  private:
    std::vector<std::size_t> target_;
    std::vector<Complex> phase_;
};

/// Product a*b (b acts first).
SignedPermutationOp operator*(const SignedPermutationOp &a, const SignedPermutationOp &b);

/// (a (x) b) on a two-subsystem index space.
SignedPermutationOp kron(const SignedPermutationOp &a, const SignedPermutationOp &b);

class DenseOp {
  public:
    explicit DenseOp(Eigen::MatrixXcd matrix);
    static DenseOp identity(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return m_; }
    Complex operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }

    DenseOp adjoint() const { return DenseOp(m_.adjoint()); }

  private:
    Eigen::MatrixXcd m_;
};

DenseOp operator*(const DenseOp &a, const DenseOp &b);
DenseOp kron(const DenseOp &a, const DenseOp &b);

/// Structured map on a flat index space partitioned into classes of equal
/// size B. Input index i sits at slot in_slot[i] = class*B + position; each
/// class vector is multiplied by the same B x B block, and output slot s is
/// written to flat index out_index[s]. Never materializes the full matrix.
class BlockTransformOp {
  public:
    BlockTransformOp(std::vector<std::size_t> in_slot, std::vector<std::size_t> out_index,
                     Eigen::MatrixXcd block);

    std::size_t dim() const { return in_slot_.size(); }
    std::size_t block_size() const { return static_cast<std::size_t>(block_.rows()); }
    std::size_t class_count() const { return dim() / block_size(); }
    const Eigen::MatrixXcd &block() const { return block_; }
    std::size_t in_slot(std::size_t i) const { return in_slot_[i]; }
    std::size_t out_index(std::size_t slot) const { return out_index_[slot]; }

    DenseOp dense() const;

  private:
    std::vector<std::size_t> in_slot_;
    std::vector<std::size_t> out_index_;
    Eigen::MatrixXcd block_;
};

/// Op on subsystem `subsystem`, identity on the other factors.
StateVector apply(const SignedPermutationOp &op, std::size_t subsystem, const StateVector &s);
StateVector apply(const DenseOp &op, std::size_t subsystem, const StateVector &s);

/// Op on the whole (flattened) space.
StateVector apply(const SignedPermutationOp &op, const StateVector &s);
StateVector apply(const DenseOp &op, const StateVector &s);
StateVector apply(const BlockTransformOp &op, const StateVector &s);

/// Reduced density matrix of subsystem `keep` (0 or 1) of a two-particle state.
DenseOp partial_trace(const StateVector &s, std::size_t keep);

Complex inner(const StateVector &a, const StateVector &b);
double fidelity(const StateVector &a, const StateVector &b);
double max_abs_diff(const StateVector &a, const StateVector &b);

/// Position-readout probabilities |amplitude|^2 in flat-index order.
std::vector<double> probabilities(const StateVector &s);

/// max |U^dagger U - I|.
double unitarity_residual(const DenseOp &u);
/// max |U U - I|.
double involution_residual(const DenseOp &u);
double max_abs_diff(const DenseOp &a, const DenseOp &b);

/// Schmidt coefficients across the first/second subsystem cut, descending.
std::vector<double> schmidt_coefficients(const StateVector &s);

/// max |<a|b> - delta_ab| over a set of equally sized states, computed from
/// their supports.
double gram_max_deviation(const std::vector<StateVector> &states);

} // namespace sdc
