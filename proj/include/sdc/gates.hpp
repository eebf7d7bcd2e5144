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

#include <cstddef>
#include <string>

#include "sdc/hadamard.hpp"
#include "sdc/hilbert.hpp"

namespace sdc {

/// N_n: +1 on |+n>, -1 on |-n>, identity on the other channels.
SignedPermutationOp gate_Nn(std::size_t N, int n);
/// P_n: swaps |+n> and |-n>.
SignedPermutationOp gate_Pn(std::size_t N, int n);
/// L_+^power: |+-n> -> |+-(((n - 1 + power) mod N) + 1)>.
SignedPermutationOp gate_Lplus(std::size_t N, long power);
/// Position Hadamard on the (+n, -n) block: (P_n + N_n)/sqrt(2) there,
/// identity on the remaining channels.
DenseOp gate_Hxn(std::size_t N, int n);
/// H_{x_1} H_{x_2} ... H_{x_N}.
DenseOp gate_Hx_all(std::size_t N);
/// Two-particle position-controlled swap: flips the second label's sign
/// when the first label is negative.
SignedPermutationOp gate_PCS(std::size_t N);

/// How the coefficient h and the 1/sqrt(N) prefactor of U_(N) combine.
enum class UnReading {
    /// h taken as a normalized entry (+-1/sqrt(N)) and the 1/sqrt(N)
    /// prefactor applied on top.
    DoubleNormalized,
    /// h taken as a +-1 entry with the 1/sqrt(N) prefactor.
    SignTimesPrefactor,
};

std::string to_string(UnReading reading);

/// U_(N) as a structured operator: within each (sign_A, sign_B, l - m mod N)
/// class it applies the reading's scaled order-N Hadamard to Bob's label.
BlockTransformOp gate_UN_structured(std::size_t N, const HadamardMatrix &HN, UnReading reading);

/// Dense U_(N) assembled column by column straight from the defining sum.
DenseOp gate_UN_dense(std::size_t N, const HadamardMatrix &HN, UnReading reading);

struct UnGate {
    BlockTransformOp op;
    UnReading reading;
    double unitarity_residual;
    double involution_residual;
};

/// Tries DoubleNormalized, then SignTimesPrefactor, and returns the first that
/// is a unitary involution within `tol`; throws NonUnitaryResolution otherwise.
UnGate gate_UN(std::size_t N, const HadamardMatrix &HN, double tol = 1e-10);

} // namespace sdc
