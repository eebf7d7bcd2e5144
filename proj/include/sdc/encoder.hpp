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
#include <optional>
#include <string>
#include <vector>

#include "sdc/bell.hpp"
#include "sdc/hadamard.hpp"
#include "sdc/hilbert.hpp"

namespace sdc {

/// O_(k_r,j) = sum_n h_{j,2n-1}|n><f(n)| + h_{j,2n}|-n><-f(n)|, a signed
/// permutation on Alice's particle.
SignedPermutationOp encode_direct_perm(std::size_t N, const HadamardMatrix &H,
                                       const BellLabel &label);
DenseOp encode_direct(std::size_t N, const HadamardMatrix &H, const BellLabel &label);

/// Label predicted by the composition law for op (k_r, j) acting on family
/// (k'_r', member 1): k'' = ((k + k' - 2) mod N) + 1, r'' = r r', member j.
BellLabel predicted_label(std::size_t N, const BellLabel &op, int k_start, int r_start);

struct ActionResult {
    BellLabel start;
    BellLabel matched;
    BellLabel predicted;
    double overlap = 0.0; // |<matched| O (x) I |start>|
    bool law_holds = false;
};

/// Applies op (x) I to bell_state(k'_r', 1) and identifies the output in the
/// Bell basis. Throws NoMatch when the best |overlap| falls below 1 - tol.
ActionResult encode_action_check(const BellBasis &basis, const BellLabel &op_label,
                                 int k_start, int r_start, double tol = 1e-10);

/// Reading of the first exponent in the O_j product form.
enum class OjExponentReading {
    /// (h_{a,2i-1} - h_{j,2i})/2 exactly as printed.
    Literal,
    /// (h_{a,2i-1} - h_{j,2i-1})/2.
    Corrected,
};

std::string to_string(OjExponentReading reading);

/// prod_i (P_i N_i P_i)^{e1(i)} N_i^{(h_{a,2i} - h_{j,2i})/2}.
SignedPermutationOp build_Oj(std::size_t N, const HadamardMatrix &H, int j, int a,
                             OjExponentReading reading);

/// True when O_j |psi_(k_r,j')> = |psi_(k_r,j'')> with h_{j''} = h_j * h_{j'}
/// entrywise, for every family and every j'.
bool oj_property_holds(const BellBasis &basis, int j, int a, OjExponentReading reading);

/// First reading (Literal, then Corrected) for which the O_j property holds
/// for all j. Throws PropertyViolated when neither does.
OjExponentReading resolve_oj_reading(const BellBasis &basis, int a = 1);

/// F_{k_r} = L_+^{(1-k)} prod_i P_i^{(1-r)/2}.
SignedPermutationOp build_Fk(std::size_t N, int k, int r);

struct FamilyShiftReport {
    std::size_t checked = 0;
    /// Output equals psi_(k''_r'', j') up to a global phase.
    std::size_t member_preserved = 0;
    /// Output is some Bell basis state (any member).
    std::size_t bell_outputs = 0;
};

/// Measures F_{k_r} |psi_(k'_r', j')> = |psi_(k''_r'', j')> over all
/// operators and all inputs.
FamilyShiftReport check_family_shift(const BellBasis &basis, double tol = 1e-10);

/// Operator order in O_(k_r,j) = F_{k_r} O_j.
enum class ProductOrder {
    /// F_{k_r} * O_j: O_j acts first, as printed.
    FamilyTimesMember,
    /// O_j * F_{k_r}: F acts first.
    MemberTimesFamily,
};

std::string to_string(ProductOrder order);

struct CompositionReading {
    OjExponentReading exponent = OjExponentReading::Corrected;
    ProductOrder order = ProductOrder::FamilyTimesMember;
    int a = 1;
};

SignedPermutationOp encode_composed(std::size_t N, const HadamardMatrix &H,
                                    const BellLabel &label, const CompositionReading &reading);

struct EquivalenceReport {
    std::size_t checked = 0;
    std::size_t label_mismatches = 0;
    /// max over inputs of |composed psi - phase * direct psi|.
    double max_state_residual = 0.0;
    /// max over labels of min_phase |composed - phase * direct| as matrices.
    double max_matrix_residual = 0.0;
    bool equivalent(double tol) const {
        return label_mismatches == 0 && max_state_residual < tol;
    }
};

/// Composed against direct, acting on every member-1 Bell state.
EquivalenceReport compare_composed_direct(const BellBasis &basis,
                                          const CompositionReading &reading);

/// Resolves the exponent reading, then keeps the printed operator order if it
/// reproduces the direct action on member-1 states and swaps it otherwise.
/// Throws PropertyViolated if neither order does.
CompositionReading resolve_composition(const BellBasis &basis, int a = 1, double tol = 1e-10);

struct MemberSweepReport {
    std::size_t checked = 0;
    std::size_t bell_outputs = 0;
};

/// How many O_(k_r,j) |psi_(k'_r',j')> with arbitrary j' land on a Bell state.
MemberSweepReport sweep_all_members(const BellBasis &basis, double tol = 1e-10);

struct EncodeOp {
    BellLabel label;
    DenseOp direct;
    std::optional<DenseOp> composed;
};

EncodeOp make_encode_op(const BellBasis &basis, const BellLabel &label,
                        const std::optional<CompositionReading> &reading);

} // namespace sdc
