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

#include "sdc/encoder.hpp"

#include <cmath>

#include "sdc/error.hpp"
#include "sdc/gates.hpp"

namespace sdc {

namespace {

std::size_t idx(int label, std::size_t N) {
    return label_to_index(PositionLabel(label), N).value;
}

/// Global phase c minimizing |b - c a| for states that should agree up to
/// phase, and the residual under it.
std::pair<Complex, double> phase_residual(const StateVector &a, const StateVector &b) {
    const Complex ov = inner(a, b);
    const Complex ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex{1.0, 0.0};
    return {ph, max_abs_diff(ph * a, b)};
}

double matrix_phase_residual(const DenseOp &a, const DenseOp &b) {
    const Complex tr = (a.matrix().adjoint() * b.matrix()).trace();
    const Complex ph = std::abs(tr) > 0.0 ? tr / std::abs(tr) : Complex{1.0, 0.0};
    return (ph * a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

/// Row index whose entries equal the entrywise product of rows x and y.
std::optional<int> product_row(const HadamardMatrix &H, int x, int y) {
    for (int z = 1; z <= static_cast<int>(H.order()); ++z) {
        bool ok = true;
        for (int c = 1; c <= static_cast<int>(H.order()) && ok; ++c)
            ok = H.h(z, c) == H.h(x, c) * H.h(y, c);
        if (ok)
            return z;
    }
    return std::nullopt;
}

} // namespace

SignedPermutationOp encode_direct_perm(std::size_t N, const HadamardMatrix &H,
                                       const BellLabel &label) {
    if (H.order() != 2 * N)
        fail(ErrorCode::OrderMismatch, "Hadamard order must be 2N");
    validate_label(label, N);
    const std::size_t d = 2 * N;
    const ModularMap fk(N, label.k, label.r);
    std::vector<std::size_t> t(d);
    std::vector<Complex> p(d);
    for (int n = 1; n <= static_cast<int>(N); ++n) {
        const int m = fk(n);
        t[idx(m, N)] = idx(n, N);
        p[idx(m, N)] = H.h(label.j, 2 * n - 1);
        t[idx(-m, N)] = idx(-n, N);
        p[idx(-m, N)] = H.h(label.j, 2 * n);
    }
    return SignedPermutationOp(std::move(t), std::move(p));
}

DenseOp encode_direct(std::size_t N, const HadamardMatrix &H, const BellLabel &label) {
    return encode_direct_perm(N, H, label).dense();
}

BellLabel predicted_label(std::size_t N, const BellLabel &op, int k_start, int r_start) {
    return BellLabel{wrap1(op.k + k_start - 1, static_cast<long>(N)), op.r * r_start, op.j};
}

ActionResult encode_action_check(const BellBasis &basis, const BellLabel &op_label,
                                 int k_start, int r_start, double tol) {
    const std::size_t N = basis.N();
    const BellLabel start{k_start, r_start, 1};
    const auto op = encode_direct_perm(N, basis.hadamard(), op_label);
    const StateVector out = apply(op, 0, basis.state(start));
    const auto match = basis.identify(out);
    ActionResult res{start, match.label, predicted_label(N, op_label, k_start, r_start),
                     std::abs(match.overlap), false};
    if (res.overlap < 1.0 - tol)
        fail(ErrorCode::NoMatch, "O" + to_string(op_label) + " on " + to_string(start) +
                                     " is not a Bell state (best overlap " +
                                     std::to_string(res.overlap) + ")");
    res.law_holds = res.matched == res.predicted;
    return res;
}

std::string to_string(OjExponentReading reading) {
    return reading == OjExponentReading::Literal ? "literal" : "corrected";
}

SignedPermutationOp build_Oj(std::size_t N, const HadamardMatrix &H, int j, int a,
                             OjExponentReading reading) {
    const int d = static_cast<int>(2 * N);
    if (j < 1 || j > d || a < 1 || a > d)
        fail(ErrorCode::ArgOutOfRange, "O_j needs 1 <= j, a <= 2N");
    auto out = SignedPermutationOp::identity(2 * N);
    for (int i = 1; i <= static_cast<int>(N); ++i) {
        const int first_col = reading == OjExponentReading::Literal ? 2 * i : 2 * i - 1;
        const long e1 = (H.h(a, 2 * i - 1) - H.h(j, first_col)) / 2;
        const long e2 = (H.h(a, 2 * i) - H.h(j, 2 * i)) / 2;
        const auto P = gate_Pn(N, i);
        const auto Nn = gate_Nn(N, i);
        out = out * (P * Nn * P).pow(e1) * Nn.pow(e2);
    }
    return out;
}

bool oj_property_holds(const BellBasis &basis, int j, int a, OjExponentReading reading) {
    const std::size_t N = basis.N();
    const auto &H = basis.hadamard();
    const auto op = build_Oj(N, H, j, a, reading);
    for (int jp = 1; jp <= static_cast<int>(2 * N); ++jp) {
        const auto jpp = product_row(H, j, jp);
        if (!jpp)
            return false;
        for (int k = 1; k <= static_cast<int>(N); ++k) {
            for (int r : {1, -1}) {
                const StateVector out = apply(op, 0, basis.state({k, r, jp}));
                if (max_abs_diff(out, basis.state({k, r, *jpp})) > 1e-12)
                    return false;
            }
        }
    }
    return true;
}

OjExponentReading resolve_oj_reading(const BellBasis &basis, int a) {
    for (auto reading : {OjExponentReading::Literal, OjExponentReading::Corrected}) {
        bool ok = true;
        for (int j = 1; j <= static_cast<int>(2 * basis.N()) && ok; ++j)
            ok = oj_property_holds(basis, j, a, reading);
        if (ok)
            return reading;
    }
    fail(ErrorCode::PropertyViolated, "neither exponent reading of O_j has the member "
                                      "product property (N = " +
                                          std::to_string(basis.N()) +
                                          ", a = " + std::to_string(a) + ")");
}

SignedPermutationOp build_Fk(std::size_t N, int k, int r) {
    if (k < 1 || k > static_cast<int>(N) || (r != 1 && r != -1))
        fail(ErrorCode::ArgOutOfRange, "F_{k_r} needs 1 <= k <= N and r = +-1");
    auto flips = SignedPermutationOp::identity(2 * N);
    for (int i = 1; i <= static_cast<int>(N); ++i)
        flips = flips * gate_Pn(N, i).pow((1 - r) / 2);
    return gate_Lplus(N, 1 - k) * flips;
}

FamilyShiftReport check_family_shift(const BellBasis &basis, double tol) {
    const std::size_t N = basis.N();
    FamilyShiftReport rep;
    for (int k = 1; k <= static_cast<int>(N); ++k) {
        for (int r : {1, -1}) {
            const auto F = build_Fk(N, k, r);
            for (std::size_t m = 0; m < message_count(N); ++m) {
                const BellLabel in = label_of(m, N);
                const StateVector out = apply(F, 0, basis.state(in));
                const BellLabel want{wrap1(k + in.k - 1, static_cast<long>(N)), r * in.r, in.j};
                ++rep.checked;
                if (std::abs(basis.identify(out).overlap) > 1.0 - tol)
                    ++rep.bell_outputs;
                if (phase_residual(basis.state(want), out).second < tol)
                    ++rep.member_preserved;
            }
        }
    }
    return rep;
}

std::string to_string(ProductOrder order) {
    return order == ProductOrder::FamilyTimesMember ? "F*Oj" : "Oj*F";
}

SignedPermutationOp encode_composed(std::size_t N, const HadamardMatrix &H,
                                    const BellLabel &label, const CompositionReading &reading) {
    validate_label(label, N);
    const auto F = build_Fk(N, label.k, label.r);
    const auto Oj = build_Oj(N, H, label.j, reading.a, reading.exponent);
    return reading.order == ProductOrder::FamilyTimesMember ? F * Oj : Oj * F;
}

EquivalenceReport compare_composed_direct(const BellBasis &basis,
                                          const CompositionReading &reading) {
    const std::size_t N = basis.N();
    const auto &H = basis.hadamard();
    EquivalenceReport rep;
    for (std::size_t m = 0; m < message_count(N); ++m) {
        const BellLabel lab = label_of(m, N);
        const auto direct = encode_direct_perm(N, H, lab);
        const auto composed = encode_composed(N, H, lab, reading);
        rep.max_matrix_residual = std::max(
            rep.max_matrix_residual, matrix_phase_residual(direct.dense(), composed.dense()));
        for (int k = 1; k <= static_cast<int>(N); ++k) {
            for (int r : {1, -1}) {
                const StateVector start = basis.state({k, r, 1});
                const StateVector a = apply(direct, 0, start);
                const StateVector b = apply(composed, 0, start);
                ++rep.checked;
                if (!(basis.identify(a).label == basis.identify(b).label))
                    ++rep.label_mismatches;
                rep.max_state_residual =
                    std::max(rep.max_state_residual, phase_residual(a, b).second);
            }
        }
    }
    return rep;
}

CompositionReading resolve_composition(const BellBasis &basis, int a, double tol) {
    CompositionReading reading;
    reading.a = a;
    reading.exponent = resolve_oj_reading(basis, a);
    for (auto order : {ProductOrder::FamilyTimesMember, ProductOrder::MemberTimesFamily}) {
        reading.order = order;
        if (compare_composed_direct(basis, reading).equivalent(tol))
            return reading;
    }
    fail(ErrorCode::PropertyViolated, "composed operators do not reproduce the direct "
                                      "encoding at N = " +
                                          std::to_string(basis.N()) + " in either order");
}

MemberSweepReport sweep_all_members(const BellBasis &basis, double tol) {
    const std::size_t N = basis.N();
    MemberSweepReport rep;
    for (std::size_t m = 0; m < message_count(N); ++m) {
        const auto op = encode_direct_perm(N, basis.hadamard(), label_of(m, N));
        for (std::size_t s = 0; s < message_count(N); ++s) {
            ++rep.checked;
            const auto out = apply(op, 0, basis.state(label_of(s, N)));
            if (std::abs(basis.identify(out).overlap) > 1.0 - tol)
                ++rep.bell_outputs;
        }
    }
    return rep;
}

EncodeOp make_encode_op(const BellBasis &basis, const BellLabel &label,
                        const std::optional<CompositionReading> &reading) {
    EncodeOp op{label, encode_direct(basis.N(), basis.hadamard(), label), std::nullopt};
    if (reading)
        op.composed = encode_composed(basis.N(), basis.hadamard(), label, *reading).dense();
    return op;
}

} // namespace sdc
