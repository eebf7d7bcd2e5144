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

#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sdc/encoder.hpp"
#include "sdc/error.hpp"

namespace {

using sdc::BellLabel;
using sdc::Complex;

Eigen::VectorXcd to_eigen(const sdc::StateVector &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

// O_(k_r, j) from its defining sum: h_{j,2n-1} |n><f(n)| + h_{j,2n} |-n><-f(n)|.
Eigen::MatrixXcd direct_oracle(long N, long k, long r, long j) {
    const auto h = oracle::sylvester(static_cast<std::size_t>(2 * N));
    Eigen::MatrixXcd O = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    for (long n = 1; n <= N; ++n) {
        const long fn = oracle::family_map(n, k, r, N);
        O(oracle::pos_index(n, N), oracle::pos_index(fn, N)) += h(j - 1, 2 * n - 2);
        O(oracle::pos_index(-n, N), oracle::pos_index(-fn, N)) += h(j - 1, 2 * n - 1);
    }
    return O;
}

} // namespace

TEST(Encoder, DirectMatchesDefiningSum) {
    for (long N : {1L, 2L, 4L}) {
        const auto H = sdc::build_hadamard(std::size_t(2 * N));
        for (const auto &l : oracle::labels(N)) {
            const BellLabel label{int(l.k), int(l.r), int(l.j)};
            const auto op = sdc::encode_direct(std::size_t(N), H, label);
            EXPECT_EQ((op.matrix() - direct_oracle(N, l.k, l.r, l.j)).cwiseAbs().maxCoeff(), 0.0);
            EXPECT_LT(sdc::unitarity_residual(op), 1e-12);
            // One +-1 per row and column.
            for (long i = 0; i < 2 * N; ++i) {
                int nz_row = 0, nz_col = 0;
                for (long c = 0; c < 2 * N; ++c) {
                    const Complex x = op.matrix()(i, c), y = op.matrix()(c, i);
                    if (x != Complex{}) {
                        EXPECT_EQ(std::abs(x), 1.0);
                        ++nz_row;
                    }
                    if (y != Complex{}) ++nz_col;
                }
                EXPECT_EQ(nz_row, 1);
                EXPECT_EQ(nz_col, 1);
            }
        }
    }
}

TEST(Encoder, IdentityAndGlobalFlip) {
    for (std::size_t N : {1u, 2u, 4u}) {
        const auto H = sdc::build_hadamard(2 * N);
        EXPECT_EQ(sdc::encode_direct_perm(N, H, {1, 1, 1}), sdc::SignedPermutationOp::identity(2 * N));
        const auto flip = sdc::encode_direct_perm(N, H, {1, -1, 1});
        for (int n = 1; n <= int(N); ++n)
            EXPECT_EQ(flip.target(oracle::pos_index(n, long(N))),
                      std::size_t(oracle::pos_index(-n, long(N))));
        const sdc::BellBasis basis(N, H);
        const auto res = sdc::encode_action_check(basis, {1, -1, 1}, 1, -1);
        EXPECT_EQ(res.matched, (BellLabel{1, 1, 1}));
        EXPECT_TRUE(res.law_holds);
    }
}

// Independent sweep: dense O (x) I against the naive Bell matrix.
TEST(Encoder, ActionLawExhaustive) {
    for (long N : {1L, 2L, 4L}) {
        const auto H = sdc::build_hadamard(std::size_t(2 * N));
        const auto h = oracle::sylvester(std::size_t(2 * N));
        const Eigen::MatrixXcd B = oracle::bell_matrix(N);
        const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2 * N, 2 * N);
        const sdc::BellBasis basis(std::size_t(N), H);
        for (const auto &op : oracle::labels(N)) {
            const Eigen::MatrixXcd O = oracle::kron(direct_oracle(N, op.k, op.r, op.j), I);
            for (long kp = 1; kp <= N; ++kp)
                for (long rp : {1L, -1L}) {
                    const Eigen::VectorXcd out = O * oracle::bell(N, kp, rp, 1, h);
                    const auto [col, ov] = oracle::best_column(B, out);
                    const long want_k = ((op.k + kp - 2) % N) + 1;
                    EXPECT_EQ(col, oracle::message(want_k, op.r * rp, op.j, N));
                    EXPECT_GE(ov, 1.0 - 1e-10);

                    const auto res = sdc::encode_action_check(basis, {int(op.k), int(op.r), int(op.j)},
                                                              int(kp), int(rp));
                    EXPECT_TRUE(res.law_holds);
                    EXPECT_EQ(sdc::message_of(res.matched, std::size_t(N)), std::size_t(col));
                }
        }
    }
}

TEST(Encoder, FamilyActionIsABijection) {
    for (std::size_t N : {1u, 2u, 4u}) {
        const sdc::BellBasis basis(N, sdc::build_hadamard(2 * N));
        for (const auto &op : sdc::all_labels(N)) {
            std::set<std::pair<int, int>> image;
            for (int k = 1; k <= int(N); ++k)
                for (int r : {1, -1}) {
                    const auto res = sdc::encode_action_check(basis, op, k, r);
                    image.insert({res.matched.k, res.matched.r});
                }
            EXPECT_EQ(image.size(), 2 * N);
        }
    }
}

TEST(Encoder, BobReducedStateUnchanged) {
    for (std::size_t N : {1u, 2u, 4u}) {
        const auto H = sdc::build_hadamard(2 * N);
        const sdc::BellBasis basis(N, H);
        const auto d = static_cast<Eigen::Index>(2 * N);
        const Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(d, d) / double(d);
        for (const auto &op : sdc::all_labels(N)) {
            const auto out = sdc::apply(sdc::encode_direct_perm(N, H, op), 0, basis.state({1, -1, 1}));
            EXPECT_LT((sdc::partial_trace(out, 1).matrix() - target).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Encoder, LiteralExponentFailsAtNOne) {
    const sdc::BellBasis basis(1, sdc::build_hadamard(2));
    EXPECT_FALSE(sdc::oj_property_holds(basis, 2, 1, sdc::OjExponentReading::Literal));
    EXPECT_TRUE(sdc::oj_property_holds(basis, 2, 1, sdc::OjExponentReading::Corrected));
    EXPECT_EQ(sdc::resolve_oj_reading(basis), sdc::OjExponentReading::Corrected);
}

TEST(Encoder, CorrectedExponentMultipliesRows) {
    for (std::size_t N : {1u, 2u, 4u}) {
        const auto H = sdc::build_hadamard(2 * N);
        const sdc::BellBasis basis(N, H);
        for (int j = 1; j <= int(2 * N); ++j) {
            EXPECT_TRUE(sdc::oj_property_holds(basis, j, 1, sdc::OjExponentReading::Corrected));
            // O_j is diagonal with h_{j,2n-1} on +n and h_{j,2n} on -n.
            const auto Oj = sdc::build_Oj(N, H, j, 1, sdc::OjExponentReading::Corrected);
            for (int n = 1; n <= int(N); ++n) {
                const auto p = std::size_t(oracle::pos_index(n, long(N)));
                const auto q = std::size_t(oracle::pos_index(-n, long(N)));
                EXPECT_EQ(Oj.target(p), p);
                EXPECT_EQ(Oj.phase(p), Complex(H.h(j, 2 * n - 1)));
                EXPECT_EQ(Oj.phase(q), Complex(H.h(j, 2 * n)));
            }
        }
        EXPECT_EQ(sdc::build_Oj(N, H, 1, 1, sdc::OjExponentReading::Corrected),
                  sdc::SignedPermutationOp::identity(2 * N));
    }
}

TEST(Encoder, MemberCompositionClosure) {
    const std::size_t N = 2;
    const auto H = sdc::build_hadamard(4);
    for (int j = 1; j <= 4; ++j)
        for (int jp = 1; jp <= 4; ++jp) {
            const auto prod = sdc::build_Oj(N, H, j, 1, sdc::OjExponentReading::Corrected) *
                              sdc::build_Oj(N, H, jp, 1, sdc::OjExponentReading::Corrected);
            int jpp = 0;
            for (int c = 1; c <= 4; ++c) {
                bool same = true;
                for (int i = 1; i <= 4; ++i) same &= H.h(c, i) == H.h(j, i) * H.h(jp, i);
                if (same) jpp = c;
            }
            ASSERT_GT(jpp, 0);
            EXPECT_EQ(prod, sdc::build_Oj(N, H, jpp, 1, sdc::OjExponentReading::Corrected));
        }
}

TEST(Encoder, OtherReferenceRowsViolateTheProperty) {
    const sdc::BellBasis basis(2, sdc::build_hadamard(4));
    EXPECT_THROW(sdc::resolve_oj_reading(basis, 2), sdc::SdcError);
    EXPECT_THROW(sdc::build_Oj(2, sdc::build_hadamard(4), 5, 1, sdc::OjExponentReading::Corrected),
                 sdc::SdcError);
}

TEST(Encoder, FamilyShiftOperator) {
    for (std::size_t N : {1u, 2u, 4u}) {
        EXPECT_EQ(sdc::build_Fk(N, 1, 1), sdc::SignedPermutationOp::identity(2 * N));
        const auto flip = sdc::build_Fk(N, 1, -1);
        for (int n = 1; n <= int(N); ++n)
            EXPECT_EQ(flip.target(oracle::pos_index(n, long(N))),
                      std::size_t(oracle::pos_index(-n, long(N))));
    }
    EXPECT_THROW(sdc::build_Fk(2, 3, 1), sdc::SdcError);

    // F_(2+) takes (1+, j) to (2+, j) at N = 2.
    const sdc::BellBasis basis(2, sdc::build_hadamard(4));
    for (int j = 1; j <= 4; ++j) {
        const auto out = sdc::apply(sdc::build_Fk(2, 2, 1), 0, basis.state({1, 1, j}));
        EXPECT_EQ(basis.identify(out).label, (BellLabel{2, 1, j}));
    }
}

TEST(Encoder, FamilyShiftKeepsMembersOnlyForSmallN) {
    for (std::size_t N : {1u, 2u}) {
        const auto rep = sdc::check_family_shift(sdc::BellBasis(N, sdc::build_hadamard(2 * N)));
        EXPECT_EQ(rep.member_preserved, rep.checked);
    }
    const auto rep4 = sdc::check_family_shift(sdc::BellBasis(4, sdc::build_hadamard(8)));
    EXPECT_EQ(rep4.bell_outputs, rep4.checked);
    EXPECT_LT(rep4.member_preserved, rep4.checked);
    const auto rep8 = sdc::check_family_shift(sdc::BellBasis(8, sdc::build_hadamard(16)));
    EXPECT_LT(rep8.bell_outputs, rep8.checked);
}

TEST(Encoder, CompositionOrders) {
    for (std::size_t N : {1u, 2u, 4u}) {
        const sdc::BellBasis basis(N, sdc::build_hadamard(2 * N));
        const sdc::CompositionReading fo{sdc::OjExponentReading::Corrected,
                                         sdc::ProductOrder::FamilyTimesMember, 1};
        const sdc::CompositionReading of{sdc::OjExponentReading::Corrected,
                                         sdc::ProductOrder::MemberTimesFamily, 1};
        const auto a = sdc::compare_composed_direct(basis, fo);
        const auto b = sdc::compare_composed_direct(basis, of);
        EXPECT_EQ(a.checked, 8 * N * N * N);
        EXPECT_TRUE(b.equivalent(1e-10));
        EXPECT_EQ(b.max_matrix_residual, 0.0);
        if (N <= 2) {
            EXPECT_TRUE(a.equivalent(1e-10));
            EXPECT_EQ(sdc::resolve_composition(basis).order, sdc::ProductOrder::FamilyTimesMember);
        } else {
            EXPECT_GT(a.label_mismatches, 0u);
            EXPECT_EQ(sdc::resolve_composition(basis).order, sdc::ProductOrder::MemberTimesFamily);
        }
    }
}

TEST(Encoder, ComposedIdentity) {
    const auto H = sdc::build_hadamard(4);
    const sdc::CompositionReading reading{};
    EXPECT_EQ(sdc::encode_composed(2, H, {1, 1, 1}, reading), sdc::SignedPermutationOp::identity(4));
    const sdc::BellBasis basis(2, H);
    // F*O_j reproduces the direct matrix up to a global sign at N = 2.
    std::size_t negated = 0;
    for (const auto &l : sdc::all_labels(2)) {
        const auto op = sdc::make_encode_op(basis, l, reading);
        ASSERT_TRUE(op.composed.has_value());
        const Eigen::MatrixXcd d = op.direct.matrix(), c = op.composed->matrix();
        const bool same = (d - c).cwiseAbs().maxCoeff() < 1e-15;
        const bool flipped = (d + c).cwiseAbs().maxCoeff() < 1e-15;
        EXPECT_TRUE(same || flipped) << sdc::to_string(l);
        if (flipped) ++negated;
    }
    EXPECT_EQ(negated, 6u);
}

TEST(Encoder, OtherMembersMeasured) {
    // Not part of the stated law; these counts pin the measured behaviour.
    for (std::size_t N : {1u, 2u, 4u}) {
        const auto rep = sdc::sweep_all_members(sdc::BellBasis(N, sdc::build_hadamard(2 * N)));
        EXPECT_EQ(rep.checked, 16 * N * N * N * N);
        EXPECT_EQ(rep.bell_outputs, rep.checked);
    }
    const auto rep8 = sdc::sweep_all_members(sdc::BellBasis(8, sdc::build_hadamard(16)));
    EXPECT_EQ(rep8.bell_outputs, 49152u);
}
