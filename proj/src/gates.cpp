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

#include "sdc/gates.hpp"

#include <cmath>

#include "sdc/bell.hpp"
#include "sdc/error.hpp"

namespace sdc {

namespace {

void require_site(std::size_t N, int n) {
    if (n < 1 || n > static_cast<int>(N))
        fail(ErrorCode::ArgOutOfRange, "channel " + std::to_string(n) + " outside [1, " +
                                           std::to_string(N) + "]");
}

std::size_t idx(int label, std::size_t N) {
    return label_to_index(PositionLabel(label), N).value;
}

double reading_factor(UnReading reading, std::size_t N) {
    const double s = 1.0 / std::sqrt(static_cast<double>(N));
    return reading == UnReading::DoubleNormalized ? s * s : s;
}

} // namespace

SignedPermutationOp gate_Nn(std::size_t N, int n) {
    require_site(N, n);
    std::vector<std::size_t> t(2 * N);
    std::vector<Complex> p(2 * N, 1.0);
    for (std::size_t i = 0; i < 2 * N; ++i)
        t[i] = i;
    p[idx(-n, N)] = -1.0;
    return SignedPermutationOp(std::move(t), std::move(p));
}

SignedPermutationOp gate_Pn(std::size_t N, int n) {
    require_site(N, n);
    std::vector<std::size_t> t(2 * N);
    for (std::size_t i = 0; i < 2 * N; ++i)
        t[i] = i;
    std::swap(t[idx(n, N)], t[idx(-n, N)]);
    return SignedPermutationOp(std::move(t), std::vector<Complex>(2 * N, 1.0));
}

SignedPermutationOp gate_Lplus(std::size_t N, long power) {
    if (N == 0)
        fail(ErrorCode::ArgOutOfRange, "N must be positive");
    std::vector<std::size_t> t(2 * N);
    for (int n = 1; n <= static_cast<int>(N); ++n) {
        const int shifted = wrap1(n + power, static_cast<long>(N));
        t[idx(n, N)] = idx(shifted, N);
        t[idx(-n, N)] = idx(-shifted, N);
    }
    return SignedPermutationOp(std::move(t), std::vector<Complex>(2 * N, 1.0));
}

DenseOp gate_Hxn(std::size_t N, int n) {
    require_site(N, n);
    const Eigen::MatrixXcd sum = (gate_Pn(N, n).dense().matrix() + gate_Nn(N, n).dense().matrix()) /
                     std::sqrt(2.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(2 * N),
                                                    static_cast<Eigen::Index>(2 * N));
    for (int a : {n, -n})
        for (int b : {n, -n}) {
            const auto r = static_cast<Eigen::Index>(idx(a, N));
            const auto c = static_cast<Eigen::Index>(idx(b, N));
            m(r, c) = sum(r, c);
        }
    return DenseOp(std::move(m));
}

DenseOp gate_Hx_all(std::size_t N) {
    DenseOp out = DenseOp::identity(2 * N);
    for (int n = 1; n <= static_cast<int>(N); ++n)
        out = out * gate_Hxn(N, n);
    return out;
}

SignedPermutationOp gate_PCS(std::size_t N) {
    const std::size_t d = 2 * N;
    std::vector<std::size_t> t(d * d);
    for (std::size_t a = 0; a < d; ++a) {
        const bool control = !index_to_label(BasisIndex{a}, N).positive();
        for (std::size_t b = 0; b < d; ++b) {
            const int m = index_to_label(BasisIndex{b}, N).value();
            t[a * d + b] = a * d + (control ? idx(-m, N) : b);
        }
    }
    return SignedPermutationOp(std::move(t), std::vector<Complex>(d * d, 1.0));
}

std::string to_string(UnReading reading) {
    switch (reading) {
    case UnReading::DoubleNormalized: return "normalized-h-with-prefactor";
    case UnReading::SignTimesPrefactor: return "unit-h-with-prefactor";
    }
    return "unknown";
}

BlockTransformOp gate_UN_structured(std::size_t N, const HadamardMatrix &HN, UnReading reading) {
    if (HN.order() != N)
        fail(ErrorCode::OrderMismatch, "U_(N) needs an order-N Hadamard, got order " +
                                           std::to_string(HN.order()));
    const std::size_t d = 2 * N;
    const double factor = reading_factor(reading, N);
    std::vector<std::size_t> in_slot(d * d);
    std::vector<std::size_t> out_index(d * d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            const auto la = index_to_label(BasisIndex{a}, N);
            const auto lb = index_to_label(BasisIndex{b}, N);
            const std::size_t diff =
                static_cast<std::size_t>(la.magnitude() - lb.magnitude() + static_cast<int>(N)) % N;
            const std::size_t cls =
                ((la.positive() ? 0 : 2) + (lb.positive() ? 0 : 1)) * N + diff;
            in_slot[a * d + b] = cls * N + static_cast<std::size_t>(lb.magnitude() - 1);
        }
    }
    for (std::size_t cls = 0; cls < 4 * N; ++cls) {
        const int sa = (cls / N) / 2 == 0 ? 1 : -1;
        const int sb = (cls / N) % 2 == 0 ? 1 : -1;
        const auto diff = static_cast<long>(cls % N);
        for (std::size_t q = 0; q < N; ++q) {
            const int alice = sa * wrap1(static_cast<long>(q) + diff + 1, static_cast<long>(N));
            const int bob = sb * static_cast<int>(q + 1);
            out_index[cls * N + q] = idx(alice, N) * d + idx(bob, N);
        }
    }
    const auto n = static_cast<Eigen::Index>(N);
    Eigen::MatrixXcd block(n, n);
    for (Eigen::Index q = 0; q < n; ++q)
        for (Eigen::Index p = 0; p < n; ++p)
            block(q, p) = factor * HN.h(static_cast<long>(p + 1), static_cast<long>(q + 1));
    return BlockTransformOp(std::move(in_slot), std::move(out_index), std::move(block));
}

DenseOp gate_UN_dense(std::size_t N, const HadamardMatrix &HN, UnReading reading) {
    if (HN.order() != N)
        fail(ErrorCode::OrderMismatch, "U_(N) needs an order-N Hadamard, got order " +
                                           std::to_string(HN.order()));
    const std::size_t d = 2 * N;
    const double factor = reading_factor(reading, N);
    const auto dim = static_cast<Eigen::Index>(d * d);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            const auto la = index_to_label(BasisIndex{a}, N);
            const auto lb = index_to_label(BasisIndex{b}, N);
            const int l = la.magnitude(), mm = lb.magnitude();
            const ModularMap fl(N, l, la.positive() ? 1 : -1);
            const ModularMap fm(N, mm, lb.positive() ? 1 : -1);
            for (int n = 1; n <= static_cast<int>(N); ++n) {
                const double coeff =
                    factor * HN.h(mm, wrap1(mm + n - 1, static_cast<long>(N)));
                const std::size_t row = idx(fl(n), N) * d + idx(fm(n), N);
                m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(a * d + b)) += coeff;
            }
        }
    }
    return DenseOp(std::move(m));
}

UnGate gate_UN(std::size_t N, const HadamardMatrix &HN, double tol) {
    for (auto reading : {UnReading::DoubleNormalized, UnReading::SignTimesPrefactor}) {
        auto op = gate_UN_structured(N, HN, reading);
        const DenseOp block(op.block());
        const double u = unitarity_residual(block);
        const double inv = involution_residual(block);
        if (u < tol && inv < tol)
            return UnGate{std::move(op), reading, u, inv};
    }
    fail(ErrorCode::NonUnitaryResolution,
         "no reading of U_(N) is a unitary involution at N = " + std::to_string(N));
}

} // namespace sdc
