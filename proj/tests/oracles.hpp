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

// Reference constructions for the tests. These are written from the defining
// formulas with plain Eigen and do not call into the library's builders.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

// Sylvester recursion H_{2m} = [[H, H], [H, -H]] with unnormalized entries.
inline Eigen::MatrixXi sylvester(std::size_t order) {
    Eigen::MatrixXi h = Eigen::MatrixXi::Ones(1, 1);
    while (static_cast<std::size_t>(h.rows()) < order) {
        const auto m = h.rows();
        Eigen::MatrixXi next(2 * m, 2 * m);
        next << h, h, h, -h;
        h = next;
    }
    return h;
}

inline long pos_index(long label, long N) { return label > 0 ? label - 1 : N - label - 1; }

// f_{k_r}(n) = r * (((n + k - 2) mod N) + 1) for 1 <= n <= N.
inline long family_map(long n, long k, long r, long N) { return r * (((n + k - 2) % N) + 1); }

inline long message(long k, long r, long j, long N) {
    return ((k - 1) * 2 + (r > 0 ? 0 : 1)) * 2 * N + (j - 1);
}

// psi_{k_r, j} on a (2N)^2 vector indexed a * 2N + b.
inline Eigen::VectorXcd bell(long N, long k, long r, long j, const Eigen::MatrixXi &h) {
    const long d = 2 * N;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (long n = 1; n <= N; ++n) {
        const long fn = family_map(n, k, r, N);
        v(pos_index(n, N) * d + pos_index(fn, N)) += norm * h(j - 1, 2 * n - 2);
        v(pos_index(-n, N) * d + pos_index(-fn, N)) += norm * h(j - 1, 2 * n - 1);
    }
    return v;
}

// Primed partner: Alice's label n runs over 1..2N on index n - 1; Bob's index
// is shifted by k - 1, plus N for r = -1.
inline Eigen::VectorXcd bell_prime(long N, long k, long r, long j, const Eigen::MatrixXi &h) {
    const long d = 2 * N;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    const long shift = (k - 1) + (r > 0 ? 0 : N);
    for (long n = 1; n <= d; ++n) v((n - 1) * d + (n - 1 + shift) % d) = norm * h(j - 1, n - 1);
    return v;
}

struct Label {
    long k, r, j;
};

inline std::vector<Label> labels(long N) {
    std::vector<Label> out;
    for (long k = 1; k <= N; ++k)
        for (long r : {1L, -1L})
            for (long j = 1; j <= 2 * N; ++j) out.push_back({k, r, j});
    return out;
}

// Columns are the 4N^2 Bell states in message order.
inline Eigen::MatrixXcd bell_matrix(long N) {
    const auto h = sylvester(static_cast<std::size_t>(2 * N));
    const long d = 2 * N;
    Eigen::MatrixXcd m(d * d, d * d);
    for (const auto &l : labels(N)) m.col(message(l.k, l.r, l.j, N)) = bell(N, l.k, l.r, l.j, h);
    return m;
}

// rho_A = Tr_B |v><v| for a dA x dB bipartite vector.
inline Eigen::MatrixXcd reduced_first(const Eigen::VectorXcd &v, long dA, long dB) {
    Eigen::MatrixXcd psi(dA, dB);
    for (long a = 0; a < dA; ++a)
        for (long b = 0; b < dB; ++b) psi(a, b) = v(a * dB + b);
    return psi * psi.adjoint();
}

inline Eigen::MatrixXcd reduced_second(const Eigen::VectorXcd &v, long dA, long dB) {
    Eigen::MatrixXcd psi(dA, dB);
    for (long a = 0; a < dA; ++a)
        for (long b = 0; b < dB; ++b) psi(a, b) = v(a * dB + b);
    return (psi.adjoint() * psi).transpose();
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Eigen::VectorXcd random_state(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
    return v / v.norm();
}

// |<a|b>| maximized over the columns of `basis`; returns the column index.
inline std::pair<Eigen::Index, double> best_column(const Eigen::MatrixXcd &basis,
                                                   const Eigen::VectorXcd &v) {
    Eigen::Index best = 0;
    double val = -1.0;
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        const double ov = std::abs(basis.col(c).dot(v));
        if (ov > val) {
            val = ov;
            best = c;
        }
    }
    return {best, val};
}

} // namespace oracle
