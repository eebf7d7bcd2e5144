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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sdc/bell.hpp"
#include "sdc/error.hpp"

namespace {

using sdc::BellLabel;
using sdc::Complex;

Eigen::VectorXcd to_eigen(const sdc::StateVector &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
    return v;
}

double max_diff(const sdc::StateVector &s, const Eigen::VectorXcd &v) {
    return (to_eigen(s) - v).cwiseAbs().maxCoeff();
}

// Every signed local permutation pair (pi_A, pi_B) that maps each Bell state
// exactly onto some primed Bell state, found by exhaustive enumeration.
std::size_t brute_force_local_maps(long N) {
    const long d = 2 * N;
    const auto h = oracle::sylvester(static_cast<std::size_t>(d));
    std::vector<Eigen::VectorXcd> bells, primes;
    for (const auto &l : oracle::labels(N)) {
        bells.push_back(oracle::bell(N, l.k, l.r, l.j, h));
        primes.push_back(oracle::bell_prime(N, l.k, l.r, l.j, h));
    }
    struct Local {
        std::vector<long> target;
        std::vector<int> sign;
    };
    std::vector<Local> locals;
    std::vector<long> perm(d);
    std::iota(perm.begin(), perm.end(), 0L);
    do {
        for (long mask = 0; mask < (1L << d); ++mask) {
            Local l{perm, std::vector<int>(d)};
            for (long i = 0; i < d; ++i) l.sign[i] = (mask >> i) & 1 ? -1 : 1;
            locals.push_back(std::move(l));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::size_t found = 0;
    Eigen::VectorXcd img(d * d);
    for (const auto &A : locals)
        for (const auto &B : locals) {
            std::set<std::size_t> used;
            bool ok = true;
            for (const auto &v : bells) {
                img.setZero();
                for (long a = 0; a < d; ++a)
                    for (long b = 0; b < d; ++b)
                        if (v(a * d + b) != Complex{})
                            img(A.target[a] * d + B.target[b]) =
                                double(A.sign[a] * B.sign[b]) * v(a * d + b);
                std::size_t hit = primes.size();
                for (std::size_t p = 0; p < primes.size(); ++p)
                    if ((primes[p] - img).cwiseAbs().maxCoeff() < 1e-12) {
                        hit = p;
                        break;
                    }
                if (hit == primes.size() || !used.insert(hit).second) {
                    ok = false;
                    break;
                }
            }
            if (ok) ++found;
        }
    return found;
}

} // namespace

TEST(Bell, LabelMessageBijection) {
    for (std::size_t N : {1u, 2u, 4u, 8u}) {
        EXPECT_EQ(sdc::message_count(N), 4 * N * N);
        const auto labels = sdc::all_labels(N);
        ASSERT_EQ(labels.size(), 4 * N * N);
        for (std::size_t m = 0; m < labels.size(); ++m) {
            EXPECT_EQ(sdc::message_of(labels[m], N), m);
            EXPECT_EQ(sdc::label_of(m, N), labels[m]);
            const auto &l = labels[m];
            EXPECT_EQ(static_cast<long>(m), oracle::message(l.k, l.r, l.j, static_cast<long>(N)));
        }
    }
    EXPECT_THROW(sdc::label_of(4, 1), sdc::SdcError);
    EXPECT_THROW(sdc::validate_label({0, 1, 1}, 2), sdc::SdcError);
    EXPECT_THROW(sdc::validate_label({1, 0, 1}, 2), sdc::SdcError);
    EXPECT_THROW(sdc::validate_label({1, 1, 5}, 2), sdc::SdcError);
    EXPECT_EQ(sdc::to_string(BellLabel{2, -1, 3}), "(2-,3)");
}

TEST(Bell, ModularMap) {
    for (int N : {1, 2, 3, 5, 8})
        for (int k = 1; k <= N; ++k)
            for (int r : {1, -1}) {
                const sdc::ModularMap f(static_cast<std::size_t>(N), k, r);
                std::set<int> image;
                for (int n = 1; n <= N; ++n) {
                    EXPECT_EQ(f(n), oracle::family_map(n, k, r, N));
                    image.insert(std::abs(f(n)));
                }
                EXPECT_EQ(image.size(), static_cast<std::size_t>(N));
            }
    const sdc::ModularMap id(4, 1, 1), neg(4, 1, -1), wrap(4, 2, 1);
    EXPECT_EQ(id(3), 3);
    EXPECT_EQ(neg(3), -3);
    EXPECT_EQ(wrap(4), 1);
    EXPECT_THROW(id(0), sdc::SdcError);
    EXPECT_THROW(id(5), sdc::SdcError);
    EXPECT_EQ(sdc::wrap1(0, 4), 4);
    EXPECT_EQ(sdc::wrap1(5, 4), 1);
    EXPECT_EQ(sdc::wrap1(-3, 4), 1);
}

TEST(Bell, SourceStatesAtNOne) {
    const auto H = sdc::build_hadamard(2);
    const double a = 1.0 / std::sqrt(2.0);
    const auto plus = sdc::bell_state(1, {1, -1, 1}, H);
    const auto minus = sdc::bell_state(1, {1, -1, 2}, H);
    // |1,-1> is index (0, 1), |-1,1> is (1, 0).
    EXPECT_NEAR(std::abs(plus[1] - Complex(a)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(plus[2] - Complex(a)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(minus[1] - Complex(a)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(minus[2] + Complex(a)), 0.0, 1e-15);
    EXPECT_EQ(plus[0], Complex{});
    EXPECT_EQ(plus[3], Complex{});
}

TEST(Bell, MatchesNaiveConstruction) {
    for (long N : {1L, 2L, 4L, 8L}) {
        const auto H = sdc::build_hadamard(static_cast<std::size_t>(2 * N));
        const auto h = oracle::sylvester(static_cast<std::size_t>(2 * N));
        const sdc::BellBasis basis(static_cast<std::size_t>(N), H);
        for (const auto &l : oracle::labels(N)) {
            const BellLabel label{int(l.k), int(l.r), int(l.j)};
            const auto s = sdc::bell_state(static_cast<std::size_t>(N), label, H);
            ASSERT_LT(max_diff(s, oracle::bell(N, l.k, l.r, l.j, h)), 1e-15);
            ASSERT_LT(sdc::max_abs_diff(basis.state(label), s), 1e-15);
            ASSERT_LT(max_diff(sdc::bell_prime_state(static_cast<std::size_t>(N), label, H),
                               oracle::bell_prime(N, l.k, l.r, l.j, h)),
                      1e-15);
        }
    }
}

TEST(Bell, AmplitudeStructure) {
    for (std::size_t N : {1u, 2u, 4u}) {
        const auto H = sdc::build_hadamard(2 * N);
        const double a = 1.0 / std::sqrt(2.0 * static_cast<double>(N));
        for (const auto &l : sdc::all_labels(N)) {
            const auto s = sdc::bell_state(N, l, H);
            std::size_t nonzero = 0;
            for (auto x : s.amplitudes()) {
                if (x == Complex{}) continue;
                ++nonzero;
                EXPECT_EQ(x.imag(), 0.0);
                EXPECT_NEAR(std::abs(x.real()), a, 1e-15);
            }
            EXPECT_EQ(nonzero, 2 * N);
        }
    }
}

TEST(Bell, GramMatrixIsIdentity) {
    for (long N : {1L, 2L, 4L}) {
        const Eigen::MatrixXcd B = oracle::bell_matrix(N);
        const auto n = B.cols();
        EXPECT_LT((B.adjoint() * B - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);

        const auto H = sdc::build_hadamard(static_cast<std::size_t>(2 * N));
        std::vector<sdc::StateVector> states, primes;
        for (const auto &l : sdc::all_labels(static_cast<std::size_t>(N))) {
            states.push_back(sdc::bell_state(static_cast<std::size_t>(N), l, H));
            primes.push_back(sdc::bell_prime_state(static_cast<std::size_t>(N), l, H));
        }
        EXPECT_LT(sdc::gram_max_deviation(states), 1e-12);
        EXPECT_LT(sdc::gram_max_deviation(primes), 1e-12);
    }
}

TEST(Bell, MaximallyEntangled) {
    for (std::size_t N : {1u, 2u, 4u}) {
        const auto H = sdc::build_hadamard(2 * N);
        const auto d = static_cast<Eigen::Index>(2 * N);
        const Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(d, d) / double(d);
        for (const auto &l : sdc::all_labels(N)) {
            for (const auto &s : {sdc::bell_state(N, l, H), sdc::bell_prime_state(N, l, H)}) {
                const Eigen::VectorXcd v = to_eigen(s);
                EXPECT_LT((oracle::reduced_first(v, d, d) - target).cwiseAbs().maxCoeff(), 1e-12);
                EXPECT_LT((oracle::reduced_second(v, d, d) - target).cwiseAbs().maxCoeff(), 1e-12);
                EXPECT_LT((sdc::partial_trace(s, 0).matrix() - target).cwiseAbs().maxCoeff(), 1e-12);
            }
        }
    }
}

TEST(Bell, PrimeStateAtNOne) {
    const auto s = sdc::bell_prime_state(1, {1, 1, 1}, sdc::build_hadamard(2));
    const double a = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(s[0] - Complex(a)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s[3] - Complex(a)), 0.0, 1e-15);
    EXPECT_EQ(s[1], Complex{});
    EXPECT_EQ(s[2], Complex{});
}

TEST(Bell, OrderMismatch) {
    EXPECT_THROW(sdc::bell_state(2, {1, 1, 1}, sdc::build_hadamard(2)), sdc::SdcError);
    EXPECT_THROW(sdc::BellBasis(2, sdc::build_hadamard(8)), sdc::SdcError);
}

TEST(Bell, IdentifyAndOverlaps) {
    const std::size_t N = 4;
    const sdc::BellBasis basis(N, sdc::build_hadamard(2 * N));
    const Eigen::MatrixXcd B = oracle::bell_matrix(4);
    std::mt19937_64 rng(29);
    const auto v = oracle::random_state(64, rng);
    const sdc::StateVector s({8, 8}, std::vector<Complex>(v.data(), v.data() + v.size()));
    const auto ov = basis.overlaps(s);
    for (std::size_t m = 0; m < ov.size(); ++m)
        EXPECT_LT(std::abs(ov[m] - B.col(static_cast<Eigen::Index>(m)).dot(v)), 1e-13);
    for (const auto &l : sdc::all_labels(N)) {
        const auto match = basis.identify(Complex(0.0, 1.0) * basis.state(l));
        EXPECT_EQ(match.label, l);
        EXPECT_NEAR(std::abs(match.overlap), 1.0, 1e-12);
    }
}

TEST(Bell, PrimeShiftCoversAllResidues) {
    for (std::size_t N : {1u, 2u, 4u}) {
        std::set<std::size_t> shifts;
        for (int k = 1; k <= static_cast<int>(N); ++k)
            for (int r : {1, -1}) {
                const auto s = sdc::prime_shift(k, r, N);
                shifts.insert(s);
                EXPECT_EQ(sdc::prime_family_for_shift(s, N), std::make_pair(k, r));
            }
        EXPECT_EQ(shifts.size(), 2 * N);
    }
}

TEST(Bell, BruteForceLocalMaps) {
    // A signed local permutation exists at N = 1 and none at N = 2.
    EXPECT_GT(brute_force_local_maps(1), 0u);
    EXPECT_EQ(brute_force_local_maps(2), 0u);
}

TEST(Bell, SearchAgreesWithBruteForce) {
    const auto H1 = sdc::build_hadamard(2);
    const auto map = sdc::derive_prime_map(1, H1);
    EXPECT_LT(sdc::prime_map_residual(1, H1, map), 1e-12);
    std::set<std::size_t> images;
    for (const auto &l : map.image) images.insert(sdc::message_of(l, 1));
    EXPECT_EQ(images.size(), 4u);

    for (std::size_t N : {2u, 4u}) {
        sdc::PrimeSearchStats stats;
        EXPECT_FALSE(sdc::search_prime_map(N, sdc::build_hadamard(2 * N), &stats).has_value());
        EXPECT_FALSE(stats.budget_exhausted);
        try {
            sdc::derive_prime_map(N, sdc::build_hadamard(2 * N));
            ADD_FAILURE() << "expected NoLocalMapFound at N = " << N;
        } catch (const sdc::SdcError &e) {
            EXPECT_EQ(e.code(), sdc::ErrorCode::NoLocalMapFound);
        }
    }
}
