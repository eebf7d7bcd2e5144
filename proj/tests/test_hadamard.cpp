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

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sdc/error.hpp"
#include "sdc/hadamard.hpp"

namespace {

using sdc::ErrorCode;

template <class F>
ErrorCode code_of(F &&f) {
    try {
        f();
    } catch (const sdc::SdcError &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected SdcError";
    return ErrorCode::ConfigError;
}

// Paley II construction for q = 5: a symmetric Hadamard matrix of order 12.
std::string paley12_text() {
    auto chi = [](int x) {
        x = ((x % 5) + 5) % 5;
        return x == 0 ? 0 : (x == 1 || x == 4) ? 1 : -1;
    };
    int c[6][6];
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            c[i][j] = (i == 0 && j == 0) ? 0 : (i == 0 || j == 0) ? 1 : chi(j - i);
    const int a[2][2] = {{1, 1}, {1, -1}};
    const int b[2][2] = {{1, -1}, {-1, -1}};
    std::ostringstream os;
    os << "# Paley II, q = 5\n";
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 12; ++j) {
            const int v = c[i / 2][j / 2] * a[i % 2][j % 2] + (i / 2 == j / 2 ? b[i % 2][j % 2] : 0);
            os << (v > 0 ? "+1" : "-1") << (j == 11 ? "" : " ");
        }
        os << "\n";
    }
    return os.str();
}

} // namespace

TEST(Hadamard, OrderTwoIsTheSylvesterBase) {
    const auto H = sdc::build_hadamard(2);
    EXPECT_EQ(H.h(1, 1), 1);
    EXPECT_EQ(H.h(1, 2), 1);
    EXPECT_EQ(H.h(2, 1), 1);
    EXPECT_EQ(H.h(2, 2), -1);
    EXPECT_NEAR(H.normalized(1, 1), -1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(H.construction(), "sylvester");
}

TEST(Hadamard, MatchesKroneckerRecursion) {
    for (std::size_t order = 1; order <= 64; order *= 2) {
        const auto H = sdc::build_hadamard(order);
        const auto ref = oracle::sylvester(order);
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t j = 0; j < order; ++j)
                ASSERT_EQ(H.entry(i, j), ref(i, j)) << order << " " << i << " " << j;
    }
}

TEST(Hadamard, InvolutorySymmetricAndOrthogonal) {
    for (std::size_t order = 1; order <= 128; order *= 2) {
        const auto H = sdc::build_hadamard(order);
        EXPECT_TRUE(sdc::is_symmetric(H));
        EXPECT_LT(sdc::involution_residual(H), 1e-12) << order;
        for (std::size_t a = 0; a < order; ++a)
            for (std::size_t b = a + 1; b < order; ++b) {
                long dot = 0;
                for (std::size_t c = 0; c < order; ++c) dot += H.entry(a, c) * H.entry(b, c);
                ASSERT_EQ(dot, 0);
            }
    }
}

TEST(Hadamard, DeterministicConstruction) {
    EXPECT_EQ(sdc::build_hadamard(16), sdc::build_hadamard(16));
}

TEST(Hadamard, UnnormalizedAccessor) {
    const auto H2 = sdc::build_hadamard(2);
    const auto H4 = sdc::build_hadamard(4);
    EXPECT_EQ(H2.h(1, 1), 1);
    EXPECT_EQ(H2.h(0, 1), 0);
    EXPECT_EQ(H2.h(1, -3), 0);
    EXPECT_EQ(H4.h(2, 2), -1);
    EXPECT_EQ(code_of([&] { H2.h(3, 1); }), ErrorCode::IndexOutOfRange);
    EXPECT_EQ(code_of([&] { H2.h(1, 3); }), ErrorCode::IndexOutOfRange);
}

TEST(Hadamard, UnsupportedOrders) {
    for (std::size_t order : {0u, 3u, 5u, 6u, 10u, 14u})
        EXPECT_EQ(code_of([&] { sdc::build_hadamard(order); }), ErrorCode::UnsupportedOrder)
            << order;
    for (std::size_t order : {12u, 20u, 24u})
        EXPECT_EQ(code_of([&] { sdc::build_hadamard(order); }),
                  ErrorCode::ConstructionUnavailable)
            << order;
}

TEST(Hadamard, RegistrySuppliesOrderTwelve) {
    const auto reg = sdc::HadamardRegistry::parse(paley12_text(), "paley12");
    const auto H = sdc::build_hadamard(12, &reg);
    EXPECT_EQ(H.order(), 12u);
    EXPECT_EQ(H.construction(), "custom:paley12");
    EXPECT_TRUE(sdc::is_symmetric(H));
    EXPECT_LT(sdc::involution_residual(H), 1e-12);
    // Registry entries do not displace the default for other orders.
    EXPECT_EQ(sdc::build_hadamard(8, &reg).construction(), "sylvester");
}

TEST(Hadamard, RegistryRejectsInvalidBlocks) {
    // Hadamard but not symmetric.
    EXPECT_EQ(code_of([] { sdc::HadamardRegistry::parse("+1 +1\n-1 +1\n"); }),
              ErrorCode::InvalidMatrix);
    // Symmetric, rows not orthogonal.
    EXPECT_EQ(code_of([] { sdc::HadamardRegistry::parse("+1 +1\n+1 +1\n"); }),
              ErrorCode::InvalidMatrix);
    EXPECT_EQ(code_of([] { sdc::HadamardRegistry::parse("+1 0\n0 -1\n"); }),
              ErrorCode::InvalidMatrix);
    EXPECT_EQ(code_of([] { sdc::HadamardRegistry::parse("+1 +1 +1\n+1 -1\n"); }),
              ErrorCode::InvalidMatrix);
    EXPECT_EQ(code_of([] { sdc::HadamardRegistry::load("/nonexistent/h.txt"); }),
              ErrorCode::ConfigError);
}

TEST(Hadamard, RegistryParsesSeveralBlocks) {
    const auto reg = sdc::HadamardRegistry::parse("# two blocks\n+ +\n+ -\n\n1\n");
    ASSERT_NE(reg.find(2), nullptr);
    ASSERT_NE(reg.find(1), nullptr);
    EXPECT_EQ(reg.find(4), nullptr);
}
