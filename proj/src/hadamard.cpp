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

#include "sdc/hadamard.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sdc/error.hpp"

namespace sdc {

namespace {

void validate(std::size_t order, const std::vector<std::int8_t> &e) {
    if (order == 0)
        fail(ErrorCode::InvalidMatrix, "order must be positive");
    if (e.size() != order * order)
        fail(ErrorCode::InvalidMatrix, "expected " + std::to_string(order * order) +
                                           " entries, got " + std::to_string(e.size()));
    for (auto v : e) {
        if (v != 1 && v != -1)
            fail(ErrorCode::InvalidMatrix, "entries must be +1 or -1");
    }
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = i + 1; j < order; ++j) {
            if (e[i * order + j] != e[j * order + i])
                fail(ErrorCode::InvalidMatrix, "matrix is not symmetric at (" +
                                                   std::to_string(i) + ", " +
                                                   std::to_string(j) + ")");
        }
    }
    // Symmetric with orthogonal rows is equivalent to H^2 = order * I.
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = i; j < order; ++j) {
            long dot = 0;
            for (std::size_t c = 0; c < order; ++c)
                dot += e[i * order + c] * e[j * order + c];
            long want = (i == j) ? static_cast<long>(order) : 0;
            if (dot != want)
                fail(ErrorCode::InvalidMatrix, "rows " + std::to_string(i) + " and " +
                                                   std::to_string(j) +
                                                   " are not orthogonal");
        }
    }
}

HadamardMatrix sylvester(std::size_t order) {
    std::vector<std::int8_t> e(order * order);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j)
            e[i * order + j] = (std::popcount(i & j) % 2 == 0) ? 1 : -1;
    return HadamardMatrix::from_entries(order, std::move(e), "sylvester");
}

} // namespace

HadamardMatrix::HadamardMatrix(std::size_t order, std::vector<std::int8_t> entries,
                               std::string construction)
    : order_(order), scale_(1.0 / std::sqrt(static_cast<double>(order))),
      entries_(std::move(entries)), construction_(std::move(construction)) {}

HadamardMatrix HadamardMatrix::from_entries(std::size_t order,
                                            std::vector<std::int8_t> entries,
                                            std::string construction) {
    validate(order, entries);
    return HadamardMatrix(order, std::move(entries), std::move(construction));
}

int HadamardMatrix::h(long i, long j) const {
    const long n = static_cast<long>(order_);
    if (i > n || j > n)
        fail(ErrorCode::IndexOutOfRange, "h(" + std::to_string(i) + ", " +
                                             std::to_string(j) + ") exceeds order " +
                                             std::to_string(order_));
    if (i <= 0 || j <= 0)
        return 0;
    return entry(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
}

Eigen::MatrixXd HadamardMatrix::dense() const {
    const auto n = static_cast<Eigen::Index>(order_);
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = normalized(i, j);
    return m;
}

void HadamardRegistry::add(HadamardMatrix matrix) {
    const auto order = matrix.order();
    matrices_.insert_or_assign(order, std::move(matrix));
}

const HadamardMatrix *HadamardRegistry::find(std::size_t order) const {
    auto it = matrices_.find(order);
    return it == matrices_.end() ? nullptr : &it->second;
}

HadamardRegistry HadamardRegistry::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::ConfigError, "cannot open Hadamard matrix file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

HadamardRegistry HadamardRegistry::parse(const std::string &text,
                                         const std::string &source) {
    HadamardRegistry registry;
    std::vector<std::vector<std::int8_t>> rows;

    auto flush = [&]() {
        if (rows.empty())
            return;
        const std::size_t order = rows.size();
        std::vector<std::int8_t> e;
        e.reserve(order * order);
        for (const auto &row : rows) {
            if (row.size() != order)
                fail(ErrorCode::InvalidMatrix,
                     source + ": block with " + std::to_string(order) +
                         " rows has a row of length " + std::to_string(row.size()));
            e.insert(e.end(), row.begin(), row.end());
        }
        registry.add(HadamardMatrix::from_entries(order, std::move(e), "custom:" + source));
        rows.clear();
    };

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            flush();
            continue;
        }
        if (line[first] == '#')
            continue;
        std::istringstream tokens(line);
        std::string tok;
        std::vector<std::int8_t> row;
        while (tokens >> tok) {
            if (tok == "+1" || tok == "1" || tok == "+")
                row.push_back(1);
            else if (tok == "-1" || tok == "-")
                row.push_back(-1);
            else
                fail(ErrorCode::InvalidMatrix, source + ": bad entry '" + tok + "'");
        }
        rows.push_back(std::move(row));
    }
    flush();
    return registry;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

HadamardMatrix build_hadamard(std::size_t order, const HadamardRegistry *registry) {
    if (order == 0 || (order > 2 && order % 4 != 0))
        fail(ErrorCode::UnsupportedOrder,
             "no real Hadamard matrix of order " + std::to_string(order) +
                 " (order must be 1, 2 or a multiple of 4)");
    if (registry != nullptr) {
        if (const auto *custom = registry->find(order))
            return *custom;
    }
    if (!is_power_of_two(order))
        fail(ErrorCode::ConstructionUnavailable,
             "no symmetric construction registered for order " + std::to_string(order));
    return sylvester(order);
}

double involution_residual(const HadamardMatrix &h) {
    const Eigen::MatrixXd m = h.dense();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m.rows(), m.cols());
    return (m * m - id).cwiseAbs().maxCoeff();
}

bool is_symmetric(const HadamardMatrix &h) {
    for (std::size_t i = 0; i < h.order(); ++i)
        for (std::size_t j = i + 1; j < h.order(); ++j)
            if (h.entry(i, j) != h.entry(j, i))
                return false;
    return true;
}

} // namespace sdc
