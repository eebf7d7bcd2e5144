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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sdc {

/// Normalized symmetric involutory Hadamard matrix.
///
/// Entries are kept as exact integers +1/-1; the 1/sqrt(order) scale is only
/// applied by `normalized()` and `dense()`. Immutable once built.
class HadamardMatrix {
  public:
    /// Validates `entries` (row-major, +1/-1) against the symmetric and
    /// involutory invariants and throws InvalidMatrix otherwise.
    static HadamardMatrix from_entries(std::size_t order,
                                       std::vector<std::int8_t> entries,
                                       std::string construction);

    std::size_t order() const { return order_; }
    const std::string &construction() const { return construction_; }

    /// 1-based unnormalized entry with h(i, j) = 0 whenever i <= 0 or j <= 0.
    int h(long i, long j) const;

    /// 0-based unnormalized entry.
    int entry(std::size_t row, std::size_t col) const {
        return entries_[row * order_ + col];
    }

    double normalized(std::size_t row, std::size_t col) const {
        return entry(row, col) * scale_;
    }

    double scale() const { return scale_; }

    Eigen::MatrixXd dense() const;

    bool operator==(const HadamardMatrix &other) const {
        return order_ == other.order_ && entries_ == other.entries_;
    }

  private:
    HadamardMatrix(std::size_t order, std::vector<std::int8_t> entries,
                   std::string construction);

    std::size_t order_;
    double scale_;
    std::vector<std::int8_t> entries_;
    std::string construction_;
};

/// Externally supplied matrices, keyed by order. Consulted before the
/// built-in Sylvester construction.
class HadamardRegistry {
  public:
    void add(HadamardMatrix matrix);
    const HadamardMatrix *find(std::size_t order) const;
    bool empty() const { return matrices_.empty(); }

    /// Text format: blocks separated by blank lines, each row a line of
    /// whitespace-separated +1/-1 entries. Lines starting with '#' are ignored.
    static HadamardRegistry load(const std::string &path);
    static HadamardRegistry parse(const std::string &text,
                                  const std::string &source = "<text>");

  private:
    std::map<std::size_t, HadamardMatrix> matrices_;
};

bool is_power_of_two(std::size_t n);

/// Deterministic construction: registry hit, otherwise Sylvester for powers
/// of two. Throws UnsupportedOrder outside {1, 2, 4k} and
/// ConstructionUnavailable for 4k orders with no construction.
HadamardMatrix build_hadamard(std::size_t order,
                              const HadamardRegistry *registry = nullptr);

/// Residuals used by the verification report.
double involution_residual(const HadamardMatrix &h);
bool is_symmetric(const HadamardMatrix &h);

} // namespace sdc
