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

#include "sdc/hadamard.hpp"
#include "sdc/hilbert.hpp"

namespace sdc {

/// Family k in [1, N], sign r in {+1, -1}, member j in [1, 2N].
struct BellLabel {
    int k = 1;
    int r = 1;
    int j = 1;
    bool operator==(const BellLabel &) const = default;
};

std::string to_string(const BellLabel &label);
void validate_label(const BellLabel &label, std::size_t N);

/// m = ((k-1)*2 + (1-r)/2) * 2N + (j-1).
std::size_t message_of(const BellLabel &label, std::size_t N);
BellLabel label_of(std::size_t message, std::size_t N);
std::size_t message_count(std::size_t N);
std::vector<BellLabel> all_labels(std::size_t N);

/// Index of family (k, r) in [0, 2N): (k-1)*2 + (1-r)/2.
std::size_t family_index(int k, int r);

/// ((x-1) mod m) + 1 for any integer x: the zero-free residue in [1, m].
int wrap1(long x, long m);

/// n -> r * (((n + k - 2) mod N) + 1) on n in [1, N].
class ModularMap {
  public:
    ModularMap(std::size_t N, int k, int r);
    int operator()(int n) const;

  private:
    int N_;
    int k_;
    int r_;
};

int f(const ModularMap &map, int n);

StateVector bell_state(std::size_t N, const BellLabel &label, const HadamardMatrix &H);

/// The compact basis sum_n h_{j,n} |n, f'(n)> / sqrt(2N), n in [1, 2N].
/// Particle labels 1..2N sit at indices 0..2N-1; a negated label -y sits at
/// index (y - 1 + N) mod 2N, so r = -1 shifts the pairing by half the axis.
StateVector bell_prime_state(std::size_t N, const BellLabel &label, const HadamardMatrix &H);

/// Index of a signed compact-basis label under the embedding above.
std::size_t prime_label_index(int y, std::size_t N);

/// Offset s with f'(n) sitting at index (n - 1 + s) mod 2N.
std::size_t prime_shift(int k, int r, std::size_t N);
/// Inverse of prime_shift.
std::pair<int, int> prime_family_for_shift(std::size_t shift, std::size_t N);

/// Precomputed family pairings for fast overlap and identification against
/// the 4N^2 states of bell_state().
class BellBasis {
  public:
    BellBasis(std::size_t N, const HadamardMatrix &H);

    std::size_t N() const { return N_; }
    const HadamardMatrix &hadamard() const { return H_; }

    /// Bob index paired with Alice index `a` in family `family`.
    std::size_t partner(std::size_t family, std::size_t a) const {
        return partner_[family * 2 * N_ + a];
    }
    /// 0-based Hadamard column carried by Alice index `a` (+n -> 2n-2, -n -> 2n-1).
    std::size_t column(std::size_t a) const { return column_[a]; }

    StateVector state(const BellLabel &label) const;

    /// <psi_b|s> for all labels in message order.
    std::vector<Complex> overlaps(const StateVector &s) const;

    struct Match {
        BellLabel label;
        Complex overlap;
    };
    /// Bell state of maximal |overlap| with s (first in message order on ties).
    Match identify(const StateVector &s) const;

  private:
    std::size_t N_;
    HadamardMatrix H_;
    std::vector<std::size_t> partner_;
    std::vector<std::size_t> column_;
};

/// Local relabeling taking bell_state(label) to bell_prime_state(image[m]).
struct PrimeMap {
    SignedPermutationOp alice;
    SignedPermutationOp bob;
    std::vector<BellLabel> image; // indexed by message_of(label)
};

struct PrimeSearchStats {
    std::size_t nodes = 0;
    bool budget_exhausted = false;
};

/// Depth-first search over Alice permutations in lexicographic order of
/// (pi_A(0), pi_A(1), ...). Bob's permutation is forced by family (1,+) up to
/// a global shift, taken as 0. Returns the first map that is amplitude-exact
/// on every label, or nullopt.
std::optional<PrimeMap> search_prime_map(std::size_t N, const HadamardMatrix &H,
                                         PrimeSearchStats *stats = nullptr,
                                         std::size_t node_budget = 5'000'000);

/// As search_prime_map, but throws NoLocalMapFound when nothing is found.
PrimeMap derive_prime_map(std::size_t N, const HadamardMatrix &H);

/// Max deviation of (pi_A (x) pi_B) psi_b from psi'_{image(b)} over all labels.
double prime_map_residual(std::size_t N, const HadamardMatrix &H, const PrimeMap &map);

} // namespace sdc
