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

#include "sdc/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdc/error.hpp"

namespace sdc {

namespace {

void require_order(std::size_t N, const HadamardMatrix &H) {
    if (H.order() != 2 * N)
        fail(ErrorCode::OrderMismatch, "Hadamard order " + std::to_string(H.order()) +
                                           " != 2N = " + std::to_string(2 * N));
}

std::size_t idx(int label, std::size_t N) {
    return label_to_index(PositionLabel(label), N).value;
}

} // namespace

std::string to_string(const BellLabel &label) {
    return "(" + std::to_string(label.k) + (label.r > 0 ? "+" : "-") + "," +
           std::to_string(label.j) + ")";
}

void validate_label(const BellLabel &label, std::size_t N) {
    const int n = static_cast<int>(N);
    if (label.k < 1 || label.k > n || (label.r != 1 && label.r != -1) || label.j < 1 ||
        label.j > 2 * n)
        fail(ErrorCode::ArgOutOfRange, "invalid Bell label " + to_string(label) +
                                           " for N = " + std::to_string(N));
}

std::size_t family_index(int k, int r) {
    return static_cast<std::size_t>((k - 1) * 2 + (1 - r) / 2);
}

std::size_t message_of(const BellLabel &label, std::size_t N) {
    validate_label(label, N);
    return family_index(label.k, label.r) * 2 * N + static_cast<std::size_t>(label.j - 1);
}

BellLabel label_of(std::size_t message, std::size_t N) {
    if (message >= message_count(N))
        fail(ErrorCode::MessageOutOfRange, "message " + std::to_string(message) +
                                               " outside [0, " +
                                               std::to_string(message_count(N)) + ")");
    const std::size_t fam = message / (2 * N);
    return BellLabel{static_cast<int>(fam / 2) + 1, fam % 2 == 0 ? 1 : -1,
                     static_cast<int>(message % (2 * N)) + 1};
}

std::size_t message_count(std::size_t N) { return 4 * N * N; }

std::vector<BellLabel> all_labels(std::size_t N) {
    std::vector<BellLabel> out;
    out.reserve(message_count(N));
    for (std::size_t m = 0; m < message_count(N); ++m)
        out.push_back(label_of(m, N));
    return out;
}

int wrap1(long x, long m) {
    long r = (x - 1) % m;
    if (r < 0)
        r += m;
    return static_cast<int>(r + 1);
}

ModularMap::ModularMap(std::size_t N, int k, int r)
    : N_(static_cast<int>(N)), k_(k), r_(r) {
    if (N == 0 || k < 1 || k > N_ || (r != 1 && r != -1))
        fail(ErrorCode::ArgOutOfRange, "invalid family (k=" + std::to_string(k) +
                                           ", r=" + std::to_string(r) + ")");
}

int ModularMap::operator()(int n) const {
    if (n < 1 || n > N_)
        fail(ErrorCode::ArgOutOfRange, "argument " + std::to_string(n) + " outside [1, " +
                                           std::to_string(N_) + "]");
    return r_ * wrap1(n + k_ - 1, N_);
}

int f(const ModularMap &map, int n) { return map(n); }

StateVector bell_state(std::size_t N, const BellLabel &label, const HadamardMatrix &H) {
    require_order(N, H);
    validate_label(label, N);
    const std::size_t d = 2 * N;
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    const ModularMap fk(N, label.k, label.r);
    StateVector s({d, d});
    for (int n = 1; n <= static_cast<int>(N); ++n) {
        const int m = fk(n);
        s[s.pair_index(idx(n, N), idx(m, N))] = H.h(label.j, 2 * n - 1) * norm;
        s[s.pair_index(idx(-n, N), idx(-m, N))] = H.h(label.j, 2 * n) * norm;
    }
    return s;
}

std::size_t prime_label_index(int y, std::size_t N) {
    const int d = static_cast<int>(2 * N);
    const int mag = y < 0 ? -y : y;
    if (y == 0 || mag > d)
        fail(ErrorCode::LabelOutOfRange, "compact label " + std::to_string(y) +
                                             " outside +-1..+-" + std::to_string(d));
    const auto base = static_cast<std::size_t>(mag - 1);
    return y > 0 ? base : (base + N) % (2 * N);
}

std::size_t prime_shift(int k, int r, std::size_t N) {
    const auto base = static_cast<std::size_t>(k - 1);
    return r > 0 ? base : base + N;
}

std::pair<int, int> prime_family_for_shift(std::size_t shift, std::size_t N) {
    if (shift >= 2 * N)
        fail(ErrorCode::ArgOutOfRange, "shift out of range");
    if (shift < N)
        return {static_cast<int>(shift) + 1, 1};
    return {static_cast<int>(shift - N) + 1, -1};
}

StateVector bell_prime_state(std::size_t N, const BellLabel &label, const HadamardMatrix &H) {
    require_order(N, H);
    validate_label(label, N);
    const std::size_t d = 2 * N;
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    StateVector s({d, d});
    for (int n = 1; n <= static_cast<int>(d); ++n) {
        const int fp = label.r * wrap1(n + label.k - 1, static_cast<long>(d));
        s[s.pair_index(static_cast<std::size_t>(n - 1), prime_label_index(fp, N))] =
            H.h(label.j, n) * norm;
    }
    return s;
}

BellBasis::BellBasis(std::size_t N, const HadamardMatrix &H)
    : N_(N), H_(H), partner_(4 * N * N), column_(2 * N) {
    require_order(N, H);
    for (int n = 1; n <= static_cast<int>(N); ++n) {
        column_[idx(n, N)] = static_cast<std::size_t>(2 * n - 2);
        column_[idx(-n, N)] = static_cast<std::size_t>(2 * n - 1);
    }
    for (int k = 1; k <= static_cast<int>(N); ++k) {
        for (int r : {1, -1}) {
            const ModularMap fk(N, k, r);
            const std::size_t fam = family_index(k, r);
            for (int n = 1; n <= static_cast<int>(N); ++n) {
                partner_[fam * 2 * N + idx(n, N)] = idx(fk(n), N);
                partner_[fam * 2 * N + idx(-n, N)] = idx(-fk(n), N);
            }
        }
    }
}

StateVector BellBasis::state(const BellLabel &label) const { return bell_state(N_, label, H_); }

std::vector<Complex> BellBasis::overlaps(const StateVector &s) const {
    const std::size_t d = 2 * N_;
    if (s.dims() != std::vector<std::size_t>{d, d})
        fail(ErrorCode::DimensionMismatch, "state is not a two-particle state of dim 2N");
    std::vector<Complex> out(message_count(N_), Complex{});
    std::vector<Complex> v(d);
    for (std::size_t fam = 0; fam < d; ++fam) {
        bool any = false;
        for (std::size_t a = 0; a < d; ++a) {
            v[column_[a]] = s[s.pair_index(a, partner(fam, a))];
            any = any || v[column_[a]] != Complex{};
        }
        if (!any)
            continue;
        for (std::size_t j = 0; j < d; ++j) {
            Complex acc{};
            for (std::size_t c = 0; c < d; ++c)
                acc += H_.normalized(j, c) * v[c];
            out[fam * d + j] = acc;
        }
    }
    return out;
}

BellBasis::Match BellBasis::identify(const StateVector &s) const {
    const auto ov = overlaps(s);
    std::size_t best = 0;
    for (std::size_t m = 1; m < ov.size(); ++m)
        if (std::abs(ov[m]) > std::abs(ov[best]) + 1e-14)
            best = m;
    return Match{label_of(best, N_), ov[best]};
}

namespace {

/// Backtracking state for search_prime_map.
class PrimeSearch {
  public:
    PrimeSearch(const BellBasis &basis, std::size_t budget)
        : basis_(basis), d_(2 * basis.N()), budget_(budget), pi_(d_, kUnset),
          used_(d_, false), shift_(d_, kUnset), shift_owner_(d_, kUnset),
          candidates_(d_, std::vector<bool>(d_, true)) {
        link_.assign(d_ * d_, 0);
        for (std::size_t fam = 0; fam < d_; ++fam)
            for (std::size_t a = 0; a < d_; ++a)
                link_[a * d_ + basis.partner(fam, a)] = fam;
    }

    bool run() { return assign(0); }

    std::size_t nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }
    const std::vector<std::size_t> &alice() const { return pi_; }
    std::size_t shift(std::size_t fam) const { return shift_[fam]; }
    /// Compact-basis row j' carried by ordinary row j.
    std::size_t row_image(std::size_t j) const {
        for (std::size_t jp = 0; jp < d_; ++jp)
            if (candidates_[j][jp])
                return jp;
        return kUnset;
    }

  private:
    static constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

    struct Undo {
        std::vector<std::size_t> shifts_set;
        std::vector<std::pair<std::size_t, std::size_t>> rows_cleared;
    };

    bool set_shift(std::size_t fam, std::size_t value, Undo &undo) {
        if (shift_[fam] != kUnset)
            return shift_[fam] == value;
        if (shift_owner_[value] != kUnset)
            return false;
        shift_[fam] = value;
        shift_owner_[value] = fam;
        undo.shifts_set.push_back(fam);
        return true;
    }

    void rollback(const Undo &undo) {
        for (auto fam : undo.shifts_set) {
            shift_owner_[shift_[fam]] = kUnset;
            shift_[fam] = kUnset;
        }
        for (auto [j, jp] : undo.rows_cleared)
            candidates_[j][jp] = true;
    }

    bool constrain(std::size_t a, std::size_t v, Undo &undo) {
        const auto &H = basis_.hadamard();
        const std::size_t col = basis_.column(a);
        for (std::size_t j = 0; j < d_; ++j) {
            bool alive = false;
            for (std::size_t jp = 0; jp < d_; ++jp) {
                if (!candidates_[j][jp])
                    continue;
                if (H.entry(jp, v) != H.entry(j, col)) {
                    candidates_[j][jp] = false;
                    undo.rows_cleared.emplace_back(j, jp);
                } else {
                    alive = true;
                }
            }
            if (!alive)
                return false;
        }
        // Bob is pi_A shifted by a constant, so family f needs
        // pi_A(partner_f(a)) - pi_A(a) to be the same for every a.
        for (std::size_t b = 0; b < d_; ++b) {
            if (b == a || pi_[b] == kUnset)
                continue;
            if (!set_shift(link_[b * d_ + a], (v + d_ - pi_[b]) % d_, undo))
                return false;
            if (!set_shift(link_[a * d_ + b], (pi_[b] + d_ - v) % d_, undo))
                return false;
        }
        return set_shift(link_[a * d_ + a], 0, undo);
    }

    bool assign(std::size_t a) {
        if (a == d_)
            return true;
        for (std::size_t v = 0; v < d_; ++v) {
            if (used_[v])
                continue;
            if (++nodes_ > budget_) {
                exhausted_ = true;
                return false;
            }
            Undo undo;
            pi_[a] = v;
            used_[v] = true;
            if (constrain(a, v, undo) && assign(a + 1))
                return true;
            pi_[a] = kUnset;
            used_[v] = false;
            rollback(undo);
            if (exhausted_)
                return false;
        }
        return false;
    }

    const BellBasis &basis_;
    std::size_t d_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    bool exhausted_ = false;
    std::vector<std::size_t> pi_;
    std::vector<bool> used_;
    std::vector<std::size_t> shift_;
    std::vector<std::size_t> shift_owner_;
    std::vector<std::vector<bool>> candidates_;
    std::vector<std::size_t> link_;
};

} // namespace

std::optional<PrimeMap> search_prime_map(std::size_t N, const HadamardMatrix &H,
                                         PrimeSearchStats *stats, std::size_t node_budget) {
    const BellBasis basis(N, H);
    const std::size_t d = 2 * N;
    PrimeSearch search(basis, node_budget);
    const bool found = search.run();
    if (stats != nullptr) {
        stats->nodes = search.nodes();
        stats->budget_exhausted = search.exhausted();
    }
    if (!found)
        return std::nullopt;

    const auto &pi = search.alice();
    SignedPermutationOp alice(pi, std::vector<Complex>(d, 1.0));
    PrimeMap map{alice, alice, {}};
    map.image.resize(message_count(N));
    for (std::size_t m = 0; m < message_count(N); ++m) {
        const BellLabel lab = label_of(m, N);
        const auto [kp, rp] =
            prime_family_for_shift(search.shift(family_index(lab.k, lab.r)), N);
        map.image[m] = BellLabel{kp, rp,
                                 static_cast<int>(search.row_image(
                                     static_cast<std::size_t>(lab.j - 1))) + 1};
    }
    if (prime_map_residual(N, H, map) > 1e-12)
        return std::nullopt;
    return map;
}

PrimeMap derive_prime_map(std::size_t N, const HadamardMatrix &H) {
    PrimeSearchStats stats;
    auto map = search_prime_map(N, H, &stats);
    if (!map)
        fail(ErrorCode::NoLocalMapFound,
             "no local permutation relates the two Bell bases at N = " + std::to_string(N) +
                 (stats.budget_exhausted ? " (search budget exhausted)" : "") + " after " +
                 std::to_string(stats.nodes) + " nodes");
    return *map;
}

double prime_map_residual(std::size_t N, const HadamardMatrix &H, const PrimeMap &map) {
    double worst = 0.0;
    for (std::size_t m = 0; m < message_count(N); ++m) {
        const BellLabel lab = label_of(m, N);
        const StateVector moved = apply(map.bob, 1, apply(map.alice, 0, bell_state(N, lab, H)));
        worst = std::max(worst, max_abs_diff(moved, bell_prime_state(N, map.image[m], H)));
    }
    return worst;
}

} // namespace sdc
