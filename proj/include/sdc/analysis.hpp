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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdc/bell.hpp"
#include "sdc/decoder.hpp"
#include "sdc/hadamard.hpp"
#include "sdc/hilbert.hpp"

namespace sdc {

/// Alice's shared state before encoding: psi_1 of the source, family (1,-), member 1.
inline constexpr BellLabel kSourceLabel{1, -1, 1};

/// Label of O_(message) (x) I applied to the source state.
BellLabel state_label_for_message(std::size_t N, std::size_t message);
/// Inverse of state_label_for_message.
std::size_t message_for_state_label(std::size_t N, const BellLabel &state);

struct RunResult {
    std::size_t message = 0;
    BellLabel op_label;
    BellLabel state_label;
    std::optional<OutcomePair> outcome;
    double peak_probability = 0.0;
    std::optional<std::size_t> decoded;
    bool ok() const { return decoded && *decoded == message; }
};

/// Encode/decode round trips over one Bell basis and one decoder. The lookup
/// table is built from the decoder's deterministic readouts of the basis
/// states; labels with no deterministic or unique readout are left out.
class Protocol {
  public:
    Protocol(std::size_t N, const HadamardMatrix &H, DecodePath path,
             const HadamardMatrix *HN = nullptr);

    std::size_t N() const { return basis_.N(); }
    const BellBasis &basis() const { return basis_; }
    const Decoder &decoder() const { return *decoder_; }

    StateVector encode(std::size_t message) const;
    std::optional<BellLabel> lookup(const OutcomePair &outcome) const;
    RunResult run(std::size_t message) const;

  private:
    BellBasis basis_;
    std::unique_ptr<Decoder> decoder_;
    std::map<OutcomePair, std::optional<BellLabel>> table_;
};

/// Convenience: builds a Protocol and returns the decoded message (or throws
/// NonDeterministicOutcome / NoMatch when decoding is impossible).
std::size_t run_protocol(std::size_t N, const HadamardMatrix &H, std::size_t message,
                         DecodePath path, const HadamardMatrix *HN = nullptr);

struct SweepResult {
    std::size_t message_space = 0;
    std::size_t tested = 0;
    std::size_t ok = 0;
    bool sampled = false;
    std::vector<std::size_t> failures;
    bool all_ok() const { return ok == tested; }
};

inline constexpr std::size_t kExhaustiveSweepCap = 16384;
inline constexpr std::size_t kSampledSweepSize = 4096;

/// Exhaustive up to kExhaustiveSweepCap messages, otherwise a seeded sample
/// of kSampledSweepSize messages in ascending order.
SweepResult sweep(const Protocol &protocol, std::uint64_t seed = 0,
                  std::size_t exhaustive_cap = kExhaustiveSweepCap,
                  std::size_t sample_size = kSampledSweepSize);

/// Operation times of the CNOT, Hadamard, PCS and U_(N) gates.
struct TimingModel {
    double t_c = 1.0;
    double t_h = 1.0;
    double t_p = 4.0;
    double t_u = 1.0;

    /// t_c = t_h = t_p/4 = t_u/N = t.
    static TimingModel equal_time(std::size_t N, double t);
};

double capacity_bits(std::size_t N);
/// 2 log2(2N) / (t_p + t_h + t_u).
double rate_spatial(std::size_t N, const TimingModel &tm);
/// 2 log2(2N) / (N t).
double rate_spatial_asymptotic(std::size_t N, double t);
/// 2 NN / (NN^2 (t_c + t_h)).
double rate_pairwise(std::size_t NN, const TimingModel &tm);
/// NN / ((NN - 1) ((NN - 1) t_c + t_h)); ArgOutOfRange below NN = 2.
double rate_maximal(std::size_t NN, const TimingModel &tm);
/// rate_spatial / rate_pairwise with N = NN under the equal-time model.
double advantage(std::size_t N, double t);
double advantage_asymptotic(std::size_t N);

struct RateRow {
    std::size_t N = 0;
    double capacity_bits = 0.0;
    double rx_exact = 0.0;
    double rx_asymptotic = 0.0;
    double rp = 0.0;
    std::optional<double> rm;
    double advantage = 0.0;
};

std::vector<RateRow> rate_table(const std::vector<std::size_t> &n_list, double t);

/// 2 log2(2N (2S + 1)) with the spin given as 2S.
double spin_capacity(std::size_t N, int twice_spin);

/// Source state with spin: position psi_1 times sum_s (sign)^s |S-s, -(S-s)>,
/// particles of dimension 2N(2S+1), index = position * (2S+1) + (S - m).
StateVector spin_extended_state(std::size_t N, int twice_spin, int sign = 1);

/// The spin factor alone: sum_s (sign)^s |S-s, -(S-s)> / sqrt(2S+1).
StateVector spin_singlet_factor(int twice_spin, int sign = 1);

/// Two-particle state whose particles carry (position, spin) built from a
/// position state and a spin state.
StateVector position_spin_product(const StateVector &position, const StateVector &spin);

struct SpinReport {
    std::size_t N = 0;
    int twice_spin = 0;
    double capacity_bits = 0.0;
    double norm_deviation = 0.0;
    double reduced_density_deviation = 0.0;
    double factorization_residual = 0.0;
    std::size_t schmidt_rank = 0;
};

SpinReport analyze_spin_state(std::size_t N, int twice_spin, int sign = 1);

/// Spin messages use X^a Z^b on Alice's spin; the combined message is
/// position_message * (2S+1)^2 + a * (2S+1) + b.
class SpinProtocol {
  public:
    SpinProtocol(std::size_t N, const HadamardMatrix &H, int twice_spin, int sign = 1);

    std::size_t message_space() const;
    StateVector encode(std::size_t message) const;

    struct Result {
        std::size_t message = 0;
        std::optional<std::size_t> decoded;
        std::size_t position_message = 0;
        std::size_t spin_message = 0;
        double factorization_residual = 0.0;
        bool ok() const { return decoded && *decoded == message; }
    };
    Result run(std::size_t message) const;

  private:
    SignedPermutationOp spin_op(std::size_t spin_message) const;

    Protocol position_;
    int twice_spin_;
    int sign_;
};

} // namespace sdc
