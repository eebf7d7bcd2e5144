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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdc/bell.hpp"
#include "sdc/gates.hpp"
#include "sdc/hadamard.hpp"
#include "sdc/hilbert.hpp"

namespace sdc {

struct MeasurementOutcome {
    BasisIndex first;
    BasisIndex second;
    double probability = 0.0;
};

/// Projective position readout of a two-particle state.
struct OutcomeDistribution {
    /// Nonzero outcomes in flat-index order.
    std::vector<MeasurementOutcome> outcomes;
    double total = 0.0;

    const MeasurementOutcome &most_likely() const;
    std::optional<MeasurementOutcome> deterministic(double tol = 1e-10) const;
};

OutcomeDistribution measure_positions(const StateVector &s);

enum class DecodePath { Grand, Pipeline };

std::string to_string(DecodePath path);
DecodePath parse_decode_path(const std::string &name);

/// sum_{j,k,r} |j, f'_{k_r}(j)><psi'_(k_r,j)| assembled densely. Throws
/// NonInvolutory if the square misses the identity by more than `tol`.
DenseOp grand_operator(std::size_t N, const HadamardMatrix &H, double tol = 1e-10);

/// The same operator in structured form: for every offset d = y - x mod 2N
/// it applies H to the first label of the pairs (x, x + d).
BlockTransformOp grand_operator_structured(std::size_t N, const HadamardMatrix &H);

/// Pair-level permutation sending psi_(k_r,j) to psi'_(k_r,j) exactly. Used
/// when no local relabeling exists.
SignedPermutationOp explicit_prime_change(std::size_t N, const HadamardMatrix &H);

/// Product state |j, f'_{k_r}(j)> as (first, second) indices.
std::pair<std::size_t, std::size_t> prime_product_outcome(std::size_t N, const BellLabel &label);

class Decoder {
  public:
    virtual ~Decoder() = default;
    virtual DecodePath path() const = 0;
    virtual std::size_t N() const = 0;
    /// Pre-measurement state.
    virtual StateVector transform(const StateVector &s) const = 0;
    OutcomeDistribution decode(const StateVector &s) const { return measure_positions(transform(s)); }
};

/// Bell measurement via the grand operator, preceded by the change to the
/// compact basis (local map when one exists, explicit permutation otherwise).
class GrandDecoder final : public Decoder {
  public:
    GrandDecoder(std::size_t N, const HadamardMatrix &H);

    DecodePath path() const override { return DecodePath::Grand; }
    std::size_t N() const override { return N_; }
    StateVector transform(const StateVector &s) const override;

    StateVector to_prime_basis(const StateVector &s) const;
    bool uses_local_map() const { return prime_map_.has_value(); }
    const std::optional<PrimeMap> &prime_map() const { return prime_map_; }
    const PrimeSearchStats &search_stats() const { return stats_; }
    const BlockTransformOp &grand() const { return grand_; }

    /// Compact-basis label reached from bell_state(label).
    BellLabel prime_label(const BellLabel &label) const;

  private:
    std::size_t N_;
    PrimeSearchStats stats_;
    std::optional<PrimeMap> prime_map_;
    std::optional<SignedPermutationOp> explicit_change_;
    BlockTransformOp grand_;
};

/// U_(N) (H_{x_1} ... H_{x_N} (x) I) PCS followed by position readout.
class PipelineDecoder final : public Decoder {
  public:
    PipelineDecoder(std::size_t N, const HadamardMatrix &HN);

    DecodePath path() const override { return DecodePath::Pipeline; }
    std::size_t N() const override { return N_; }
    StateVector transform(const StateVector &s) const override;

    UnReading un_reading() const { return un_.reading; }

  private:
    std::size_t N_;
    SignedPermutationOp pcs_;
    DenseOp hadamards_;
    UnGate un_;
};

std::unique_ptr<Decoder> make_decoder(DecodePath path, std::size_t N, const HadamardMatrix &H,
                                      const HadamardMatrix *HN);

OutcomeDistribution decode_grand(std::size_t N, const HadamardMatrix &H, const StateVector &s);
OutcomeDistribution decode_pipeline(std::size_t N, const HadamardMatrix &HN, const StateVector &s);

using OutcomePair = std::pair<std::size_t, std::size_t>;

/// Outcome pair -> Bell label of the state that produced it.
class DecodeTable {
  public:
    DecodeTable(std::size_t N, std::vector<OutcomePair> outcome_of_message);

    std::size_t N() const { return N_; }
    std::optional<BellLabel> lookup(const OutcomePair &outcome) const;
    const OutcomePair &outcome(const BellLabel &label) const;
    std::size_t size() const { return by_outcome_.size(); }

  private:
    std::size_t N_;
    std::vector<OutcomePair> outcome_of_message_;
    std::map<OutcomePair, BellLabel> by_outcome_;
};

/// Runs every Bell state through `decoder`. Throws NonDeterministicOutcome
/// when a readout is not a point mass and CollisionDetected when two labels
/// share an outcome.
DecodeTable build_decode_table(const Decoder &decoder, const BellBasis &basis,
                               double tol = 1e-10);

struct PipelineComparison {
    std::size_t N = 0;
    std::size_t deterministic_count = 0;
    double min_peak_probability = 1.0;
    bool outcomes_distinct = false;
    /// Same confusability partition as the grand decoder.
    bool partition_equivalent = false;
    std::size_t pipeline_classes = 0;
    std::size_t grand_classes = 0;
    std::vector<double> peak_probability; // by message
    std::vector<OutcomePair> peak_outcome; // by message
};

/// Labels are confusable under a decoder when their readout distributions
/// share an outcome; decoders are compared by the resulting partitions.
PipelineComparison compare_pipeline(const GrandDecoder &grand, const PipelineDecoder &pipeline,
                                    const BellBasis &basis, double tol = 1e-10);

} // namespace sdc
