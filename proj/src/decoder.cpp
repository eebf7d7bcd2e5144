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

#include "sdc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdc/error.hpp"

namespace sdc {

namespace {

std::vector<std::size_t> components(const std::vector<std::vector<std::size_t>> &support,
                                    std::size_t outcomes) {
    const std::size_t n = support.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::size_t> owner(outcomes, n);
    for (std::size_t m = 0; m < n; ++m) {
        for (auto o : support[m]) {
            if (owner[o] == n)
                owner[o] = m;
            else
                parent[find(m)] = find(owner[o]);
        }
    }
    std::vector<std::size_t> id(n);
    for (std::size_t m = 0; m < n; ++m)
        id[m] = find(m);
    return id;
}

std::size_t count_classes(const std::vector<std::size_t> &id) {
    std::vector<bool> root(id.size(), false);
    for (auto r : id)
        root[r] = true;
    return static_cast<std::size_t>(std::count(root.begin(), root.end(), true));
}

/// Same partition iff the class ids induce the same equivalence.
bool same_partition(const std::vector<std::size_t> &a, const std::vector<std::size_t> &b) {
    std::map<std::size_t, std::size_t> ab, ba;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [it1, new1] = ab.emplace(a[i], b[i]);
        auto [it2, new2] = ba.emplace(b[i], a[i]);
        if ((!new1 && it1->second != b[i]) || (!new2 && it2->second != a[i]))
            return false;
    }
    return true;
}

} // namespace

const MeasurementOutcome &OutcomeDistribution::most_likely() const {
    if (outcomes.empty())
        fail(ErrorCode::DimensionMismatch, "empty outcome distribution");
    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i)
        if (outcomes[i].probability > outcomes[best].probability + 1e-15)
            best = i;
    return outcomes[best];
}

std::optional<MeasurementOutcome> OutcomeDistribution::deterministic(double tol) const {
    if (outcomes.empty())
        return std::nullopt;
    const auto &best = most_likely();
    if (std::abs(best.probability - 1.0) > tol)
        return std::nullopt;
    return best;
}

OutcomeDistribution measure_positions(const StateVector &s) {
    if (s.dims().size() != 2)
        fail(ErrorCode::DimensionMismatch, "position readout needs a two-particle state");
    OutcomeDistribution dist;
    const std::size_t db = s.dims()[1];
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double p = std::norm(s[i]);
        dist.total += p;
        if (p > 1e-15)
            dist.outcomes.push_back({BasisIndex{i / db}, BasisIndex{i % db}, p});
    }
    return dist;
}

std::string to_string(DecodePath path) { return path == DecodePath::Grand ? "grand" : "pipeline"; }

DecodePath parse_decode_path(const std::string &name) {
    if (name == "grand")
        return DecodePath::Grand;
    if (name == "pipeline")
        return DecodePath::Pipeline;
    fail(ErrorCode::ConfigError, "unknown decode path '" + name + "'");
}

std::pair<std::size_t, std::size_t> prime_product_outcome(std::size_t N, const BellLabel &label) {
    validate_label(label, N);
    const std::size_t x = static_cast<std::size_t>(label.j - 1);
    return {x, (x + prime_shift(label.k, label.r, N)) % (2 * N)};
}

DenseOp grand_operator(std::size_t N, const HadamardMatrix &H, double tol) {
    const std::size_t d = 2 * N;
    const auto dim = static_cast<Eigen::Index>(d * d);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &lab : all_labels(N)) {
        const StateVector psi = bell_prime_state(N, lab, H);
        const auto [x, y] = prime_product_outcome(N, lab);
        const auto row = static_cast<Eigen::Index>(x * d + y);
        for (std::size_t c = 0; c < psi.size(); ++c)
            if (psi[c] != Complex{})
                m(row, static_cast<Eigen::Index>(c)) += std::conj(psi[c]);
    }
    DenseOp op(std::move(m));
    const double inv = involution_residual(op);
    if (inv > tol)
        fail(ErrorCode::NonInvolutory, "grand operator squared misses identity by " +
                                           std::to_string(inv));
    return op;
}

BlockTransformOp grand_operator_structured(std::size_t N, const HadamardMatrix &H) {
    if (H.order() != 2 * N)
        fail(ErrorCode::OrderMismatch, "Hadamard order must be 2N");
    const std::size_t d = 2 * N;
    std::vector<std::size_t> in_slot(d * d), out_index(d * d);
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) {
            const std::size_t diff = (y + d - x) % d;
            in_slot[x * d + y] = diff * d + x;
        }
    }
    for (std::size_t diff = 0; diff < d; ++diff)
        for (std::size_t x = 0; x < d; ++x)
            out_index[diff * d + x] = x * d + (x + diff) % d;
    Eigen::MatrixXcd block = H.dense().cast<Complex>();
    return BlockTransformOp(std::move(in_slot), std::move(out_index), std::move(block));
}

SignedPermutationOp explicit_prime_change(std::size_t N, const HadamardMatrix &H) {
    const std::size_t d = 2 * N;
    const BellBasis basis(N, H);
    std::vector<std::size_t> t(d * d);
    for (int k = 1; k <= static_cast<int>(N); ++k) {
        for (int r : {1, -1}) {
            const std::size_t fam = family_index(k, r);
            const std::size_t shift = prime_shift(k, r, N);
            for (std::size_t a = 0; a < d; ++a) {
                const std::size_t col = basis.column(a);
                t[a * d + basis.partner(fam, a)] = col * d + (col + shift) % d;
            }
        }
    }
    return SignedPermutationOp(std::move(t), std::vector<Complex>(d * d, 1.0));
}

GrandDecoder::GrandDecoder(std::size_t N, const HadamardMatrix &H)
    : N_(N), grand_(grand_operator_structured(N, H)) {
    prime_map_ = search_prime_map(N, H, &stats_);
    if (!prime_map_)
        explicit_change_ = explicit_prime_change(N, H);
}

StateVector GrandDecoder::to_prime_basis(const StateVector &s) const {
    if (prime_map_)
        return apply(prime_map_->bob, 1, apply(prime_map_->alice, 0, s));
    return apply(*explicit_change_, s);
}

StateVector GrandDecoder::transform(const StateVector &s) const {
    return apply(grand_, to_prime_basis(s));
}

BellLabel GrandDecoder::prime_label(const BellLabel &label) const {
    if (prime_map_)
        return prime_map_->image[message_of(label, N_)];
    validate_label(label, N_);
    return label;
}

PipelineDecoder::PipelineDecoder(std::size_t N, const HadamardMatrix &HN)
    : N_(N), pcs_(gate_PCS(N)), hadamards_(gate_Hx_all(N)), un_(gate_UN(N, HN)) {}

StateVector PipelineDecoder::transform(const StateVector &s) const {
    return apply(un_.op, apply(hadamards_, 0, apply(pcs_, s)));
}

std::unique_ptr<Decoder> make_decoder(DecodePath path, std::size_t N, const HadamardMatrix &H,
                                      const HadamardMatrix *HN) {
    if (path == DecodePath::Grand)
        return std::make_unique<GrandDecoder>(N, H);
    if (HN == nullptr)
        fail(ErrorCode::ConfigError, "pipeline decoder needs an order-N Hadamard matrix");
    return std::make_unique<PipelineDecoder>(N, *HN);
}

OutcomeDistribution decode_grand(std::size_t N, const HadamardMatrix &H, const StateVector &s) {
    return GrandDecoder(N, H).decode(s);
}

OutcomeDistribution decode_pipeline(std::size_t N, const HadamardMatrix &HN, const StateVector &s) {
    return PipelineDecoder(N, HN).decode(s);
}

DecodeTable::DecodeTable(std::size_t N, std::vector<OutcomePair> outcome_of_message)
    : N_(N), outcome_of_message_(std::move(outcome_of_message)) {
    if (outcome_of_message_.size() != message_count(N))
        fail(ErrorCode::DimensionMismatch, "decode table needs one outcome per label");
    for (std::size_t m = 0; m < outcome_of_message_.size(); ++m) {
        auto [it, inserted] = by_outcome_.emplace(outcome_of_message_[m], label_of(m, N));
        if (!inserted)
            fail(ErrorCode::CollisionDetected,
                 to_string(label_of(m, N)) + " and " + to_string(it->second) +
                     " share outcome (" + std::to_string(it->first.first) + ", " +
                     std::to_string(it->first.second) + ")");
    }
}

std::optional<BellLabel> DecodeTable::lookup(const OutcomePair &outcome) const {
    auto it = by_outcome_.find(outcome);
    if (it == by_outcome_.end())
        return std::nullopt;
    return it->second;
}

const OutcomePair &DecodeTable::outcome(const BellLabel &label) const {
    return outcome_of_message_[message_of(label, N_)];
}

DecodeTable build_decode_table(const Decoder &decoder, const BellBasis &basis, double tol) {
    const std::size_t N = basis.N();
    std::vector<OutcomePair> outcomes(message_count(N));
    for (std::size_t m = 0; m < message_count(N); ++m) {
        const BellLabel lab = label_of(m, N);
        const auto dist = decoder.decode(basis.state(lab));
        const auto hit = dist.deterministic(tol);
        if (!hit)
            fail(ErrorCode::NonDeterministicOutcome,
                 to_string(decoder.path()) + " readout of " + to_string(lab) +
                     " peaks at probability " + std::to_string(dist.most_likely().probability));
        outcomes[m] = {hit->first.value, hit->second.value};
    }
    return DecodeTable(N, std::move(outcomes));
}

PipelineComparison compare_pipeline(const GrandDecoder &grand, const PipelineDecoder &pipeline,
                                    const BellBasis &basis, double tol) {
    const std::size_t N = basis.N();
    const std::size_t count = message_count(N);
    const std::size_t outcomes = 4 * N * N;
    PipelineComparison cmp;
    cmp.N = N;
    cmp.peak_probability.resize(count);
    cmp.peak_outcome.resize(count);
    std::vector<std::vector<std::size_t>> grand_support(count), pipe_support(count);
    std::map<OutcomePair, std::size_t> seen;
    for (std::size_t m = 0; m < count; ++m) {
        const StateVector psi = basis.state(label_of(m, N));
        const auto gd = grand.decode(psi);
        const auto pd = pipeline.decode(psi);
        for (const auto &o : gd.outcomes)
            if (o.probability > tol)
                grand_support[m].push_back(o.first.value * 2 * N + o.second.value);
        for (const auto &o : pd.outcomes)
            if (o.probability > tol)
                pipe_support[m].push_back(o.first.value * 2 * N + o.second.value);
        const auto &peak = pd.most_likely();
        cmp.peak_probability[m] = peak.probability;
        cmp.peak_outcome[m] = {peak.first.value, peak.second.value};
        cmp.min_peak_probability = std::min(cmp.min_peak_probability, peak.probability);
        if (pd.deterministic(tol)) {
            ++cmp.deterministic_count;
            seen.emplace(cmp.peak_outcome[m], m);
        }
    }
    cmp.outcomes_distinct = cmp.deterministic_count == count && seen.size() == count;
    const auto gid = components(grand_support, outcomes);
    const auto pid = components(pipe_support, outcomes);
    cmp.grand_classes = count_classes(gid);
    cmp.pipeline_classes = count_classes(pid);
    cmp.partition_equivalent = same_partition(gid, pid);
    return cmp;
}

} // namespace sdc
