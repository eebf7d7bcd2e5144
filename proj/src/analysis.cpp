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

#include "sdc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sdc/encoder.hpp"
#include "sdc/error.hpp"

namespace sdc {

BellLabel state_label_for_message(std::size_t N, std::size_t message) {
    return predicted_label(N, label_of(message, N), kSourceLabel.k, kSourceLabel.r);
}

std::size_t message_for_state_label(std::size_t N, const BellLabel &state) {
    validate_label(state, N);
    const long n = static_cast<long>(N);
    BellLabel op{wrap1(state.k - kSourceLabel.k + 1, n), state.r * kSourceLabel.r, state.j};
    return message_of(op, N);
}

Protocol::Protocol(std::size_t N, const HadamardMatrix &H, DecodePath path,
                   const HadamardMatrix *HN)
    : basis_(N, H), decoder_(make_decoder(path, N, H, HN)) {
    for (const auto &label : all_labels(N)) {
        const auto readout = decoder_->decode(basis_.state(label)).deterministic();
        if (!readout) continue;
        const OutcomePair key{readout->first.value, readout->second.value};
        auto [it, inserted] = table_.emplace(key, label);
        if (!inserted) it->second.reset(); // ambiguous readout
    }
}

StateVector Protocol::encode(std::size_t message) const {
    const auto op = encode_direct_perm(N(), basis_.hadamard(), label_of(message, N()));
    return apply(op, 0, basis_.state(kSourceLabel));
}

std::optional<BellLabel> Protocol::lookup(const OutcomePair &outcome) const {
    auto it = table_.find(outcome);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

RunResult Protocol::run(std::size_t message) const {
    RunResult res;
    res.message = message;
    res.op_label = label_of(message, N());
    res.state_label = state_label_for_message(N(), message);
    const auto dist = decoder_->decode(encode(message));
    const auto &peak = dist.most_likely();
    res.peak_probability = peak.probability;
    if (const auto det = dist.deterministic()) {
        res.outcome = OutcomePair{det->first.value, det->second.value};
        if (const auto label = lookup(*res.outcome))
            res.decoded = message_for_state_label(N(), *label);
    }
    return res;
}

std::size_t run_protocol(std::size_t N, const HadamardMatrix &H, std::size_t message,
                         DecodePath path, const HadamardMatrix *HN) {
    if (message >= message_count(N))
        fail(ErrorCode::MessageOutOfRange, "message " + std::to_string(message) + " not in [0, " +
                                               std::to_string(message_count(N)) + ")");
    Protocol protocol(N, H, path, HN);
    const auto res = protocol.run(message);
    if (!res.outcome)
        fail(ErrorCode::NonDeterministicOutcome,
             "peak probability " + std::to_string(res.peak_probability));
    if (!res.decoded) fail(ErrorCode::NoMatch, "outcome has no unique table entry");
    return *res.decoded;
}

SweepResult sweep(const Protocol &protocol, std::uint64_t seed, std::size_t exhaustive_cap,
                  std::size_t sample_size) {
    SweepResult out;
    out.message_space = message_count(protocol.N());
    std::vector<std::size_t> messages(out.message_space);
    std::iota(messages.begin(), messages.end(), std::size_t{0});
    if (out.message_space > exhaustive_cap) {
        std::vector<std::size_t> picked;
        picked.reserve(sample_size);
        std::mt19937_64 rng(seed);
        std::sample(messages.begin(), messages.end(), std::back_inserter(picked),
                    sample_size, rng);
        messages = std::move(picked);
        out.sampled = true;
    }
    for (auto m : messages) {
        ++out.tested;
        if (protocol.run(m).ok())
            ++out.ok;
        else
            out.failures.push_back(m);
    }
    return out;
}

TimingModel TimingModel::equal_time(std::size_t N, double t) {
    return TimingModel{t, t, 4.0 * t, static_cast<double>(N) * t};
}

double capacity_bits(std::size_t N) { return 2.0 * std::log2(2.0 * static_cast<double>(N)); }

double rate_spatial(std::size_t N, const TimingModel &tm) {
    return capacity_bits(N) / (tm.t_p + tm.t_h + tm.t_u);
}

double rate_spatial_asymptotic(std::size_t N, double t) {
    return capacity_bits(N) / (static_cast<double>(N) * t);
}

double rate_pairwise(std::size_t NN, const TimingModel &tm) {
    const double n = static_cast<double>(NN);
    return 2.0 * n / (n * n * (tm.t_c + tm.t_h));
}

double rate_maximal(std::size_t NN, const TimingModel &tm) {
    if (NN < 2) fail(ErrorCode::ArgOutOfRange, "maximal entanglement needs at least 2 qubits");
    const double n = static_cast<double>(NN);
    return n / ((n - 1.0) * ((n - 1.0) * tm.t_c + tm.t_h));
}

double advantage(std::size_t N, double t) {
    const auto tm = TimingModel::equal_time(N, t);
    return rate_spatial(N, tm) / rate_pairwise(N, tm);
}

double advantage_asymptotic(std::size_t N) { return capacity_bits(N); }

std::vector<RateRow> rate_table(const std::vector<std::size_t> &n_list, double t) {
    if (!(t > 0.0)) fail(ErrorCode::ArgOutOfRange, "gate time must be positive");
    std::vector<RateRow> rows;
    for (auto N : n_list) {
        if (N == 0) fail(ErrorCode::ArgOutOfRange, "N must be positive");
        const auto tm = TimingModel::equal_time(N, t);
        RateRow row;
        row.N = N;
        row.capacity_bits = capacity_bits(N);
        row.rx_exact = rate_spatial(N, tm);
        row.rx_asymptotic = rate_spatial_asymptotic(N, t);
        row.rp = rate_pairwise(N, tm);
        if (N >= 2) row.rm = rate_maximal(N, tm);
        row.advantage = advantage(N, t);
        rows.push_back(row);
    }
    return rows;
}

namespace {

void check_spin(int twice_spin) {
    if (twice_spin < 0) fail(ErrorCode::ArgOutOfRange, "spin must be non-negative");
}

std::size_t spin_dim(int twice_spin) { return static_cast<std::size_t>(twice_spin) + 1; }

double sign_power(int sign, std::size_t s) { return (sign < 0 && s % 2 == 1) ? -1.0 : 1.0; }

} // namespace

double spin_capacity(std::size_t N, int twice_spin) {
    check_spin(twice_spin);
    return 2.0 * std::log2(2.0 * static_cast<double>(N) * static_cast<double>(spin_dim(twice_spin)));
}

StateVector spin_extended_state(std::size_t N, int twice_spin, int sign) {
    check_spin(twice_spin);
    if (N == 0) fail(ErrorCode::ArgOutOfRange, "N must be positive");
    const std::size_t d = spin_dim(twice_spin);
    const std::size_t D = 2 * N * d;
    StateVector out({D, D});
    const double amp = 1.0 / std::sqrt(static_cast<double>(2 * N * d));
    // psi_1 of family (1,-), member 1: +n pairs with -n and -n with +n, all
    // coefficients +1 for the first Walsh row.
    for (int n = 1; n <= static_cast<int>(N); ++n) {
        for (int sgn : {1, -1}) {
            const std::size_t a = label_to_index(PositionLabel(sgn * n), N).value;
            const std::size_t b = label_to_index(PositionLabel(-sgn * n), N).value;
            for (std::size_t s = 0; s < d; ++s) {
                const std::size_t sb = d - 1 - s;
                out[out.pair_index(a * d + s, b * d + sb)] += amp * sign_power(sign, s);
            }
        }
    }
    return out;
}

StateVector spin_singlet_factor(int twice_spin, int sign) {
    check_spin(twice_spin);
    const std::size_t d = spin_dim(twice_spin);
    StateVector out({d, d});
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t s = 0; s < d; ++s) out[out.pair_index(s, d - 1 - s)] = amp * sign_power(sign, s);
    return out;
}

StateVector position_spin_product(const StateVector &position, const StateVector &spin) {
    if (position.dims().size() != 2 || spin.dims().size() != 2)
        fail(ErrorCode::DimensionMismatch, "expected two-particle states");
    const std::size_t P = position.dims()[0], Pb = position.dims()[1];
    const std::size_t d = spin.dims()[0], db = spin.dims()[1];
    StateVector out({P * d, Pb * db});
    for (std::size_t pa = 0; pa < P; ++pa)
        for (std::size_t pb = 0; pb < Pb; ++pb) {
            const Complex x = position[position.pair_index(pa, pb)];
            if (x == Complex{}) continue;
            for (std::size_t sa = 0; sa < d; ++sa)
                for (std::size_t sb = 0; sb < db; ++sb)
                    out[out.pair_index(pa * d + sa, pb * db + sb)] = x * spin[spin.pair_index(sa, sb)];
        }
    return out;
}

namespace {

struct Factorization {
    StateVector position;
    StateVector spin;
    double residual = 0.0;
};

// Splits a (position, spin) state into a product using the largest amplitude
// as the pivot; residual measures how far the state is from that product.
Factorization factorize(const StateVector &s, std::size_t N, std::size_t d) {
    const std::size_t P = 2 * N;
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (std::abs(s[i]) > std::abs(s[pivot])) pivot = i;
    const std::size_t D = P * d;
    const std::size_t ia = pivot / D, ib = pivot % D;
    const std::size_t pa0 = ia / d, sa0 = ia % d, pb0 = ib / d, sb0 = ib % d;

    StateVector pos({P, P});
    for (std::size_t pa = 0; pa < P; ++pa)
        for (std::size_t pb = 0; pb < P; ++pb)
            pos[pos.pair_index(pa, pb)] = s[s.pair_index(pa * d + sa0, pb * d + sb0)];
    StateVector spin({d, d});
    for (std::size_t sa = 0; sa < d; ++sa)
        for (std::size_t sb = 0; sb < d; ++sb)
            spin[spin.pair_index(sa, sb)] = s[s.pair_index(pa0 * d + sa, pb0 * d + sb)];

    pos = Complex(1.0 / std::sqrt(pos.norm_squared())) * pos;
    spin = Complex(1.0 / std::sqrt(spin.norm_squared())) * spin;
    const auto rebuilt = position_spin_product(pos, spin);
    // Compare up to a global phase.
    const Complex ov = inner(rebuilt, s);
    const Complex phase = std::abs(ov) > 0 ? ov / std::abs(ov) : Complex(1.0);
    Factorization out{pos, spin, max_abs_diff(phase * rebuilt, s)};
    return out;
}

} // namespace

SpinReport analyze_spin_state(std::size_t N, int twice_spin, int sign) {
    SpinReport rep;
    rep.N = N;
    rep.twice_spin = twice_spin;
    rep.capacity_bits = spin_capacity(N, twice_spin);
    const std::size_t d = spin_dim(twice_spin);
    const auto psi = spin_extended_state(N, twice_spin, sign);
    rep.norm_deviation = std::abs(psi.norm_squared() - 1.0);

    const std::size_t D = 2 * N * d;
    const Eigen::MatrixXcd target =
        Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D)) /
        static_cast<double>(D);
    for (std::size_t keep : {0u, 1u}) {
        const auto rho = partial_trace(psi, keep);
        rep.reduced_density_deviation = std::max(
            rep.reduced_density_deviation, (rho.matrix() - target).cwiseAbs().maxCoeff());
    }

    const BellBasis basis(N, build_hadamard(2 * N));
    const auto expected =
        position_spin_product(basis.state(kSourceLabel), spin_singlet_factor(twice_spin, sign));
    rep.factorization_residual = max_abs_diff(psi, expected);

    for (double c : schmidt_coefficients(psi))
        if (c > 1e-10) ++rep.schmidt_rank;
    return rep;
}

SpinProtocol::SpinProtocol(std::size_t N, const HadamardMatrix &H, int twice_spin, int sign)
    : position_(N, H, DecodePath::Grand), twice_spin_(twice_spin), sign_(sign) {
    check_spin(twice_spin);
    if (sign != 1 && sign != -1) fail(ErrorCode::ArgOutOfRange, "spin sign must be +1 or -1");
}

std::size_t SpinProtocol::message_space() const {
    const std::size_t d = spin_dim(twice_spin_);
    return message_count(position_.N()) * d * d;
}

SignedPermutationOp SpinProtocol::spin_op(std::size_t spin_message) const {
    const std::size_t d = spin_dim(twice_spin_);
    const std::size_t a = spin_message / d, b = spin_message % d;
    std::vector<std::size_t> target(d);
    std::vector<Complex> phase(d);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t s = 0; s < d; ++s) {
        target[s] = (s + a) % d;
        phase[s] = std::polar(1.0, two_pi * static_cast<double>(b * s % d) / static_cast<double>(d));
    }
    return SignedPermutationOp(std::move(target), std::move(phase));
}

StateVector SpinProtocol::encode(std::size_t message) const {
    if (message >= message_space())
        fail(ErrorCode::MessageOutOfRange, "message " + std::to_string(message) + " not in [0, " +
                                               std::to_string(message_space()) + ")");
    const std::size_t N = position_.N();
    const std::size_t d = spin_dim(twice_spin_);
    const auto pos_op = encode_direct_perm(N, position_.basis().hadamard(), label_of(message / (d * d), N));
    const auto op = kron(pos_op, spin_op(message % (d * d)));
    return apply(op, 0, spin_extended_state(N, twice_spin_, sign_));
}

SpinProtocol::Result SpinProtocol::run(std::size_t message) const {
    Result res;
    res.message = message;
    const std::size_t N = position_.N();
    const std::size_t d = spin_dim(twice_spin_);
    const auto parts = factorize(encode(message), N, d);
    res.factorization_residual = parts.residual;
    if (parts.residual > 1e-9) return res;

    const auto dist = position_.decoder().decode(parts.position);
    const auto det = dist.deterministic();
    if (!det) return res;
    const auto label = position_.lookup({det->first.value, det->second.value});
    if (!label) return res;
    res.position_message = message_for_state_label(N, *label);

    const auto chi = spin_singlet_factor(twice_spin_, sign_);
    double best = -1.0;
    for (std::size_t m = 0; m < d * d; ++m) {
        const double ov = std::abs(inner(apply(spin_op(m), 0, chi), parts.spin));
        if (ov > best) {
            best = ov;
            res.spin_message = m;
        }
    }
    if (std::abs(best - 1.0) > 1e-9) return res;
    res.decoded = res.position_message * d * d + res.spin_message;
    return res;
}

} // namespace sdc
