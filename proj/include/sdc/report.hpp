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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdc/analysis.hpp"
#include "sdc/bell.hpp"
#include "sdc/decoder.hpp"
#include "sdc/hadamard.hpp"
#include "sdc/hilbert.hpp"

namespace sdc {

using Json = nlohmann::json;

struct Tolerances {
    double exact = 1e-12;   // single construction steps
    double chained = 1e-10; // products of several operators
};

struct RunConfig {
    std::size_t N = 1;
    int twice_spin = 0;
    DecodePath path = DecodePath::Grand;
    Tolerances tol;
    std::string custom_matrices;
    std::string format; // empty: the command's default
    std::uint64_t seed = 0;
};

/// key=value lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> parse_config_text(const std::string &text,
                                                     const std::string &source = "<text>");
/// Applies recognised keys on top of `base`; unknown keys are ConfigError.
RunConfig apply_config(const std::map<std::string, std::string> &values, RunConfig base = {});
RunConfig load_config_file(const std::string &path);

/// "0", "1/2", "0.5", "3/2", "1" ... -> 2S.
int parse_twice_spin(const std::string &text);
std::string spin_to_string(int twice_spin);

/// Registry from cfg.custom_matrices (empty registry when unset).
HadamardRegistry make_registry(const RunConfig &cfg);

/// The order-2N matrix, and the order-N matrix when the pipeline needs it.
struct Hadamards {
    HadamardMatrix H2N;
    std::optional<HadamardMatrix> HN;
};
Hadamards load_hadamards(const RunConfig &cfg, const HadamardRegistry &registry,
                         bool need_order_n);

Json state_to_json(const StateVector &s);
StateVector state_from_json(const Json &j);

Json label_to_json(const BellLabel &label);
Json outcome_to_json(std::size_t N, const OutcomePair &outcome);
Json distribution_to_json(std::size_t N, const OutcomeDistribution &dist);

/// Header shared by all JSON reports.
Json report_header(const RunConfig &cfg, const Hadamards &h);

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool required = true;
    bool pass() const { return residual <= tolerance; }
};

Json check_to_json(const Check &c);

struct VerifyResult {
    Json report;
    std::vector<std::string> failing; // required checks only
    bool pass() const { return failing.empty(); }
};

VerifyResult verify_report(const RunConfig &cfg, const Hadamards &h);
VerifyResult gates_report(const RunConfig &cfg, const Hadamards &h);

Json bases_report(const RunConfig &cfg, const Hadamards &h);
Json encode_report(const RunConfig &cfg, const Hadamards &h, std::size_t message, bool dump_op,
                   bool dump_state);
Json decode_report(const RunConfig &cfg, const Hadamards &h, const StateVector &state);

/// CSV rows: message, first, second for every protocol message.
std::string table_csv(const Protocol &protocol, const DecodeTable &table);
Json table_json(const RunConfig &cfg, const Hadamards &h, const Protocol &protocol,
                const DecodeTable &table);

Json run_report(const RunConfig &cfg, const Hadamards &h, const RunResult &res);
Json spin_run_report(const RunConfig &cfg, const Hadamards &h, const SpinProtocol::Result &res);
Json sweep_report(const RunConfig &cfg, const Hadamards &h, const SweepResult &res);

std::string rates_csv(const std::vector<RateRow> &rows);
Json rates_json(const std::vector<RateRow> &rows);

struct SpinCheck {
    Json report;
    bool pass = false;
};
SpinCheck spin_report(const RunConfig &cfg, int sign);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json &j);

} // namespace sdc
