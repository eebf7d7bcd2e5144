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

// sdc: spatial dense coding simulator.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdc/analysis.hpp"
#include "sdc/error.hpp"
#include "sdc/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::size_t n = 0;
    std::string spin;
    std::string path;
    std::string format;
    std::optional<std::uint64_t> seed;
    bool gates = false;
    std::size_t message = 0;
    bool dump_op = false;
    bool dump_state = false;
    std::string state_file;
    std::string n_list = "1,2,4,8,16,32,64";
    double t = 1.0;
    std::string sign = "+";
};

sdc::RunConfig make_config(const Options &o) {
    sdc::RunConfig cfg;
    if (const char *env = std::getenv("SDC_CONFIG"); env && *env) cfg = sdc::load_config_file(env);
    std::map<std::string, std::string> cli;
    if (o.n) cli["n"] = std::to_string(o.n);
    if (!o.spin.empty()) cli["s"] = o.spin;
    if (!o.path.empty()) cli["path"] = o.path;
    if (!o.format.empty()) cli["format"] = o.format;
    if (o.seed) cli["seed"] = std::to_string(*o.seed);
    return sdc::apply_config(cli, cfg);
}

std::vector<std::size_t> parse_n_list(const std::string &text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const auto v = std::stoul(item, &used);
            if (used != item.size() || v == 0) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception &) {
            sdc::fail(sdc::ErrorCode::ConfigError, "bad --n-list entry '" + item + "'");
        }
    }
    if (out.empty()) sdc::fail(sdc::ErrorCode::ConfigError, "--n-list is empty");
    return out;
}

int parse_sign(const std::string &s) {
    if (s == "+" || s == "+1" || s == "1") return 1;
    if (s == "-" || s == "-1") return -1;
    sdc::fail(sdc::ErrorCode::ConfigError, "--sign must be + or -");
}

int exit_code_for(sdc::ErrorCode code) {
    switch (code) {
    case sdc::ErrorCode::UnsupportedOrder:
    case sdc::ErrorCode::ConstructionUnavailable:
    case sdc::ErrorCode::InvalidMatrix:
    case sdc::ErrorCode::MessageOutOfRange:
    case sdc::ErrorCode::ConfigError:
    case sdc::ErrorCode::ArgOutOfRange:
    case sdc::ErrorCode::DimensionMismatch:
    case sdc::ErrorCode::LabelOutOfRange:
        return kExitUsage;
    default:
        return kExitFailed;
    }
}

sdc::Hadamards hadamards_for(const sdc::RunConfig &cfg, bool need_order_n) {
    return sdc::load_hadamards(cfg, sdc::make_registry(cfg), need_order_n);
}

bool wants_csv(const sdc::RunConfig &cfg) { return cfg.format.empty() || cfg.format == "csv"; }

int cmd_verify(const Options &o) {
    const auto cfg = make_config(o);
    const auto h = hadamards_for(cfg, cfg.path == sdc::DecodePath::Pipeline || o.gates);
    const auto res = o.gates ? sdc::gates_report(cfg, h) : sdc::verify_report(cfg, h);
    std::cout << sdc::dump(res.report);
    for (const auto &name : res.failing) std::cerr << "check failed: " << name << "\n";
    return res.pass() ? kExitOk : kExitFailed;
}

int cmd_bases(const Options &o) {
    const auto cfg = make_config(o);
    std::cout << sdc::dump(sdc::bases_report(cfg, hadamards_for(cfg, false)));
    return kExitOk;
}

int cmd_encode(const Options &o) {
    const auto cfg = make_config(o);
    std::cout << sdc::dump(
        sdc::encode_report(cfg, hadamards_for(cfg, false), o.message, o.dump_op, o.dump_state));
    return kExitOk;
}

int cmd_decode(const Options &o) {
    const auto cfg = make_config(o);
    std::ifstream in(o.state_file);
    if (!in) sdc::fail(sdc::ErrorCode::ConfigError, "cannot open state file " + o.state_file);
    sdc::Json doc;
    try {
        doc = sdc::Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        sdc::fail(sdc::ErrorCode::ConfigError, std::string("state file: ") + e.what());
    }
    // Accept either a bare state or an encode report carrying one.
    const auto &state_doc = doc.contains("state") ? doc["state"] : doc;
    const auto h = hadamards_for(cfg, cfg.path == sdc::DecodePath::Pipeline);
    std::cout << sdc::dump(sdc::decode_report(cfg, h, sdc::state_from_json(state_doc)));
    return kExitOk;
}

int cmd_table(const Options &o) {
    const auto cfg = make_config(o);
    const bool pipe = cfg.path == sdc::DecodePath::Pipeline;
    const auto h = hadamards_for(cfg, pipe);
    const sdc::Protocol protocol(cfg.N, h.H2N, cfg.path, pipe ? &*h.HN : nullptr);
    const auto table = sdc::build_decode_table(protocol.decoder(), protocol.basis(), cfg.tol.chained);
    if (wants_csv(cfg))
        std::cout << sdc::table_csv(protocol, table);
    else
        std::cout << sdc::dump(sdc::table_json(cfg, h, protocol, table));
    return kExitOk;
}

int cmd_run(const Options &o) {
    const auto cfg = make_config(o);
    if (cfg.twice_spin > 0) {
        const auto h = hadamards_for(cfg, false);
        const sdc::SpinProtocol protocol(cfg.N, h.H2N, cfg.twice_spin, parse_sign(o.sign));
        const auto res = protocol.run(o.message);
        std::cout << sdc::dump(sdc::spin_run_report(cfg, h, res));
        return res.ok() ? kExitOk : kExitFailed;
    }
    if (o.message >= sdc::message_count(cfg.N))
        sdc::fail(sdc::ErrorCode::MessageOutOfRange,
                  "message " + std::to_string(o.message) + " not in [0, " +
                      std::to_string(sdc::message_count(cfg.N)) + ")");
    const bool pipe = cfg.path == sdc::DecodePath::Pipeline;
    const auto h = hadamards_for(cfg, pipe);
    const sdc::Protocol protocol(cfg.N, h.H2N, cfg.path, pipe ? &*h.HN : nullptr);
    const auto res = protocol.run(o.message);
    std::cout << sdc::dump(sdc::run_report(cfg, h, res));
    return res.ok() ? kExitOk : kExitFailed;
}

int cmd_sweep(const Options &o) {
    const auto cfg = make_config(o);
    const bool pipe = cfg.path == sdc::DecodePath::Pipeline;
    const auto h = hadamards_for(cfg, pipe);
    const sdc::Protocol protocol(cfg.N, h.H2N, cfg.path, pipe ? &*h.HN : nullptr);
    const auto res = sdc::sweep(protocol, cfg.seed);
    std::cout << sdc::dump(sdc::sweep_report(cfg, h, res));
    return res.all_ok() ? kExitOk : kExitFailed;
}

int cmd_rates(const Options &o) {
    const auto cfg = make_config(o);
    const auto rows = sdc::rate_table(parse_n_list(o.n_list), o.t);
    if (wants_csv(cfg))
        std::cout << sdc::rates_csv(rows);
    else
        std::cout << sdc::dump(sdc::rates_json(rows));
    return kExitOk;
}

int cmd_spin(const Options &o) {
    const auto cfg = make_config(o);
    const auto res = sdc::spin_report(cfg, parse_sign(o.sign));
    std::cout << sdc::dump(res.report);
    return res.pass ? kExitOk : kExitFailed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Spatial dense coding simulator"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--n", o.n, "Number of channels N")->check(CLI::PositiveNumber);
        sub->add_option("--path", o.path, "Decoder: grand or pipeline");
        sub->add_option("--format", o.format, "Output format: json or csv");
        sub->add_option("--seed", o.seed, "Seed for sampled sweeps");
        sub->add_option("--s", o.spin, "Spin S (0, 1/2, 1, ...)");
    };

    struct Entry {
        CLI::App *app;
        int (*run)(const Options &);
    };
    std::vector<Entry> subs;

    auto *bases = app.add_subcommand("bases", "Emit all Bell states and the Gram deviation");
    common(bases);
    subs.push_back({bases, cmd_bases});

    auto *verify = app.add_subcommand("verify", "Run the invariant suite");
    common(verify);
    verify->add_flag("--gates", o.gates, "Per-gate unitarity and involution residuals");
    subs.push_back({verify, cmd_verify});

    auto *encode = app.add_subcommand("encode", "Show the encoding operator for a message");
    common(encode);
    encode->add_option("--message", o.message, "Message id")->required();
    encode->add_flag("--dump-op", o.dump_op, "Include the sparse operator");
    encode->add_flag("--dump-state", o.dump_state, "Include the encoded state");
    subs.push_back({encode, cmd_encode});

    auto *decode = app.add_subcommand("decode", "Decode a state dump");
    common(decode);
    decode->add_option("--state", o.state_file, "JSON state file")->required();
    subs.push_back({decode, cmd_decode});

    auto *table = app.add_subcommand("table", "Emit the decode table");
    common(table);
    subs.push_back({table, cmd_table});

    auto *run = app.add_subcommand("run", "Round trip one message");
    common(run);
    run->add_option("--message", o.message, "Message id")->required();
    run->add_option("--sign", o.sign, "Spin sum sign: + or -");
    subs.push_back({run, cmd_run});

    auto *sweep = app.add_subcommand("sweep", "Round trip every message (or a seeded sample)");
    common(sweep);
    subs.push_back({sweep, cmd_sweep});

    auto *rates = app.add_subcommand("rates", "Transmission rate table");
    common(rates);
    rates->add_option("--n-list", o.n_list, "Comma separated N values");
    rates->add_option("--t", o.t, "Gate time")->check(CLI::PositiveNumber);
    subs.push_back({rates, cmd_rates});

    auto *spin = app.add_subcommand("spin", "Spin-extended source state checks");
    common(spin);
    spin->add_option("--sign", o.sign, "Spin sum sign: + or -");
    subs.push_back({spin, cmd_spin});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        for (const auto &s : subs)
            if (s.app->parsed()) return s.run(o);
    } catch (const sdc::SdcError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    }
    return kExitUsage;
}
