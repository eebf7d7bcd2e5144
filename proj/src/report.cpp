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

#include "sdc/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sdc/encoder.hpp"
#include "sdc/error.hpp"
#include "sdc/gates.hpp"

namespace sdc {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size() && v > 0.0) return v;
    } catch (const std::exception &) {
    }
    fail(ErrorCode::ConfigError, key + ": expected a positive number, got '" + value + "'");
}

std::uint64_t parse_u64(const std::string &key, const std::string &value) {
    try {
        std::size_t used = 0;
        if (!value.empty() && value[0] != '-') {
            const auto v = std::stoull(value, &used);
            if (used == value.size()) return v;
        }
    } catch (const std::exception &) {
    }
    fail(ErrorCode::ConfigError, key + ": expected a non-negative integer, got '" + value + "'");
}

} // namespace

std::map<std::string, std::string> parse_config_text(const std::string &text,
                                                     const std::string &source) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::ConfigError,
                 source + ":" + std::to_string(lineno) + ": expected key=value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

RunConfig apply_config(const std::map<std::string, std::string> &values, RunConfig cfg) {
    for (const auto &[key, value] : values) {
        if (key == "n") {
            const auto n = parse_u64(key, value);
            if (n == 0) fail(ErrorCode::ConfigError, "n must be positive");
            cfg.N = static_cast<std::size_t>(n);
        } else if (key == "s") {
            cfg.twice_spin = parse_twice_spin(value);
        } else if (key == "path") {
            cfg.path = parse_decode_path(value);
        } else if (key == "tolerance.exact") {
            cfg.tol.exact = parse_double(key, value);
        } else if (key == "tolerance.chained") {
            cfg.tol.chained = parse_double(key, value);
        } else if (key == "hadamard.custom_matrices") {
            cfg.custom_matrices = value;
        } else if (key == "format") {
            if (value != "json" && value != "csv")
                fail(ErrorCode::ConfigError, "format must be json or csv");
            cfg.format = value;
        } else if (key == "seed") {
            cfg.seed = parse_u64(key, value);
        } else {
            fail(ErrorCode::ConfigError, "unknown config key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig load_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigError, "cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return apply_config(parse_config_text(buf.str(), path));
}

int parse_twice_spin(const std::string &text) {
    const std::string t = trim(text);
    try {
        std::size_t used = 0;
        if (const auto slash = t.find('/'); slash != std::string::npos) {
            const int num = std::stoi(t.substr(0, slash), &used);
            if (used == slash && t.substr(slash + 1) == "2" && num >= 0) return num;
        } else {
            const double v = std::stod(t, &used);
            const double twice = 2.0 * v;
            if (used == t.size() && v >= 0.0 && twice == std::floor(twice))
                return static_cast<int>(twice);
        }
    } catch (const std::exception &) {
    }
    fail(ErrorCode::ConfigError, "spin must be a non-negative half-integer, got '" + text + "'");
}

std::string spin_to_string(int twice_spin) {
    if (twice_spin % 2 == 0) return std::to_string(twice_spin / 2);
    return std::to_string(twice_spin) + "/2";
}

HadamardRegistry make_registry(const RunConfig &cfg) {
    if (cfg.custom_matrices.empty()) return {};
    return HadamardRegistry::load(cfg.custom_matrices);
}

Hadamards load_hadamards(const RunConfig &cfg, const HadamardRegistry &registry,
                         bool need_order_n) {
    const HadamardRegistry *reg = registry.empty() ? nullptr : &registry;
    Hadamards h{build_hadamard(2 * cfg.N, reg), std::nullopt};
    if (need_order_n) {
        h.HN = build_hadamard(cfg.N, reg);
    } else {
        try {
            h.HN = build_hadamard(cfg.N, reg);
        } catch (const SdcError &) {
        }
    }
    return h;
}

Json state_to_json(const StateVector &s) {
    Json amps = Json::array();
    for (const auto &a : s.amplitudes()) amps.push_back({a.real(), a.imag()});
    return Json{{"dims", s.dims()}, {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const Json &j) {
    try {
        auto dims = j.at("dims").get<std::vector<std::size_t>>();
        const auto &amps = j.at("amplitudes");
        std::vector<Complex> values;
        values.reserve(amps.size());
        for (const auto &p : amps) {
            if (!p.is_array() || p.size() != 2)
                fail(ErrorCode::ConfigError, "amplitudes must be [re, im] pairs");
            values.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return StateVector(std::move(dims), std::move(values));
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::ConfigError, std::string("malformed state: ") + e.what());
    }
}

Json label_to_json(const BellLabel &label) {
    return Json{{"k", label.k}, {"r", label.r}, {"j", label.j}, {"text", to_string(label)}};
}

Json outcome_to_json(std::size_t N, const OutcomePair &outcome) {
    return Json{{"first", outcome.first},
                {"second", outcome.second},
                {"first_label", index_to_label({outcome.first}, N).value()},
                {"second_label", index_to_label({outcome.second}, N).value()}};
}

Json distribution_to_json(std::size_t N, const OutcomeDistribution &dist) {
    Json out = Json::array();
    for (const auto &o : dist.outcomes) {
        Json e = outcome_to_json(N, {o.first.value, o.second.value});
        e["probability"] = o.probability;
        out.push_back(std::move(e));
    }
    return out;
}

Json report_header(const RunConfig &cfg, const Hadamards &h) {
    Json hdr;
    hdr["N"] = cfg.N;
    hdr["S"] = spin_to_string(cfg.twice_spin);
    hdr["path"] = to_string(cfg.path);
    hdr["hadamard"] = {{"order", h.H2N.order()}, {"construction", h.H2N.construction()}};
    if (h.HN)
        hdr["hadamard_n"] = {{"order", h.HN->order()}, {"construction", h.HN->construction()}};
    else
        hdr["hadamard_n"] = nullptr;
    hdr["tolerances"] = {{"exact", cfg.tol.exact}, {"chained", cfg.tol.chained}};
    hdr["seed"] = cfg.seed;

    Json conv;
    conv["index_map"] = "+n->n-1, -n->N+n-1";
    conv["pair_index"] = "first*2N+second";
    conv["modular"] = "zero-free: ((x-1) mod N)+1";
    conv["message"] = "((k-1)*2+(1-r)/2)*2N+(j-1)";
    conv["prime_embedding"] = "y>0 -> y-1, -y -> (y-1+N) mod 2N";
    conv["source_state"] = to_string(kSourceLabel);
    const BellBasis basis(cfg.N, h.H2N);
    try {
        const auto reading = resolve_composition(basis, 1, cfg.tol.chained);
        conv["oj_exponent"] = to_string(reading.exponent);
        conv["composition_order"] = to_string(reading.order);
    } catch (const SdcError &e) {
        try {
            conv["oj_exponent"] = to_string(resolve_oj_reading(basis, 1));
        } catch (const SdcError &) {
            conv["oj_exponent"] = "unresolved";
        }
        conv["composition_order"] = "unresolved";
    }
    if (h.HN) {
        try {
            conv["un_reading"] = to_string(gate_UN(cfg.N, *h.HN, cfg.tol.chained).reading);
        } catch (const SdcError &) {
            conv["un_reading"] = "unresolved";
        }
    } else {
        conv["un_reading"] = "unavailable";
    }
    hdr["conventions"] = std::move(conv);
    return hdr;
}

Json check_to_json(const Check &c) {
    return Json{{"name", c.name},
                {"residual", c.residual},
                {"tolerance", c.tolerance},
                {"pass", c.pass()},
                {"required", c.required}};
}

namespace {

double reduced_density_deviation(const std::vector<StateVector> &states, std::size_t N) {
    const auto d = static_cast<Eigen::Index>(2 * N);
    const Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
    double dev = 0.0;
    for (const auto &s : states)
        for (std::size_t keep : {0u, 1u})
            dev = std::max(dev, (partial_trace(s, keep).matrix() - target).cwiseAbs().maxCoeff());
    return dev;
}

struct CheckList {
    std::vector<Check> checks;
    void add(std::string name, double residual, double tol, bool required = true) {
        checks.push_back(Check{std::move(name), residual, tol, required});
    }
    VerifyResult finish(Json report) const {
        VerifyResult out;
        Json arr = Json::array();
        for (const auto &c : checks) {
            arr.push_back(check_to_json(c));
            if (c.required && !c.pass()) out.failing.push_back(c.name);
        }
        report["checks"] = std::move(arr);
        report["failing"] = out.failing;
        report["pass"] = out.failing.empty();
        out.report = std::move(report);
        return out;
    }
};

Json gate_entry(const std::string &name, const DenseOp &op, bool involution) {
    Json e{{"name", name}, {"unitarity_residual", unitarity_residual(op)}};
    e["involution_residual"] = involution ? Json(involution_residual(op)) : Json(nullptr);
    return e;
}

} // namespace

VerifyResult gates_report(const RunConfig &cfg, const Hadamards &h) {
    const std::size_t N = cfg.N;
    const double tol = cfg.tol.chained;
    CheckList list;
    Json gates = Json::array();
    auto record = [&](const std::string &name, const DenseOp &op, bool involution) {
        auto e = gate_entry(name, op, involution);
        list.add(name + ".unitarity", e["unitarity_residual"].get<double>(), tol);
        if (involution) list.add(name + ".involution", e["involution_residual"].get<double>(), tol);
        gates.push_back(std::move(e));
    };
    for (int n = 1; n <= static_cast<int>(N); ++n) {
        const std::string site = std::to_string(n);
        record("N_" + site, gate_Nn(N, n).dense(), true);
        record("P_" + site, gate_Pn(N, n).dense(), true);
        record("H_x" + site, gate_Hxn(N, n), true);
    }
    const DenseOp lplus = gate_Lplus(N, 1).dense();
    record("L_plus", lplus, N <= 2);
    const double order_res = max_abs_diff(gate_Lplus(N, static_cast<long>(N)).dense(),
                                          DenseOp::identity(2 * N));
    list.add("L_plus.order_N", order_res, tol);
    gates.back()["order_N_residual"] = order_res;
    record("PCS", gate_PCS(N).dense(), true);

    Json un = nullptr;
    if (h.HN) {
        un = Json::object();
        Json readings = Json::array();
        for (auto reading : {UnReading::DoubleNormalized, UnReading::SignTimesPrefactor}) {
            const DenseOp dense = gate_UN_dense(N, *h.HN, reading);
            const DenseOp structured = gate_UN_structured(N, *h.HN, reading).dense();
            Json e = gate_entry("U_N", dense, true);
            e["reading"] = to_string(reading);
            e["structured_vs_dense"] = max_abs_diff(dense, structured);
            readings.push_back(std::move(e));
        }
        un["readings"] = std::move(readings);
        try {
            const auto chosen = gate_UN(N, *h.HN, tol);
            un["chosen"] = to_string(chosen.reading);
            list.add("U_N.unitarity", chosen.unitarity_residual, tol);
            list.add("U_N.involution", chosen.involution_residual, tol);
        } catch (const SdcError &) {
            un["chosen"] = nullptr;
            list.add("U_N.unitarity", 1.0, tol);
        }
    }
    Json report;
    report["header"] = report_header(cfg, h);
    report["gates"] = std::move(gates);
    report["U_N"] = std::move(un);
    return list.finish(std::move(report));
}

VerifyResult verify_report(const RunConfig &cfg, const Hadamards &h) {
    const std::size_t N = cfg.N;
    const double ex = cfg.tol.exact, ch = cfg.tol.chained;
    const HadamardMatrix &H = h.H2N;
    CheckList list;
    Json findings;

    list.add("hadamard.involution", involution_residual(H), ex);
    list.add("hadamard.symmetric", is_symmetric(H) ? 0.0 : 1.0, 0.0);
    if (h.HN) {
        list.add("hadamard_n.involution", involution_residual(*h.HN), ex);
        list.add("hadamard_n.symmetric", is_symmetric(*h.HN) ? 0.0 : 1.0, 0.0);
    }

    const BellBasis basis(N, H);
    const auto labels = all_labels(N);
    {
        std::vector<StateVector> states, primes;
        for (const auto &l : labels) {
            states.push_back(basis.state(l));
            primes.push_back(bell_prime_state(N, l, H));
        }
        list.add("bell.gram", gram_max_deviation(states), ex);
        list.add("bell.reduced_density", reduced_density_deviation(states, N), ex);
        list.add("bell_prime.gram", gram_max_deviation(primes), ex);
        list.add("bell_prime.reduced_density", reduced_density_deviation(primes, N), ex);
    }

    // Encoding law on the j' = 1 members of every family.
    {
        std::size_t mismatches = 0;
        double deficit = 0.0;
        for (const auto &op : labels)
            for (int k = 1; k <= static_cast<int>(N); ++k)
                for (int r : {1, -1}) {
                    try {
                        const auto res = encode_action_check(basis, op, k, r, ch);
                        if (!res.law_holds) ++mismatches;
                        deficit = std::max(deficit, 1.0 - res.overlap);
                    } catch (const SdcError &) {
                        ++mismatches;
                        deficit = 1.0;
                    }
                }
        list.add("encoder.law_label_mismatches", static_cast<double>(mismatches), 0.0);
        list.add("encoder.law_overlap_deficit", deficit, ch);
    }

    // Gate decomposition of the encoder.
    {
        Json comp;
        double best = 1.0;
        bool resolved = false;
        try {
            const auto reading = resolve_composition(basis, 1, ch);
            const auto rep = compare_composed_direct(basis, reading);
            comp["oj_exponent"] = to_string(reading.exponent);
            comp["order"] = to_string(reading.order);
            comp["max_matrix_residual"] = rep.max_matrix_residual;
            best = rep.max_state_residual;
            resolved = true;
        } catch (const SdcError &e) {
            comp["error"] = e.what();
            for (auto order : {ProductOrder::FamilyTimesMember, ProductOrder::MemberTimesFamily}) {
                CompositionReading reading{OjExponentReading::Corrected, order, 1};
                const auto rep = compare_composed_direct(basis, reading);
                comp["residual_" + to_string(order)] = rep.max_state_residual;
                comp["label_mismatches_" + to_string(order)] = rep.label_mismatches;
                best = std::min(best, rep.label_mismatches == 0 ? rep.max_state_residual : 1.0);
            }
        }
        comp["resolved"] = resolved;
        list.add("encoder.composed_equivalence", best, ch);
        const auto fam = check_family_shift(basis, ch);
        comp["family_shift"] = {{"checked", fam.checked},
                                {"bell_outputs", fam.bell_outputs},
                                {"member_preserved", fam.member_preserved}};
        const auto members = sweep_all_members(basis, ch);
        comp["all_members"] = {{"checked", members.checked}, {"bell_outputs", members.bell_outputs}};
        findings["encoder"] = std::move(comp);
    }

    // Gates.
    {
        const auto gates = gates_report(cfg, h);
        double unit = 0.0, inv = 0.0;
        for (const auto &c : gates.report["checks"]) {
            const std::string name = c["name"];
            const double res = c["residual"].get<double>();
            if (name.ends_with(".unitarity")) unit = std::max(unit, res);
            else inv = std::max(inv, res);
        }
        list.add("gates.unitarity", unit, ch);
        list.add("gates.involution", inv, ch);
        if (h.HN) findings["un_reading"] = gates.report["U_N"]["chosen"];
    }

    // Grand operator and the primed basis.
    const GrandDecoder grand(N, H);
    {
        const DenseOp dense = grand_operator(N, H, ch);
        list.add("decoder.grand_unitarity", unitarity_residual(dense), ch);
        list.add("decoder.grand_involution", involution_residual(dense), ch);
        list.add("decoder.grand_structured_match", max_abs_diff(dense, grand.grand().dense()), ex);
        double deficit = 0.0, change = 0.0;
        for (const auto &l : labels) {
            const auto [x, y] = prime_product_outcome(N, l);
            const auto out = apply(grand.grand(), bell_prime_state(N, l, H));
            deficit = std::max(deficit, 1.0 - std::norm(out[out.pair_index(x, y)]));
            change = std::max(change, max_abs_diff(grand.to_prime_basis(basis.state(l)),
                                                   bell_prime_state(N, grand.prime_label(l), H)));
        }
        list.add("decoder.grand_prime_outcomes", deficit, ch);
        list.add("decoder.prime_change", change, ex);
        findings["prime_change"] = {{"local_map_found", grand.uses_local_map()},
                                    {"search_nodes", grand.search_stats().nodes},
                                    {"budget_exhausted", grand.search_stats().budget_exhausted},
                                    {"method", grand.uses_local_map() ? "local" : "explicit"}};
    }

    // Decode table and round trips.
    {
        std::size_t entries = 0;
        try {
            entries = build_decode_table(grand, basis, ch).size();
        } catch (const SdcError &e) {
            findings["table_error"] = e.what();
        }
        list.add("decoder.table_missing_entries",
                 static_cast<double>(message_count(N) - entries), 0.0);
        findings["capacity"] = {{"distinguishable_messages", entries},
                                {"bits_per_particle", entries ? std::log2(double(entries)) : 0.0},
                                {"expected_bits", capacity_bits(N)}};
        const Protocol protocol(N, H, DecodePath::Grand);
        const auto sw = sweep(protocol, cfg.seed);
        list.add("protocol.round_trip_failures", static_cast<double>(sw.failures.size()), 0.0);
        findings["round_trip"] = {{"tested", sw.tested}, {"sampled", sw.sampled}};
    }

    if (cfg.path == DecodePath::Pipeline) {
        if (!h.HN) fail(ErrorCode::UnsupportedOrder, "pipeline needs an order-N Hadamard");
        const PipelineDecoder pipe(N, *h.HN);
        const auto cmp = compare_pipeline(grand, pipe, basis, ch);
        Json p;
        p["un_reading"] = to_string(pipe.un_reading());
        p["deterministic_count"] = cmp.deterministic_count;
        p["message_count"] = message_count(N);
        p["min_peak_probability"] = cmp.min_peak_probability;
        p["outcomes_distinct"] = cmp.outcomes_distinct;
        p["partition_equivalent"] = cmp.partition_equivalent;
        p["pipeline_classes"] = cmp.pipeline_classes;
        p["grand_classes"] = cmp.grand_classes;
        Json per = Json::array();
        for (std::size_t m = 0; m < message_count(N); ++m) {
            Json e = outcome_to_json(N, cmp.peak_outcome[m]);
            e["message"] = m;
            e["label"] = to_string(label_of(m, N));
            e["peak_probability"] = cmp.peak_probability[m];
            per.push_back(std::move(e));
        }
        p["states"] = std::move(per);
        findings["pipeline"] = std::move(p);
        // Deterministic readout is demanded only where the pipeline reduces to
        // standard dense coding.
        list.add("pipeline.nondeterministic_states",
                 static_cast<double>(message_count(N) - cmp.deterministic_count), 0.0, N == 1);
        list.add("pipeline.outcomes_collide", cmp.outcomes_distinct ? 0.0 : 1.0, 0.0, N == 1);
        list.add("pipeline.partition_mismatch", cmp.partition_equivalent ? 0.0 : 1.0, 0.0, false);
    }

    Json report;
    report["header"] = report_header(cfg, h);
    report["findings"] = std::move(findings);
    return list.finish(std::move(report));
}

Json bases_report(const RunConfig &cfg, const Hadamards &h) {
    const BellBasis basis(cfg.N, h.H2N);
    std::vector<StateVector> states;
    Json arr = Json::array();
    for (const auto &l : all_labels(cfg.N)) {
        states.push_back(basis.state(l));
        arr.push_back({{"message", message_of(l, cfg.N)},
                       {"label", label_to_json(l)},
                       {"state", state_to_json(states.back())}});
    }
    Json out;
    out["header"] = report_header(cfg, h);
    out["gram_max_deviation"] = gram_max_deviation(states);
    out["states"] = std::move(arr);
    return out;
}

Json encode_report(const RunConfig &cfg, const Hadamards &h, std::size_t message, bool dump_op,
                   bool dump_state) {
    if (message >= message_count(cfg.N))
        fail(ErrorCode::MessageOutOfRange, "message " + std::to_string(message) + " not in [0, " +
                                               std::to_string(message_count(cfg.N)) + ")");
    const BellLabel label = label_of(message, cfg.N);
    Json out;
    out["header"] = report_header(cfg, h);
    out["message"] = message;
    out["op_label"] = label_to_json(label);
    out["source_label"] = label_to_json(kSourceLabel);
    out["state_label"] = label_to_json(state_label_for_message(cfg.N, message));
    const auto op = encode_direct_perm(cfg.N, h.H2N, label);
    if (dump_op) {
        Json entries = Json::array();
        for (std::size_t i = 0; i < op.dim(); ++i)
            entries.push_back({{"index", i},
                               {"target", op.target(i)},
                               {"sign", static_cast<int>(std::lround(op.phase(i).real()))}});
        out["operator"] = {{"dim", op.dim()}, {"entries", std::move(entries)}};
    }
    if (dump_state) {
        const BellBasis basis(cfg.N, h.H2N);
        out["state"] = state_to_json(apply(op, 0, basis.state(kSourceLabel)));
    }
    return out;
}

Json decode_report(const RunConfig &cfg, const Hadamards &h, const StateVector &state) {
    const std::size_t d = 2 * cfg.N;
    if (state.dims() != std::vector<std::size_t>{d, d})
        fail(ErrorCode::DimensionMismatch, "state dims do not match 2N = " + std::to_string(d));
    if (cfg.path == DecodePath::Pipeline && !h.HN)
        fail(ErrorCode::UnsupportedOrder, "pipeline needs an order-N Hadamard");
    const Protocol protocol(cfg.N, h.H2N, cfg.path, h.HN ? &*h.HN : nullptr);
    const auto dist = protocol.decoder().decode(state);
    Json out;
    out["header"] = report_header(cfg, h);
    out["outcomes"] = distribution_to_json(cfg.N, dist);
    out["total_probability"] = dist.total;
    const auto det = dist.deterministic(cfg.tol.chained);
    out["deterministic"] = det.has_value();
    out["state_label"] = nullptr;
    out["message"] = nullptr;
    if (det) {
        if (const auto label = protocol.lookup({det->first.value, det->second.value})) {
            out["state_label"] = label_to_json(*label);
            out["message"] = message_for_state_label(cfg.N, *label);
        }
    }
    return out;
}

std::string table_csv(const Protocol &protocol, const DecodeTable &table) {
    std::string out = "message,first,second\n";
    for (std::size_t m = 0; m < message_count(protocol.N()); ++m) {
        const auto &o = table.outcome(state_label_for_message(protocol.N(), m));
        out += std::to_string(m) + "," + std::to_string(o.first) + "," +
               std::to_string(o.second) + "\n";
    }
    return out;
}

Json table_json(const RunConfig &cfg, const Hadamards &h, const Protocol &protocol,
                const DecodeTable &table) {
    Json rows = Json::array();
    for (std::size_t m = 0; m < message_count(protocol.N()); ++m) {
        Json e = outcome_to_json(cfg.N, table.outcome(state_label_for_message(protocol.N(), m)));
        e["message"] = m;
        rows.push_back(std::move(e));
    }
    return Json{{"header", report_header(cfg, h)}, {"table", std::move(rows)}};
}

Json run_report(const RunConfig &cfg, const Hadamards &h, const RunResult &res) {
    Json out;
    out["header"] = report_header(cfg, h);
    out["message"] = res.message;
    out["op_label"] = label_to_json(res.op_label);
    out["state_label"] = label_to_json(res.state_label);
    out["outcome"] = res.outcome ? outcome_to_json(cfg.N, *res.outcome) : Json(nullptr);
    out["peak_probability"] = res.peak_probability;
    out["decoded"] = res.decoded ? Json(*res.decoded) : Json(nullptr);
    out["ok"] = res.ok();
    return out;
}

Json spin_run_report(const RunConfig &cfg, const Hadamards &h, const SpinProtocol::Result &res) {
    const std::size_t d = static_cast<std::size_t>(cfg.twice_spin) + 1;
    Json out;
    out["header"] = report_header(cfg, h);
    out["message"] = res.message;
    out["position_message"] = res.message / (d * d);
    out["spin_message"] = res.message % (d * d);
    out["op_label"] = label_to_json(label_of(res.message / (d * d), cfg.N));
    out["factorization_residual"] = res.factorization_residual;
    out["decoded"] = res.decoded ? Json(*res.decoded) : Json(nullptr);
    out["ok"] = res.ok();
    return out;
}

Json sweep_report(const RunConfig &cfg, const Hadamards &h, const SweepResult &res) {
    Json out;
    out["header"] = report_header(cfg, h);
    out["messages_total"] = res.tested;
    out["message_space"] = res.message_space;
    out["sampled"] = res.sampled;
    out["round_trip_ok"] = res.all_ok();
    out["ok_count"] = res.ok;
    out["failures"] = res.failures;
    return out;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string rates_csv(const std::vector<RateRow> &rows) {
    std::string out = "N,capacity_bits,R_x_exact,R_x_asymptotic,R_p,R_m,advantage\n";
    for (const auto &r : rows) {
        out += std::to_string(r.N) + "," + fmt(r.capacity_bits) + "," + fmt(r.rx_exact) + "," +
               fmt(r.rx_asymptotic) + "," + fmt(r.rp) + "," + (r.rm ? fmt(*r.rm) : "") + "," +
               fmt(r.advantage) + "\n";
    }
    return out;
}

Json rates_json(const std::vector<RateRow> &rows) {
    Json arr = Json::array();
    for (const auto &r : rows)
        arr.push_back({{"N", r.N},
                       {"capacity_bits", r.capacity_bits},
                       {"R_x_exact", r.rx_exact},
                       {"R_x_asymptotic", r.rx_asymptotic},
                       {"R_p", r.rp},
                       {"R_m", r.rm ? Json(*r.rm) : Json(nullptr)},
                       {"advantage", r.advantage}});
    return arr;
}

SpinCheck spin_report(const RunConfig &cfg, int sign) {
    const auto rep = analyze_spin_state(cfg.N, cfg.twice_spin, sign);
    const std::size_t expected_rank = 2 * cfg.N * (static_cast<std::size_t>(cfg.twice_spin) + 1);
    SpinCheck out;
    out.pass = rep.norm_deviation <= cfg.tol.exact &&
               rep.reduced_density_deviation <= cfg.tol.exact &&
               rep.factorization_residual <= cfg.tol.exact && rep.schmidt_rank == expected_rank;
    out.report = Json{{"N", cfg.N},
                      {"S", spin_to_string(cfg.twice_spin)},
                      {"sign", sign},
                      {"capacity_bits", rep.capacity_bits},
                      {"norm_deviation", rep.norm_deviation},
                      {"reduced_density_deviation", rep.reduced_density_deviation},
                      {"factorization_residual", rep.factorization_residual},
                      {"schmidt_rank", rep.schmidt_rank},
                      {"expected_schmidt_rank", expected_rank},
                      {"pass", out.pass}};
    return out;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

} // namespace sdc
