#include "ttesched/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ttesched/baselines.hpp"
#include "ttesched/exact.hpp"
#include "ttesched/rng.hpp"
#include "ttesched/io.hpp"
#include "ttesched/verify.hpp"

namespace tte {

Topology builtin_topology(const std::string& name) {
    Topology topo;
    if (name == "afdx") {
        NodeId sw1 = topo.add_node("SW1"), sw2 = topo.add_node("SW2");
        std::vector<NodeId> es;
        for (int i = 1; i <= 7; ++i)
            es.push_back(topo.add_node("ES" + std::to_string(i)));
        topo.add_duplex(sw1, sw2);
        for (int i = 0; i < 4; ++i)
            topo.add_duplex(es[i], sw1); // ES1..ES4 on SW1
        for (int i = 4; i < 7; ++i)
            topo.add_duplex(es[i], sw2); // ES5..ES7 on SW2
        topo.add_duplex(es[0], sw2);     // dual-homed end systems
        topo.add_duplex(es[2], sw2);
        topo.add_duplex(es[3], sw2);
        topo.add_duplex(es[4], sw1);
        topo.add_duplex(es[6], sw1);
        return topo;
    }
    if (name == "ladder") {
        std::vector<NodeId> left, right;
        for (int i = 1; i <= 4; ++i)
            left.push_back(topo.add_node("L" + std::to_string(i)));
        for (int i = 1; i <= 4; ++i)
            right.push_back(topo.add_node("R" + std::to_string(i)));
        for (int i = 0; i < 3; ++i) {
            topo.add_duplex(left[i], left[i + 1]);
            topo.add_duplex(right[i], right[i + 1]);
        }
        topo.add_duplex(left[0], right[0]);
        topo.add_duplex(left[1], right[1]);
        topo.add_duplex(left[3], right[3]);
        return topo;
    }
    throw std::invalid_argument("unknown builtin topology: " + name +
                                " (expected afdx, ladder or erdos_renyi)");
}

Topology erdos_renyi_topology(int nodes, double p, std::uint64_t seed) {
    if (nodes < 2)
        throw std::invalid_argument("erdos_renyi needs at least 2 nodes");
    if (p <= 0.0 || p > 1.0)
        throw std::invalid_argument("erdos_renyi needs p in (0, 1]");
    Topology topo;
    for (int i = 0; i < nodes; ++i)
        topo.add_node("n" + std::to_string(i));
    Rng rng(seed);
    for (NodeId i = 0; i < nodes; ++i)
        for (NodeId j = i + 1; j < nodes; ++j)
            if (rng.uniform01() < p)
                topo.add_duplex(i, j);
    return topo;
}

TopologySpec TopologySpec::from_json(const nlohmann::json& j) {
    TopologySpec spec;
    if (j.contains("file")) {
        spec.file = j.at("file").get<std::string>();
        return spec;
    }
    spec.builtin = j.at("builtin").get<std::string>();
    if (spec.builtin == "erdos_renyi") {
        spec.nodes = j.at("nodes").get<int>();
        spec.prob = j.at("prob").get<double>();
        spec.seed = j.value("seed", std::uint64_t{1});
    }
    return spec;
}

Topology gen_topology(const TopologySpec& spec) {
    if (!spec.file.empty())
        return io::read_topology_file(spec.file);
    if (spec.builtin == "erdos_renyi")
        return erdos_renyi_topology(spec.nodes, spec.prob, spec.seed);
    return builtin_topology(spec.builtin);
}

FlowGenConfig FlowGenConfig::from_json(const nlohmann::json& j) {
    FlowGenConfig config;
    config.count = j.at("count").get<int>();
    config.cycles = j.at("cycles").get<std::vector<int>>();
    std::string rule = j.value("cycle_rule", std::string("round_robin"));
    if (rule == "round_robin")
        config.cycle_rule = CycleRule::RoundRobin;
    else if (rule == "random")
        config.cycle_rule = CycleRule::Random;
    else
        throw std::invalid_argument("unknown cycle_rule: " + rule);
    config.fixed_delay = j.value("delay", 0);
    config.fixed_arrival = j.value("arrival", 0);
    config.seed = j.value("seed", std::uint64_t{1});
    return config;
}

Hypercycle config_hypercycle(const FlowGenConfig& config) {
    if (config.cycles.empty())
        throw std::invalid_argument("flow generation needs a non-empty cycle set");
    long long gamma = 1;
    for (int c : config.cycles) {
        if (c < 1)
            throw std::invalid_argument("cycles must be >= 1");
        gamma = std::lcm(gamma, static_cast<long long>(c));
        if (gamma > (1LL << 30))
            throw std::runtime_error("hypercycle too large: lcm exceeds 2^30 slots");
    }
    return Hypercycle{static_cast<int>(gamma), 15.0};
}

std::vector<FlowSpec> gen_flows(const FlowGenConfig& config, const Topology& topo) {
    Hypercycle hc = config_hypercycle(config);
    long long available = static_cast<long long>(topo.node_count()) * (topo.node_count() - 1);
    if (config.count > available)
        throw std::runtime_error("flow generation needs " + std::to_string(config.count) +
                                 " distinct (source,destination) pairs but the topology only has " +
                                 std::to_string(available));

    Rng rng(config.seed);
    std::vector<char> used(static_cast<std::size_t>(topo.node_count()) * topo.node_count(), 0);
    std::vector<FlowSpec> flows;
    flows.reserve(config.count);
    long long attempts = 0;
    while (static_cast<int>(flows.size()) < config.count) {
        if (++attempts > 10'000'000)
            throw std::runtime_error("flow generation stalled while drawing distinct pairs");
        NodeId s = static_cast<NodeId>(rng.bounded(topo.node_count()));
        NodeId d = static_cast<NodeId>(rng.bounded(topo.node_count()));
        if (s == d || used[static_cast<std::size_t>(s) * topo.node_count() + d])
            continue; // duplicate (source, destination) pairs are removed
        used[static_cast<std::size_t>(s) * topo.node_count() + d] = 1;

        FlowSpec flow;
        flow.id = static_cast<FlowId>(flows.size());
        flow.source = s;
        flow.destination = d;
        int idx = config.cycle_rule == FlowGenConfig::CycleRule::RoundRobin
                      ? static_cast<int>(flows.size() % config.cycles.size())
                      : static_cast<int>(rng.bounded(config.cycles.size()));
        flow.cycle = config.cycles[idx];
        flow.max_delay = config.fixed_delay > 0 ? config.fixed_delay : flow.cycle;
        flow.arrival = config.fixed_arrival > 0 ? config.fixed_arrival
                                                : 1 + static_cast<Slot>(rng.bounded(hc.gamma));
        flows.push_back(flow);
    }
    return flows;
}

bool scheme_uses_fcs_semantics(const std::string& scheme) {
    return scheme == "fcs_exact" || scheme == "bfs_s" || scheme == "iras" || scheme == "jras_tseg";
}

SchemeOutcome run_scheme(const std::string& scheme, const Topology& topo, const Hypercycle& hc,
                         const std::vector<FlowSpec>& flows, const std::vector<TimedEdge>& occupied,
                         double time_limit_s, const AdmitObserver& observer) {
    Tecg tecg = build_tecg(topo, hc, occupied);
    SchemeOutcome outcome;
    auto t0 = std::chrono::steady_clock::now();

    if (scheme == "hfs_exact" || scheme == "fcs_exact") {
        IlpModel model =
            scheme == "hfs_exact" ? build_hfs_model(tecg, flows) : build_fcs_model(tecg, flows);
        ExactResult result = solve(model, time_limit_s);
        outcome.schedule = std::move(result.schedule);
        outcome.status = result.status == SolveStatus::ProvenOptimal ? "optimal" : "time_limit";
    } else if (scheme == "hfs_llf") {
        outcome.schedule = admit_sequence(tecg, flows, {}, observer);
        outcome.status = "heuristic";
    } else if (scheme == "bfs_s") {
        outcome.schedule = admit_sequence(
            tecg, flows, [](Tecg& t, const FlowSpec& f) { return schedule_flow_bfs_s(t, f); },
            observer);
        outcome.status = "heuristic";
    } else if (scheme == "iras") {
        IrasState state(topo.link_count());
        outcome.schedule = admit_sequence(
            tecg, flows,
            [&state](Tecg& t, const FlowSpec& f) { return schedule_flow_iras(t, f, &state); },
            observer);
        outcome.status = "heuristic";
    } else if (scheme == "jras_tseg") {
        outcome.schedule = admit_sequence(
            tecg, flows, [](Tecg& t, const FlowSpec& f) { return schedule_flow_jras_tseg(t, f); },
            observer);
        outcome.status = "heuristic";
    } else {
        throw std::invalid_argument("unknown scheme: " + scheme);
    }

    outcome.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return outcome;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    config.name = j.value("name", std::string("experiment"));
    config.topology = TopologySpec::from_json(j.at("topology"));
    config.flows = FlowGenConfig::from_json(j.at("flows"));
    if (j.contains("schemes"))
        config.schemes = j.at("schemes").get<std::vector<std::string>>();
    config.time_limit_s = j.value("time_limit_s", 60.0);
    config.note = j.value("note", std::string());
    return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return from_json(nlohmann::json::parse(in));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    Topology topo = gen_topology(config.topology);
    Hypercycle hc = config_hypercycle(config.flows);
    std::vector<FlowSpec> flows = gen_flows(config.flows, topo);

    ExperimentResult result;
    result.config = config;
    result.gamma = hc.gamma;

    for (const std::string& scheme : config.schemes) {
        ExperimentRow row;
        row.scheme = scheme;
        row.flows_given = static_cast<int>(flows.size());
        if (scheme != "hfs_exact" && scheme != "fcs_exact" && scheme != "hfs_llf")
            row.fidelity = "approximate";
        try {
            SchemeOutcome outcome = run_scheme(scheme, topo, hc, flows, {}, config.time_limit_s);
            row.wall_ms = outcome.wall_seconds * 1000.0;
            row.status = outcome.status;
            row.flows_admitted = outcome.schedule.admitted_count();
            for (const FlowSpec& flow : flows)
                if (outcome.schedule.is_admitted(flow.id))
                    row.packets_admitted += packet_count(flow, hc);
            for (const auto& [packet, path] : outcome.schedule.paths)
                for (const Hop& hop : path.hops)
                    row.storage_hops += hop.kind == Hop::Kind::Storage ? 1 : 0;

            Tecg clean = build_tecg(topo, hc);
            bool ok = verify_schedule(clean, flows, outcome.schedule, Mode::Hfs).ok;
            if (ok && scheme_uses_fcs_semantics(scheme))
                ok = verify_schedule(clean, flows, outcome.schedule, Mode::Fcs).ok;
            row.verified = ok;
        } catch (const std::exception& e) {
            row.status = "error";
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string experiment_csv(const ExperimentResult& result) {
    std::ostringstream out;
    if (!result.config.note.empty())
        out << "# " << result.config.note << "\n";
    out << "scheme,flows_given,flows_admitted,packets_admitted,wall_ms,verified\n";
    for (const ExperimentRow& row : result.rows)
        out << row.scheme << ',' << row.flows_given << ',' << row.flows_admitted << ','
            << row.packets_admitted << ',' << row.wall_ms << ',' << (row.verified ? 1 : 0) << '\n';
    return out.str();
}

std::string experiment_long_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "name,scheme,metric,value\n";
    for (const ExperimentRow& row : result.rows) {
        out << result.config.name << ',' << row.scheme << ",flows_admitted," << row.flows_admitted
            << '\n';
        out << result.config.name << ',' << row.scheme << ",packets_admitted,"
            << row.packets_admitted << '\n';
        out << result.config.name << ',' << row.scheme << ",wall_ms," << row.wall_ms << '\n';
    }
    return out.str();
}

nlohmann::json experiment_json(const ExperimentResult& result) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ExperimentRow& row : result.rows) {
        nlohmann::json r{{"scheme", row.scheme},
                         {"flows_given", row.flows_given},
                         {"flows_admitted", row.flows_admitted},
                         {"packets_admitted", row.packets_admitted},
                         {"storage_hops", row.storage_hops},
                         {"wall_ms", row.wall_ms},
                         {"verified", row.verified},
                         {"status", row.status}};
        if (!row.fidelity.empty())
            r["fidelity"] = row.fidelity;
        if (!row.error.empty())
            r["error"] = row.error;
        rows.push_back(std::move(r));
    }
    nlohmann::json j{{"name", result.config.name},
                     {"gamma", result.gamma},
                     {"time_limit_s", result.config.time_limit_s},
                     {"rows", rows}};
    if (!result.config.note.empty())
        j["note"] = result.config.note;
    return j;
}

} // namespace tte
