// Command-line front end: topology/flow generation, scheduling, verification,
// solution counting, schedulability analysis, LP export and experiment runs.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ttesched/analysis.hpp"
#include "ttesched/baselines.hpp"
#include "ttesched/exact.hpp"
#include "ttesched/harness.hpp"
#include "ttesched/io.hpp"
#include "ttesched/llf.hpp"
#include "ttesched/verify.hpp"

namespace {

using namespace tte;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot write " + out_path);
    out << text;
}

Hypercycle resolve_hypercycle(const std::vector<FlowSpec>& flows, int gamma_override) {
    if (gamma_override > 0) {
        for (const FlowSpec& f : flows)
            if (gamma_override % f.cycle != 0)
                throw std::runtime_error("flow " + std::to_string(f.id) + " cycle " +
                                         std::to_string(f.cycle) + " does not divide gamma " +
                                         std::to_string(gamma_override));
        return Hypercycle{gamma_override, 15.0};
    }
    Hypercycle hc = hypercycle_of(flows);
    hc.slot_duration_us = 15.0;
    return hc;
}

int run(int argc, char** argv) {
    CLI::App app{"Hypercycle scheduling toolkit for time-triggered Ethernet"};
    app.require_subcommand(1);

    // ---- topo ----------------------------------------------------------
    auto* topo_cmd = app.add_subcommand("topo", "emit a builtin topology as JSON");
    std::string topo_name = "afdx", topo_out;
    int er_nodes = 50;
    double er_prob = 0.2;
    std::uint64_t er_seed = 1;
    topo_cmd->add_option("--name", topo_name, "afdx | ladder | erdos_renyi")->required();
    topo_cmd->add_option("--nodes", er_nodes, "erdos_renyi node count");
    topo_cmd->add_option("--prob", er_prob, "erdos_renyi link probability");
    topo_cmd->add_option("--seed", er_seed, "erdos_renyi seed");
    topo_cmd->add_option("--out", topo_out, "output file (default stdout)");

    // ---- flows ---------------------------------------------------------
    auto* flows_cmd = app.add_subcommand("flows", "generate a flow-set CSV");
    std::string flows_topology, flows_out, cycle_rule = "round_robin";
    FlowGenConfig flow_config;
    flows_cmd->add_option("--topology", flows_topology, "topology JSON file")->required();
    flows_cmd->add_option("--count", flow_config.count, "number of flows")->required();
    flows_cmd->add_option("--cycles", flow_config.cycles, "cycle set, e.g. 2,3,5")
        ->required()
        ->delimiter(',');
    flows_cmd->add_option("--cycle-rule", cycle_rule, "round_robin | random");
    flows_cmd->add_option("--delay", flow_config.fixed_delay,
                          "fixed max delay (0 = equal to the flow's cycle)");
    flows_cmd->add_option("--arrival", flow_config.fixed_arrival,
                          "fixed arrival slot (0 = uniform in [1, lcm(cycles)])");
    flows_cmd->add_option("--seed", flow_config.seed, "generator seed");
    flows_cmd->add_option("--out", flows_out, "output file (default stdout)");

    // ---- schedule ------------------------------------------------------
    auto* sched_cmd = app.add_subcommand("schedule", "admit a flow set with one scheme");
    std::string sched_scheme, sched_topology, sched_flows, sched_occupancy, sched_trace, sched_out;
    double time_limit = 60.0;
    int gamma_override = 0;
    sched_cmd->add_option("--scheme", sched_scheme,
                          "hfs_exact | fcs_exact | hfs_llf | bfs_s | iras | jras_tseg")
        ->required();
    sched_cmd->add_option("--topology", sched_topology, "topology JSON file")->required();
    sched_cmd->add_option("--flows", sched_flows, "flow-set CSV file")->required();
    sched_cmd->add_option("--occupancy", sched_occupancy, "pre-occupied edges JSON");
    sched_cmd->add_option("--gamma", gamma_override, "hypercycle override (default lcm of cycles)");
    sched_cmd->add_option("--time-limit", time_limit, "exact-solver time limit in seconds");
    std::uint64_t sched_seed = 0;
    sched_cmd->add_option("--seed", sched_seed,
                          "reserved for randomized schemes; current schemes are deterministic");
    sched_cmd->add_option("--trace", sched_trace, "admission trace JSON-lines file");
    sched_cmd->add_option("--out", sched_out, "schedule JSON output (default stdout)");

    // ---- verify --------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "check a schedule against the admission rules");
    std::string verify_mode = "hfs", verify_topology, verify_flows, verify_schedule_path,
                verify_occupancy;
    int verify_gamma = 0;
    verify_cmd->add_option("--mode", verify_mode, "hfs | fcs")->required();
    verify_cmd->add_option("--topology", verify_topology, "topology JSON file")->required();
    verify_cmd->add_option("--flows", verify_flows, "flow-set CSV file")->required();
    verify_cmd->add_option("--schedule", verify_schedule_path, "schedule JSON file")->required();
    verify_cmd->add_option("--occupancy", verify_occupancy,
                           "edges occupied before this schedule (JSON)");
    verify_cmd->add_option("--gamma", verify_gamma, "hypercycle override");

    // ---- count-solutions -----------------------------------------------
    auto* count_cmd = app.add_subcommand("count-solutions",
                                         "per-flow feasible-path counts (per-packet path product)");
    std::string count_topology, count_flows, count_out;
    int count_gamma = 0;
    count_cmd->add_option("--topology", count_topology, "topology JSON file")->required();
    count_cmd->add_option("--flows", count_flows, "flow-set CSV file")->required();
    count_cmd->add_option("--gamma", count_gamma, "hypercycle override");
    count_cmd->add_option("--out", count_out, "output CSV (default stdout)");

    // ---- analyze -------------------------------------------------------
    auto* analyze_cmd = app.add_subcommand("analyze", "gcd schedulability predicates");
    std::vector<long long> collides_args, blocked_args;
    analyze_cmd->add_option("--collides", collides_args, "origin_a,cycle_a,origin_b,cycle_b")
        ->delimiter(',')
        ->expected(4);
    analyze_cmd->add_option("--blocked", blocked_args, "origin,cycle,other_cycle,horizon")
        ->delimiter(',')
        ->expected(4);

    // ---- export-lp -----------------------------------------------------
    auto* lp_cmd = app.add_subcommand("export-lp", "write the admission ILP in LP format");
    std::string lp_model = "hfs", lp_topology, lp_flows, lp_occupancy, lp_out;
    int lp_gamma = 0;
    lp_cmd->add_option("--model", lp_model, "hfs | fcs");
    lp_cmd->add_option("--topology", lp_topology, "topology JSON file")->required();
    lp_cmd->add_option("--flows", lp_flows, "flow-set CSV file")->required();
    lp_cmd->add_option("--occupancy", lp_occupancy, "pre-occupied edges JSON");
    lp_cmd->add_option("--gamma", lp_gamma, "hypercycle override");
    lp_cmd->add_option("--out", lp_out, "output LP file")->required();

    // ---- experiment ----------------------------------------------------
    auto* exp_cmd = app.add_subcommand("experiment", "run a configured scheme comparison");
    std::string exp_config, exp_out_dir = ".";
    exp_cmd->add_option("--config", exp_config, "experiment config JSON")->required();
    exp_cmd->add_option("--out-dir", exp_out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    if (*topo_cmd) {
        Topology topo = topo_name == "erdos_renyi" ? erdos_renyi_topology(er_nodes, er_prob, er_seed)
                                                   : builtin_topology(topo_name);
        emit(io::topology_to_json(topo).dump(2) + "\n", topo_out);
        return 0;
    }

    if (*flows_cmd) {
        if (cycle_rule == "random")
            flow_config.cycle_rule = FlowGenConfig::CycleRule::Random;
        else if (cycle_rule != "round_robin")
            throw std::runtime_error("unknown cycle rule: " + cycle_rule);
        Topology topo = io::read_topology_file(flows_topology);
        emit(io::flows_to_csv(gen_flows(flow_config, topo), topo), flows_out);
        return 0;
    }

    if (*sched_cmd) {
        Topology topo = io::read_topology_file(sched_topology);
        auto flows = io::read_flows_file(sched_flows, topo);
        Hypercycle hc = resolve_hypercycle(flows, gamma_override);
        std::vector<TimedEdge> occupied;
        if (!sched_occupancy.empty())
            occupied = io::read_occupancy_file(sched_occupancy, topo);

        std::ofstream trace;
        AdmitObserver observer;
        if (!sched_trace.empty()) {
            trace.open(sched_trace);
            if (!trace)
                throw std::runtime_error("cannot write " + sched_trace);
            observer = [&](const FlowSpec& flow, const FlowScheduleResult& result) {
                trace << io::trace_record(sched_scheme, flow, result, topo).dump() << "\n";
            };
        }

        SchemeOutcome outcome = run_scheme(sched_scheme, topo, hc, flows, occupied, time_limit,
                                           observer);
        auto j = io::schedule_to_json(outcome.schedule, topo, hc.gamma, outcome.status);
        j["wall_ms"] = outcome.wall_seconds * 1000.0;
        j["scheme"] = sched_scheme;
        emit(j.dump(2) + "\n", sched_out);
        return 0;
    }

    if (*verify_cmd) {
        Topology topo = io::read_topology_file(verify_topology);
        auto flows = io::read_flows_file(verify_flows, topo);
        Hypercycle hc = resolve_hypercycle(flows, verify_gamma);
        std::vector<TimedEdge> occupied;
        if (!verify_occupancy.empty())
            occupied = io::read_occupancy_file(verify_occupancy, topo);
        Tecg tecg = build_tecg(topo, hc, occupied);
        Schedule schedule = io::read_schedule_file(verify_schedule_path, topo);
        VerifyReport report =
            verify_schedule(tecg, flows, schedule, mode_from_name(verify_mode));
        std::cout << io::report_to_json(report).dump(2) << "\n";
        return report.ok ? 0 : 2;
    }

    if (*count_cmd) {
        Topology topo = io::read_topology_file(count_topology);
        auto flows = io::read_flows_file(count_flows, topo);
        Hypercycle hc = resolve_hypercycle(flows, count_gamma);
        Tecg tecg = build_tecg(topo, hc);
        std::string csv = "flow_id,fcs_count,hfs_count\n";
        for (const FlowSpec& f : flows)
            csv += std::to_string(f.id) + "," + std::to_string(count_solutions(tecg, f, Mode::Fcs)) +
                   "," + std::to_string(count_solutions(tecg, f, Mode::Hfs)) + "\n";
        emit(csv, count_out);
        return 0;
    }

    if (*analyze_cmd) {
        nlohmann::json out;
        if (collides_args.size() == 4)
            out["collides"] = collides(IndexSet{collides_args[0], collides_args[1]},
                                       IndexSet{collides_args[2], collides_args[3]});
        if (blocked_args.size() == 4)
            out["blocked"] =
                blocked_slots(IndexSet{blocked_args[0], blocked_args[1]}, blocked_args[2],
                              blocked_args[3]);
        if (out.empty())
            throw std::runtime_error("analyze needs --collides or --blocked");
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (*lp_cmd) {
        Topology topo = io::read_topology_file(lp_topology);
        auto flows = io::read_flows_file(lp_flows, topo);
        Hypercycle hc = resolve_hypercycle(flows, lp_gamma);
        std::vector<TimedEdge> occupied;
        if (!lp_occupancy.empty())
            occupied = io::read_occupancy_file(lp_occupancy, topo);
        Tecg tecg = build_tecg(topo, hc, occupied);
        IlpModel model = lp_model == "fcs" ? build_fcs_model(tecg, flows)
                                           : build_hfs_model(tecg, flows);
        export_lp(model, lp_out);
        return 0;
    }

    if (*exp_cmd) {
        ExperimentConfig config = ExperimentConfig::from_file(exp_config);
        ExperimentResult result = run_experiment(config);
        std::filesystem::create_directories(exp_out_dir);
        auto path = [&](const std::string& name) { return exp_out_dir + "/" + name; };

        Topology topo = gen_topology(config.topology);
        io::write_topology_file(topo, path("topology.json"));
        io::write_flows_file(gen_flows(config.flows, topo), topo, path("flows.csv"));
        emit(experiment_csv(result), path("results.csv"));
        emit(experiment_long_csv(result), path("results_long.csv"));
        emit(experiment_json(result).dump(2) + "\n", path("results.json"));
        std::cout << experiment_csv(result);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
