#ifndef TTESCHED_HARNESS_HPP
#define TTESCHED_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttesched/llf.hpp"
#include "ttesched/tecg.hpp"

// Topology and flow generation plus the experiment runner behind the CLI.
// Everything is deterministic under the configured seed. Scenario runs are
// independent; each scheme gets its own TECG copy.

namespace tte {

// Builtin topologies. The switched networks only have their node and link
// counts published, so the adjacencies here are documented reconstructions:
//   afdx   - 9 nodes, 13 duplex links: two-switch spine (SW1, SW2) with seven
//            end systems, five of them dual-homed
//   ladder - 8 nodes, 9 duplex links: two 4-node rails with rungs at levels
//            1, 2 and 4
Topology builtin_topology(const std::string& name);

// Every unordered node pair gets a duplex link with probability p.
Topology erdos_renyi_topology(int nodes, double p, std::uint64_t seed);

struct TopologySpec {
    std::string builtin;   // afdx | ladder | erdos_renyi, or empty when file set
    int nodes = 0;          // erdos_renyi only
    double prob = 0.0;      // erdos_renyi only
    std::uint64_t seed = 1; // erdos_renyi only
    std::string file;       // topology JSON path

    static TopologySpec from_json(const nlohmann::json& j);
};

Topology gen_topology(const TopologySpec& spec);

struct FlowGenConfig {
    int count = 0;
    std::vector<int> cycles;
    enum class CycleRule { RoundRobin, Random } cycle_rule = CycleRule::RoundRobin;
    int fixed_delay = 0;   // 0: delay equals the flow's cycle
    int fixed_arrival = 0; // 0: uniform in [1, lcm(cycles)]
    std::uint64_t seed = 1;

    static FlowGenConfig from_json(const nlohmann::json& j);
};

// Hypercycle implied by the configured cycle set (not by the drawn flows).
Hypercycle config_hypercycle(const FlowGenConfig& config);

// Random (source, destination) pairs without duplicates, ids 0..count-1 in
// draw order. Throws when the topology has fewer distinct pairs than
// requested, naming the shortfall.
std::vector<FlowSpec> gen_flows(const FlowGenConfig& config, const Topology& topo);

inline const std::vector<std::string> kAllSchemes = {"hfs_exact", "fcs_exact", "hfs_llf",
                                                     "bfs_s",     "iras",      "jras_tseg"};

bool scheme_uses_fcs_semantics(const std::string& scheme);

struct SchemeOutcome {
    Schedule schedule;
    std::string status; // optimal | time_limit | heuristic
    double wall_seconds = 0.0;
};

// Runs one scheme on a fresh TECG built from the topology plus pre-occupied
// edges. Unknown scheme names throw.
SchemeOutcome run_scheme(const std::string& scheme, const Topology& topo, const Hypercycle& hc,
                         const std::vector<FlowSpec>& flows, const std::vector<TimedEdge>& occupied,
                         double time_limit_s, const AdmitObserver& observer = {});

struct ExperimentConfig {
    std::string name = "experiment";
    TopologySpec topology;
    FlowGenConfig flows;
    std::vector<std::string> schemes = kAllSchemes;
    double time_limit_s = 60.0;
    std::string note; // carried into output headers (e.g. desk-scale substitutions)

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
};

struct ExperimentRow {
    std::string scheme;
    int flows_given = 0;
    int flows_admitted = 0;
    long long packets_admitted = 0;
    long long storage_hops = 0; // in-node buffering slots used by the schedule
    double wall_ms = 0.0;
    bool verified = false;
    std::string status;   // optimal | time_limit | heuristic | error
    std::string fidelity; // "approximate" for reconstructed baselines
    std::string error;
};

struct ExperimentResult {
    ExperimentConfig config;
    int gamma = 0;
    std::vector<ExperimentRow> rows;
};

// Runs every configured scheme on the generated instance and re-verifies each
// schedule before reporting. A scheme failure aborts only its own row.
ExperimentResult run_experiment(const ExperimentConfig& config);

// results CSV: scheme,flows_given,flows_admitted,packets_admitted,wall_ms,verified
std::string experiment_csv(const ExperimentResult& result);
// plot-ready long format: name,scheme,metric,value
std::string experiment_long_csv(const ExperimentResult& result);
nlohmann::json experiment_json(const ExperimentResult& result);

} // namespace tte

#endif
