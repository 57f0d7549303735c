#ifndef TTESCHED_EXACT_HPP
#define TTESCHED_EXACT_HPP

#include <string>
#include <vector>

#include "ttesched/tecg.hpp"

// Exact flow admission with ILP semantics. The model materializes the binary
// variables and constraint rows (for inspection and LP export); the embedded
// solver works on the equivalent per-packet path formulation with depth-first
// branch and bound, which is exact at desk scale and falls back to
// best-known-so-far under a time limit.

namespace tte {

// One binary routing variable: packet (flow, seq) traversing a timed edge.
struct IlpVar {
    int flow_idx = -1; // index into IlpModel::flows
    int seq = 1;
    Hop hop;
};

struct IlpModel {
    Mode mode = Mode::Hfs;
    Tecg base; // occupancy snapshot the model was built against
    std::vector<FlowSpec> flows;

    std::vector<IlpVar> xvars;

    // capacity: sum of vars <= 1, one row per communication edge someone competes for
    std::vector<std::vector<int>> capacity_rows;
    // conservation: sum(in) == sum(out), one row per non-terminal vertex per packet
    struct ConservationRow {
        std::vector<int> in, out;
    };
    std::vector<ConservationRow> conservation_rows;
    // no-loop: sum of a node's outgoing communication vars <= 1, per node (except
    // the destination) per packet
    std::vector<std::vector<int>> no_loop_rows;
    // indicator: chi_flow <= sum of the packet's source-vertex departures
    struct IndicatorRow {
        int flow_idx = -1;
        int seq = 1;
        std::vector<int> outs;
    };
    std::vector<IndicatorRow> indicator_rows;
    // periodicity (FCS only): var_a == var_b; partner == -1 pins var_a to 0
    struct PeriodicityRow {
        int var = -1;
        int partner = -1;
    };
    std::vector<PeriodicityRow> periodicity_rows;

    int chi_count() const { return static_cast<int>(flows.size()); }
};

IlpModel build_hfs_model(const Tecg& tecg, const std::vector<FlowSpec>& flows);
IlpModel build_fcs_model(const Tecg& tecg, const std::vector<FlowSpec>& flows);

enum class SolveStatus { ProvenOptimal, TimeLimitBestKnown };

struct ExactResult {
    Schedule schedule; // canonical: paths only for admitted flows
    int objective = 0;
    SolveStatus status = SolveStatus::ProvenOptimal;
    double wall_seconds = 0.0;
};

// Maximizes the number of admitted flows. Throws when time_limit_s <= 0.
ExactResult solve(const IlpModel& model, double time_limit_s);

// Independent exhaustive check: enumerates per-packet path combinations with
// capacity checking and returns the maximum admitted-subset size. Guarded to
// desk scale: at most 4 flows and at most 10^4 candidate paths per packet,
// otherwise throws "oracle scale exceeded".
int brute_force_oracle(const Tecg& tecg, const std::vector<FlowSpec>& flows, Mode mode);

// CPLEX-style LP file with binary variable declarations. Variables are named
// x_<flow>_<seq>_<u>_<uslot>_<v>_<vslot> (node indices) and chi_<flow>.
void export_lp(const IlpModel& model, const std::string& path);

} // namespace tte

#endif
