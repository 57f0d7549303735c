#ifndef TTESCHED_LLF_HPP
#define TTESCHED_LLF_HPP

#include <functional>

#include "ttesched/tecg.hpp"

// Load metrics and the lightest-load-first scheduler: every packet of a flow
// gets the minimum-load schedule-path in its span-restricted graph, with the
// whole flow rolled back when any packet cannot be routed.

namespace tte {

// Fraction of the link's slots occupied within the hypercycle, in [0, 1].
double alpha_load(const Tecg& tecg, LinkId link);

// Packet-level load of a communication edge: occupied slots of the edge's
// link within the packet's lifespan divided by the flow's max_delay, or the
// hypercycle-level load when max_delay >= gamma. The edge must lie in the
// packet's span.
double beta_load(const Tecg& tecg, const TimedEdge& edge, const SchedulePathGraph& view);

// Synthesized edge weight: alpha + beta for communication edges, 0 for
// storage edges.
double xi_weight(double alpha, double beta, Hop::Kind kind);

// Lightest-load path for one packet, or found == false when the span graph
// admits no path. Ties in weight are broken by fewer communication hops,
// then earliest delivery slot, then first-encountered under ascending
// (node id, out-link) iteration order, so results are deterministic.
struct PacketSearchResult {
    bool found = false;
    SchedulePath path;
    std::int64_t weight = 0; // raw path weight under the supplied metric
    double cost = 0.0;       // scheme-specific reading of the weight
};
PacketSearchResult lightest_load_path(const SchedulePathGraph& view);
// Same search with the hypercycle-level occupancy counts frozen to an earlier
// snapshot (one per link), the per-flow refresh granularity the scheduler uses.
PacketSearchResult lightest_load_path(const SchedulePathGraph& view,
                                      const std::vector<int>* hypercycle_counts);

// Minimum-weight schedule-path over the span positions with the tie-breaking
// above; edge weights are supplied per (link, span offset). Shared by the LLF
// scheduler and the load-aware baselines.
PacketSearchResult min_weight_span_path(const SchedulePathGraph& view,
                                        const std::function<std::int64_t(LinkId, int)>& weight);

// Runs a per-packet searcher over all packets of a flow in seq order with the
// same commit-or-roll-back contract as schedule_flow_llf.
using PacketSearcher = std::function<PacketSearchResult(const SchedulePathGraph&)>;
FlowScheduleResult schedule_flow_per_packet(Tecg& tecg, const FlowSpec& flow,
                                            const PacketSearcher& search);

// Schedules all gamma/cycle packets of one flow in ascending seq order,
// occupying the communication edges of each accepted path before searching
// the next packet. On failure every occupied edge is released again and the
// result is empty; occupancy is then bit-identical to the state before the
// call. Rejection is a normal outcome, not an error.
FlowScheduleResult schedule_flow_llf(Tecg& tecg, const FlowSpec& flow);

using FlowScheduler = std::function<FlowScheduleResult(Tecg&, const FlowSpec&)>;
using AdmitObserver = std::function<void(const FlowSpec&, const FlowScheduleResult&)>;

// Applies a per-flow scheduler (LLF by default) to the flows in list order
// and collects admission flags and paths.
Schedule admit_sequence(Tecg& tecg, const std::vector<FlowSpec>& flows,
                        const FlowScheduler& scheduler = {}, const AdmitObserver& observer = {});

} // namespace tte

#endif
