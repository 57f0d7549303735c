#ifndef TTESCHED_BASELINES_HPP
#define TTESCHED_BASELINES_HPP

#include "ttesched/llf.hpp"

// Comparison schemes rebuilt from their one-paragraph descriptions; they share
// the TECG substrate and the commit-or-roll-back contract of the LLF
// scheduler. Reconstructions are approximate, so experiment reports tag their
// rows with fidelity "approximate".

namespace tte {

// Fixed-cyclic greedy with storage: takes the smallest-hop (then earliest)
// schedule-path for packet 1, ignoring load, and commits its cycle-shifted
// copies for the remaining packets; any collision in that family rejects the
// flow.
FlowScheduleResult schedule_flow_bfs_s(Tecg& tecg, const FlowSpec& flow);

// Running tally of how many flows were assigned to each directed link, used
// by IRAS's candidate ordering. One instance per admission sequence.
struct IrasState {
    std::vector<int> flows_on_link;

    explicit IrasState(int links = 0) : flows_on_link(links, 0) {}
};

// No-wait joint routing and scheduling: enumerates simple no-storage paths,
// sorts them by (hop count, flows already assigned on the path's links) and
// commits the first path whose timed copies are free for every packet. Above
// 10^4 enumerated paths the sort is skipped and paths are tried in
// first-found order.
FlowScheduleResult schedule_flow_iras(Tecg& tecg, const FlowSpec& flow, IrasState* state = nullptr);

// Joint routing and scheduling with storage under fixed cyclic semantics:
// finds a packet-1 schedule-path minimizing the number of occupied
// cycle-shifted slot copies (zero collisions required) and commits every
// shifted copy.
FlowScheduleResult schedule_flow_jras_tseg(Tecg& tecg, const FlowSpec& flow);

} // namespace tte

#endif
