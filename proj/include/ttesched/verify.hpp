#ifndef TTESCHED_VERIFY_HPP
#define TTESCHED_VERIFY_HPP

#include <string>
#include <vector>

#include "ttesched/tecg.hpp"

// Independent schedule verifier. It re-derives every packet window and span
// from the flow specs rather than trusting scheduler metadata, and reports
// violations as data instead of throwing.

namespace tte {

enum class Rule { Capacity, Conservation, NoLoop, Deadline, Periodicity };

const char* rule_name(Rule rule);

struct Violation {
    Rule rule;
    std::string entity; // offending flow/packet/edge
    std::string detail;
};

struct VerifyReport {
    bool ok = true;
    std::vector<Violation> violations;
};

// Checks a schedule against the four admission rules (one free slot per
// communication edge, contiguous source-to-destination hop chains, at most
// one transmission per node away from the destination, delivery by the
// deadline), plus the per-flow periodicity rule in FCS mode. The tecg carries
// the resource state *excluding* the schedule under test, so pre-occupied
// edges count as capacity conflicts. Throws only when the schedule references
// packets of unknown flows.
VerifyReport verify_schedule(const Tecg& tecg, const std::vector<FlowSpec>& flows,
                             const Schedule& schedule, Mode mode);

// Destination-side buffering plan that masks delivery jitter: every packet is
// held until the flow's maximum experienced delay has elapsed, so the
// application layer sees strictly cycle-periodic deliveries.
struct DeliveryPlan {
    FlowId flow = 0;
    int max_delay_slots = 0;             // d_max over the flow's packets
    std::vector<long long> deliveries;   // unwrapped slot indices, one per packet
};

// One plan per admitted flow, in flow list order. A packet handed over at
// slot t whose final transmission happens during slot t' has experienced
// delay t' - t + 1 slots. Expects a schedule that verifies clean in HFS mode.
std::vector<DeliveryPlan> jitter_mask(const std::vector<FlowSpec>& flows, const Schedule& schedule,
                                      const Hypercycle& hc);

} // namespace tte

#endif
