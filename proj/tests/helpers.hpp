#ifndef TTESCHED_TEST_HELPERS_HPP
#define TTESCHED_TEST_HELPERS_HPP

#include "ttesched/model.hpp"
#include "ttesched/tecg.hpp"

namespace tte::test {

// Line network s - a - d (duplex), the scheduling micro-instance topology.
inline Topology line_topology() {
    Topology topo;
    NodeId s = topo.add_node("s"), a = topo.add_node("a"), d = topo.add_node("d");
    topo.add_duplex(s, a);
    topo.add_duplex(a, d);
    return topo;
}

// Diamond s - {a, b} - d (duplex), the path-flexibility example topology.
inline Topology diamond_topology() {
    Topology topo;
    NodeId s = topo.add_node("s"), a = topo.add_node("a"), b = topo.add_node("b"),
           d = topo.add_node("d");
    topo.add_duplex(s, a);
    topo.add_duplex(s, b);
    topo.add_duplex(a, d);
    topo.add_duplex(b, d);
    return topo;
}

// Two nodes joined by a single directed link u -> v.
inline Topology one_way_link_topology() {
    Topology topo;
    NodeId u = topo.add_node("u"), v = topo.add_node("v");
    topo.add_link(u, v);
    return topo;
}

inline FlowSpec flow(FlowId id, NodeId src, NodeId dst, Slot arrival, int cycle, int max_delay) {
    return FlowSpec{id, src, dst, arrival, cycle, max_delay};
}

// The two-flow micro instance: f0 (arrival 1, cycle 2, delay 2) and
// f1 (arrival 2, cycle 3, delay 3) over the s - a - d line, gamma = 6.
inline std::vector<FlowSpec> micro_flows(const Topology& topo) {
    return {flow(0, topo.node_id("s"), topo.node_id("d"), 1, 2, 2),
            flow(1, topo.node_id("s"), topo.node_id("d"), 2, 3, 3)};
}

// The fixed 2-slot-periodic assignment of f0 over s -> a -> d.
inline std::vector<TimedEdge> micro_f0_edges(const Topology& topo) {
    LinkId sa = topo.link_id(topo.node_id("s"), topo.node_id("a"));
    LinkId ad = topo.link_id(topo.node_id("a"), topo.node_id("d"));
    return {TimedEdge{sa, 1}, TimedEdge{sa, 3}, TimedEdge{sa, 5},
            TimedEdge{ad, 2}, TimedEdge{ad, 4}, TimedEdge{ad, 6}};
}

} // namespace tte::test

#endif
