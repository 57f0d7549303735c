#ifndef TTESCHED_MODEL_HPP
#define TTESCHED_MODEL_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

// Core domain types for time-triggered Ethernet scheduling: the directed-link
// topology, periodic flows, hypercycle slot arithmetic, and schedules.
// All types are immutable value objects once built and safe to share across
// threads for reading.

namespace tte {

using NodeId = int;
using LinkId = int;
using FlowId = int;
using Slot = int; // 1-based slot index within a hypercycle

// Maps any slot index >= 1 onto [1, gamma]; index gamma+1 aliases slot 1.
inline Slot wrap_slot(long long index, int gamma) {
    return static_cast<Slot>((index - 1) % gamma + 1);
}

// Directed-link network of end systems and switches. A full-duplex physical
// link between u and v is stored as the two directed links (u,v) and (v,u).
// Self-links and duplicate directed links are rejected. Node and link ids are
// dense and follow insertion order, which fixes every iteration order.
class Topology {
public:
    NodeId add_node(const std::string& name);
    NodeId ensure_node(const std::string& name);
    LinkId add_link(NodeId u, NodeId v);
    void add_duplex(NodeId u, NodeId v);

    int node_count() const { return static_cast<int>(names_.size()); }
    int link_count() const { return static_cast<int>(links_.size()); }

    bool has_node(const std::string& name) const { return by_name_.count(name) != 0; }
    NodeId node_id(const std::string& name) const; // throws on unknown name
    const std::string& node_name(NodeId u) const;

    LinkId link_id(NodeId u, NodeId v) const; // -1 when absent
    const std::pair<NodeId, NodeId>& link(LinkId e) const { return links_[e]; }
    const std::vector<std::pair<NodeId, NodeId>>& links() const { return links_; }

    // Outgoing neighbors of u as (target node, link id), in insertion order.
    const std::vector<std::pair<NodeId, LinkId>>& out(NodeId u) const { return out_[u]; }
    // Incoming neighbors of u as (origin node, link id), in insertion order.
    const std::vector<std::pair<NodeId, LinkId>>& in(NodeId u) const { return in_[u]; }

private:
    std::vector<std::string> names_;
    std::map<std::string, NodeId> by_name_;
    std::vector<std::pair<NodeId, NodeId>> links_;
    std::map<std::pair<NodeId, NodeId>, LinkId> by_pair_;
    std::vector<std::vector<std::pair<NodeId, LinkId>>> out_;
    std::vector<std::vector<std::pair<NodeId, LinkId>>> in_;
};

// One periodic flow: a packet leaves `source` every `cycle` slots starting at
// slot `arrival`, and each packet must be delivered within `max_delay` slots.
// `max_delay` may be smaller than `cycle` and may exceed the hypercycle.
struct FlowSpec {
    FlowId id = 0;
    NodeId source = -1;
    NodeId destination = -1;
    Slot arrival = 1;
    int cycle = 1;
    int max_delay = 1;
};

// Throws if the flow violates a basic invariant (self-flow, non-positive
// cycle/delay/arrival).
void validate_flow(const FlowSpec& flow, const Topology& topo);

struct Hypercycle {
    int gamma = 1;                 // slots per hypercycle
    double slot_duration_us = 0.0; // informational only
};

// gamma = lcm of all flow cycles. Throws "no flows" on an empty list.
Hypercycle hypercycle_of(const std::vector<FlowSpec>& flows);

// The i-th packet of a flow, seq in [1, gamma/cycle].
struct PacketId {
    FlowId flow = 0;
    int seq = 1;
    auto operator<=>(const PacketId&) const = default;
};

// Per-packet transmission window. The arrival is wrapped into [1, gamma];
// the deadline is kept unwrapped (arrival + max_delay - 1) so that windows
// spanning the hypercycle boundary stay well ordered.
struct PacketWindow {
    Slot arrival = 1;
    long long deadline = 1;
};

// Exactly gamma/cycle windows; throws "cycle/hypercycle mismatch" when the
// cycle does not divide gamma.
std::vector<PacketWindow> packet_windows(const FlowSpec& flow, const Hypercycle& hc);

inline int packet_count(const FlowSpec& flow, const Hypercycle& hc) {
    return hc.gamma / flow.cycle;
}

// One timed step of a schedule-path: either a transmission over a directed
// link during `slot`, or a one-slot store at a node (from == to).
struct Hop {
    enum class Kind { Comm, Storage };
    Kind kind = Kind::Comm;
    NodeId from = -1;
    NodeId to = -1;
    Slot slot = 1;

    bool operator==(const Hop&) const = default;
};

inline Hop comm_hop(NodeId from, NodeId to, Slot slot) {
    return Hop{Hop::Kind::Comm, from, to, slot};
}
inline Hop storage_hop(NodeId at, Slot slot) {
    return Hop{Hop::Kind::Storage, at, at, slot};
}

// Timed edge sequence carrying one packet from its source to its destination.
// Hops occupy consecutive slots starting at the packet's arrival slot; the
// last hop is the transmission that lands on the destination node.
struct SchedulePath {
    PacketId packet;
    std::vector<Hop> hops;

    bool operator==(const SchedulePath&) const = default;
};

// Admission flags plus one path per packet of every admitted flow.
struct Schedule {
    std::map<FlowId, bool> admitted;
    std::map<PacketId, SchedulePath> paths;

    bool is_admitted(FlowId id) const {
        auto it = admitted.find(id);
        return it != admitted.end() && it->second;
    }
    int admitted_count() const {
        int n = 0;
        for (const auto& [id, ok] : admitted)
            n += ok ? 1 : 0;
        return n;
    }
};

// Outcome of scheduling a single flow: one path per packet on success, empty
// on rejection. `costs` carries the scheme-specific per-packet path cost.
struct FlowScheduleResult {
    std::vector<SchedulePath> paths;
    std::vector<double> costs;

    bool admitted() const { return !paths.empty(); }
};

enum class Mode { Hfs, Fcs };

const char* mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

} // namespace tte

#endif
