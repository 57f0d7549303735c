#ifndef TTESCHED_TECG_HPP
#define TTESCHED_TECG_HPP

#include <cstdint>
#include <vector>

#include "ttesched/model.hpp"

// Time-expanded cyclic graph over one hypercycle: one vertex per (node, slot),
// a communication edge per free (link, slot) connecting slot i to slot
// wrap(i+1), and an uncapacitated storage edge per (node, slot). Edges are
// generated on demand from the topology plus the occupancy bitmap; nothing of
// size |V|*gamma is materialized.

namespace tte {

// A communication edge: directed link `link` during slot `slot`, i.e. the
// TECG edge (u_slot -> v_wrap(slot+1)).
struct TimedEdge {
    LinkId link = -1;
    Slot slot = 1;
    auto operator<=>(const TimedEdge&) const = default;
};

// Single-writer object: one scheduling run mutates occupancy; concurrent runs
// must work on independent copies.
class Tecg {
public:
    Tecg(Topology topo, Hypercycle hc);

    const Topology& topology() const { return topo_; }
    const Hypercycle& hypercycle() const { return hc_; }
    int gamma() const { return hc_.gamma; }

    bool occupied(LinkId link, Slot slot) const { return occ_[index(link, slot)] != 0; }
    bool occupied(const TimedEdge& e) const { return occupied(e.link, e.slot); }

    // All-or-nothing: throws and leaves the state unchanged when any edge is
    // already occupied (occupy) or already free (release).
    void occupy(const std::vector<TimedEdge>& edges);
    void release(const std::vector<TimedEdge>& edges);

    int occupied_count(LinkId link) const { return occ_per_link_[link]; }
    long long occupied_total() const { return occ_total_; }

    long long vertex_count() const { return static_cast<long long>(topo_.node_count()) * hc_.gamma; }
    long long storage_edge_count() const { return vertex_count(); }
    long long total_comm_edge_count() const {
        return static_cast<long long>(topo_.link_count()) * hc_.gamma;
    }
    long long free_comm_edge_count() const { return total_comm_edge_count() - occ_total_; }

    // Sorted list of occupied edges, for dumps and state comparison.
    std::vector<TimedEdge> occupied_edges() const;
    bool same_occupancy(const Tecg& other) const { return occ_ == other.occ_; }

private:
    std::size_t index(LinkId link, Slot slot) const;

    Topology topo_;
    Hypercycle hc_;
    std::vector<std::uint8_t> occ_; // link-major: [link * gamma + slot - 1]
    std::vector<int> occ_per_link_;
    long long occ_total_ = 0;
};

// Validates the pre-occupied edges (known link, slot in [1, gamma]).
Tecg build_tecg(const Topology& topo, const Hypercycle& hc, const std::vector<TimedEdge>& occupied = {});

// Span-restricted view of the TECG for one packet: the min(max_delay, gamma)
// consecutive slots from the packet's arrival. Offsets index span positions,
// offset t covering slot wrap(arrival + t). The view shares the Tecg, so
// occupancy changes are immediately visible.
class SchedulePathGraph {
public:
    SchedulePathGraph(const Tecg& tecg, const PacketId& packet, const FlowSpec& flow);

    const Tecg& tecg() const { return *tecg_; }
    const PacketId& packet() const { return packet_; }
    const FlowSpec& flow() const { return flow_; }
    const PacketWindow& window() const { return window_; }

    int span() const { return span_; } // number of slots in the lifespan view
    Slot slot_at(int offset) const; // offset in [0, span]
    NodeId source() const { return flow_.source; }
    NodeId destination() const { return flow_.destination; }
    Slot start_slot() const { return window_.arrival; }
    Slot target_slot() const { return slot_at(span_); }

    bool contains_slot(Slot slot) const;
    // Offset of a wrapped slot within the span, or -1 when outside.
    int offset_of(Slot slot) const;
    bool comm_free(LinkId link, int offset) const {
        return !tecg_->occupied(link, slot_at(offset));
    }

private:
    const Tecg* tecg_;
    PacketId packet_;
    FlowSpec flow_;
    PacketWindow window_;
    int span_;
};

SchedulePathGraph schedule_path_graph(const Tecg& tecg, const PacketId& packet, const FlowSpec& flow);

// The communication edges of a path, in hop order.
std::vector<TimedEdge> comm_edges_of(const SchedulePath& path, const Topology& topo);

} // namespace tte

#endif
