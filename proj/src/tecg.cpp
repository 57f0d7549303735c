#include "ttesched/tecg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tte {

Tecg::Tecg(Topology topo, Hypercycle hc) : topo_(std::move(topo)), hc_(hc) {
    if (hc_.gamma < 1)
        throw std::invalid_argument("hypercycle length must be >= 1");
    occ_.assign(static_cast<std::size_t>(topo_.link_count()) * hc_.gamma, 0);
    occ_per_link_.assign(topo_.link_count(), 0);
}

std::size_t Tecg::index(LinkId link, Slot slot) const {
    if (link < 0 || link >= topo_.link_count())
        throw std::invalid_argument("unknown link id " + std::to_string(link));
    if (slot < 1 || slot > hc_.gamma)
        throw std::invalid_argument("slot " + std::to_string(slot) + " out of range [1," +
                                    std::to_string(hc_.gamma) + "]");
    return static_cast<std::size_t>(link) * hc_.gamma + (slot - 1);
}

void Tecg::occupy(const std::vector<TimedEdge>& edges) {
    for (const TimedEdge& e : edges)
        if (occ_[index(e.link, e.slot)])
            throw std::runtime_error("occupy: edge already occupied (link " + std::to_string(e.link) +
                                     ", slot " + std::to_string(e.slot) + ")");
    for (const TimedEdge& e : edges) {
        occ_[index(e.link, e.slot)] = 1;
        ++occ_per_link_[e.link];
        ++occ_total_;
    }
}

void Tecg::release(const std::vector<TimedEdge>& edges) {
    for (const TimedEdge& e : edges)
        if (!occ_[index(e.link, e.slot)])
            throw std::runtime_error("release: edge already free (link " + std::to_string(e.link) +
                                     ", slot " + std::to_string(e.slot) + ")");
    for (const TimedEdge& e : edges) {
        occ_[index(e.link, e.slot)] = 0;
        --occ_per_link_[e.link];
        --occ_total_;
    }
}

std::vector<TimedEdge> Tecg::occupied_edges() const {
    std::vector<TimedEdge> out;
    out.reserve(static_cast<std::size_t>(occ_total_));
    for (LinkId e = 0; e < topo_.link_count(); ++e)
        for (Slot s = 1; s <= hc_.gamma; ++s)
            if (occ_[static_cast<std::size_t>(e) * hc_.gamma + (s - 1)])
                out.push_back(TimedEdge{e, s});
    return out;
}

Tecg build_tecg(const Topology& topo, const Hypercycle& hc, const std::vector<TimedEdge>& occupied) {
    Tecg tecg(topo, hc);
    tecg.occupy(occupied);
    return tecg;
}

SchedulePathGraph::SchedulePathGraph(const Tecg& tecg, const PacketId& packet, const FlowSpec& flow)
    : tecg_(&tecg), packet_(packet), flow_(flow) {
    if (packet.flow != flow.id)
        throw std::invalid_argument("packet does not belong to flow " + std::to_string(flow.id));
    auto windows = packet_windows(flow, tecg.hypercycle());
    if (packet.seq < 1 || packet.seq > static_cast<int>(windows.size()))
        throw std::invalid_argument("packet seq " + std::to_string(packet.seq) + " out of range for flow " +
                                    std::to_string(flow.id));
    window_ = windows[packet.seq - 1];
    // A span of gamma slots already reaches every vertex, so longer delays
    // add no reachable states.
    span_ = std::min(flow.max_delay, tecg.gamma());
}

Slot SchedulePathGraph::slot_at(int offset) const {
    if (offset < 0 || offset > span_)
        throw std::invalid_argument("span offset " + std::to_string(offset) + " out of range");
    return wrap_slot(static_cast<long long>(window_.arrival) + offset, tecg_->gamma());
}

bool SchedulePathGraph::contains_slot(Slot slot) const {
    return offset_of(slot) >= 0;
}

int SchedulePathGraph::offset_of(Slot slot) const {
    if (slot < 1 || slot > tecg_->gamma())
        return -1;
    int offset = static_cast<int>(
        (static_cast<long long>(slot) - window_.arrival + tecg_->gamma()) % tecg_->gamma());
    return offset < span_ ? offset : -1;
}

SchedulePathGraph schedule_path_graph(const Tecg& tecg, const PacketId& packet, const FlowSpec& flow) {
    return SchedulePathGraph(tecg, packet, flow);
}

std::vector<TimedEdge> comm_edges_of(const SchedulePath& path, const Topology& topo) {
    std::vector<TimedEdge> edges;
    for (const Hop& hop : path.hops) {
        if (hop.kind != Hop::Kind::Comm)
            continue;
        LinkId link = topo.link_id(hop.from, hop.to);
        if (link < 0)
            throw std::invalid_argument("path hop over unknown link " + topo.node_name(hop.from) + "->" +
                                        topo.node_name(hop.to));
        edges.push_back(TimedEdge{link, hop.slot});
    }
    return edges;
}

} // namespace tte
