#include "ttesched/model.hpp"

#include <numeric>
#include <stdexcept>

namespace tte {

NodeId Topology::add_node(const std::string& name) {
    if (by_name_.count(name))
        throw std::invalid_argument("duplicate node: " + name);
    NodeId id = static_cast<NodeId>(names_.size());
    names_.push_back(name);
    by_name_.emplace(name, id);
    out_.emplace_back();
    in_.emplace_back();
    return id;
}

NodeId Topology::ensure_node(const std::string& name) {
    auto it = by_name_.find(name);
    if (it != by_name_.end())
        return it->second;
    return add_node(name);
}

LinkId Topology::add_link(NodeId u, NodeId v) {
    if (u == v)
        throw std::invalid_argument("self-link at node " + node_name(u));
    if (u < 0 || v < 0 || u >= node_count() || v >= node_count())
        throw std::invalid_argument("link endpoint out of range");
    if (by_pair_.count({u, v}))
        throw std::invalid_argument("duplicate link " + node_name(u) + "->" + node_name(v));
    LinkId e = static_cast<LinkId>(links_.size());
    links_.emplace_back(u, v);
    by_pair_.emplace(std::make_pair(u, v), e);
    out_[u].emplace_back(v, e);
    in_[v].emplace_back(u, e);
    return e;
}

void Topology::add_duplex(NodeId u, NodeId v) {
    add_link(u, v);
    add_link(v, u);
}

NodeId Topology::node_id(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end())
        throw std::invalid_argument("unknown node: " + name);
    return it->second;
}

const std::string& Topology::node_name(NodeId u) const {
    if (u < 0 || u >= node_count())
        throw std::invalid_argument("node id out of range");
    return names_[u];
}

LinkId Topology::link_id(NodeId u, NodeId v) const {
    auto it = by_pair_.find({u, v});
    return it == by_pair_.end() ? -1 : it->second;
}

void validate_flow(const FlowSpec& flow, const Topology& topo) {
    if (flow.source < 0 || flow.source >= topo.node_count() || flow.destination < 0 ||
        flow.destination >= topo.node_count())
        throw std::invalid_argument("flow " + std::to_string(flow.id) + ": endpoint not in topology");
    if (flow.source == flow.destination)
        throw std::invalid_argument("flow " + std::to_string(flow.id) + ": source equals destination");
    if (flow.cycle < 1)
        throw std::invalid_argument("flow " + std::to_string(flow.id) + ": cycle must be >= 1");
    if (flow.max_delay < 1)
        throw std::invalid_argument("flow " + std::to_string(flow.id) + ": max_delay must be >= 1");
    if (flow.arrival < 1)
        throw std::invalid_argument("flow " + std::to_string(flow.id) + ": arrival must be >= 1");
}

Hypercycle hypercycle_of(const std::vector<FlowSpec>& flows) {
    if (flows.empty())
        throw std::invalid_argument("no flows");
    long long gamma = 1;
    for (const FlowSpec& f : flows) {
        if (f.cycle < 1)
            throw std::invalid_argument("flow " + std::to_string(f.id) + ": cycle must be >= 1");
        gamma = std::lcm(gamma, static_cast<long long>(f.cycle));
        if (gamma > (1LL << 30))
            throw std::runtime_error("hypercycle too large: lcm exceeds 2^30 slots");
    }
    return Hypercycle{static_cast<int>(gamma), 0.0};
}

std::vector<PacketWindow> packet_windows(const FlowSpec& flow, const Hypercycle& hc) {
    if (flow.cycle < 1 || hc.gamma % flow.cycle != 0)
        throw std::invalid_argument("cycle/hypercycle mismatch for flow " + std::to_string(flow.id));
    int packets = hc.gamma / flow.cycle;
    std::vector<PacketWindow> windows;
    windows.reserve(packets);
    for (int i = 0; i < packets; ++i) {
        Slot arrival = wrap_slot(static_cast<long long>(flow.arrival) + static_cast<long long>(i) * flow.cycle,
                                 hc.gamma);
        windows.push_back(PacketWindow{arrival, static_cast<long long>(arrival) + flow.max_delay - 1});
    }
    return windows;
}

const char* mode_name(Mode mode) {
    return mode == Mode::Hfs ? "hfs" : "fcs";
}

Mode mode_from_name(const std::string& name) {
    if (name == "hfs")
        return Mode::Hfs;
    if (name == "fcs")
        return Mode::Fcs;
    throw std::invalid_argument("unknown mode: " + name + " (expected hfs or fcs)");
}

} // namespace tte
