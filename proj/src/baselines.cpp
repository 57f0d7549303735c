#include "ttesched/baselines.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tte {

FlowScheduleResult schedule_flow_bfs_s(Tecg& tecg, const FlowSpec& flow) {
    // Fixed-cyclic greedy: identify the smallest-hop (then earliest)
    // schedule-path for packet 1 with no regard for load or for the other
    // packets, then commit its cycle-shift family as-is. A collision anywhere
    // in the family rejects the flow; the scheme never reconsiders the path.
    const Topology& topo = tecg.topology();
    const int packets = packet_count(flow, tecg.hypercycle());
    SchedulePathGraph view(tecg, PacketId{flow.id, 1}, flow);

    PacketSearchResult first = min_weight_span_path(view, [](LinkId, int) { return 1; });
    if (!first.found)
        return FlowScheduleResult{};

    FlowScheduleResult result;
    std::vector<TimedEdge> all_edges;
    for (int seq = 1; seq <= packets; ++seq) {
        long long shift = static_cast<long long>(seq - 1) * flow.cycle;
        SchedulePath shifted{PacketId{flow.id, seq}, first.path.hops};
        for (Hop& hop : shifted.hops)
            hop.slot = wrap_slot(hop.slot + shift, tecg.gamma());
        for (const TimedEdge& e : comm_edges_of(shifted, topo)) {
            if (seq > 1 && tecg.occupied(e))
                return FlowScheduleResult{};
            all_edges.push_back(e);
        }
        result.paths.push_back(std::move(shifted));
        result.costs.push_back(static_cast<double>(first.weight));
    }

    std::vector<TimedEdge> sorted = all_edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return FlowScheduleResult{};

    tecg.occupy(all_edges);
    return result;
}

namespace {

constexpr std::size_t kIrasSortLimit = 10'000;   // beyond this, first-found order
constexpr std::size_t kIrasTryLimit = 100'000;   // enumeration stop, guards dense graphs

// Simple no-storage paths from source to destination with at most `max_hops`
// links, emitted in depth-first neighbor order.
void enumerate_static_paths(const Topology& topo, NodeId at, NodeId dst, int max_hops,
                            std::vector<char>& visited, std::vector<LinkId>& prefix,
                            std::vector<std::vector<LinkId>>& out, std::size_t limit) {
    if (out.size() >= limit)
        return;
    if (static_cast<int>(prefix.size()) >= max_hops)
        return;
    for (const auto& [v, e] : topo.out(at)) {
        if (visited[v])
            continue;
        prefix.push_back(e);
        if (v == dst) {
            out.push_back(prefix);
        } else {
            visited[v] = 1;
            enumerate_static_paths(topo, v, dst, max_hops, visited, prefix, out, limit);
            visited[v] = 0;
        }
        prefix.pop_back();
        if (out.size() >= limit)
            return;
    }
}

} // namespace

FlowScheduleResult schedule_flow_iras(Tecg& tecg, const FlowSpec& flow, IrasState* state) {
    const Topology& topo = tecg.topology();
    auto windows = packet_windows(flow, tecg.hypercycle());
    const int span = std::min(flow.max_delay, tecg.gamma());

    std::vector<char> visited(topo.node_count(), 0);
    visited[flow.source] = 1;
    std::vector<LinkId> prefix;
    std::vector<std::vector<LinkId>> candidates;
    enumerate_static_paths(topo, flow.source, flow.destination, span, visited, prefix, candidates,
                           kIrasTryLimit);

    if (candidates.size() <= kIrasSortLimit) {
        auto key = [&](const std::vector<LinkId>& path) {
            long long assigned = 0;
            if (state)
                for (LinkId e : path)
                    assigned += state->flows_on_link[e];
            return std::make_pair(path.size(), assigned);
        };
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](const auto& a, const auto& b) { return key(a) < key(b); });
    }

    for (const std::vector<LinkId>& path : candidates) {
        // No-wait: hop j of every packet goes out in the j-th slot after the
        // packet's arrival.
        std::vector<TimedEdge> edges;
        bool ok = true;
        for (const PacketWindow& w : windows) {
            for (std::size_t j = 0; j < path.size() && ok; ++j) {
                TimedEdge e{path[j], wrap_slot(static_cast<long long>(w.arrival) + j, tecg.gamma())};
                ok = !tecg.occupied(e);
                edges.push_back(e);
            }
            if (!ok)
                break;
        }
        if (!ok)
            continue;

        tecg.occupy(edges);
        FlowScheduleResult result;
        for (std::size_t i = 0; i < windows.size(); ++i) {
            SchedulePath sp{PacketId{flow.id, static_cast<int>(i) + 1}, {}};
            NodeId from = flow.source;
            for (std::size_t j = 0; j < path.size(); ++j) {
                NodeId to = topo.link(path[j]).second;
                sp.hops.push_back(comm_hop(from, to,
                                           wrap_slot(static_cast<long long>(windows[i].arrival) + j,
                                                     tecg.gamma())));
                from = to;
            }
            result.paths.push_back(std::move(sp));
            result.costs.push_back(static_cast<double>(path.size()));
        }
        if (state)
            for (LinkId e : path)
                ++state->flows_on_link[e];
        return result;
    }
    return FlowScheduleResult{};
}

FlowScheduleResult schedule_flow_jras_tseg(Tecg& tecg, const FlowSpec& flow) {
    const Topology& topo = tecg.topology();
    const int packets = packet_count(flow, tecg.hypercycle());
    SchedulePathGraph view(tecg, PacketId{flow.id, 1}, flow);

    // Weight of a packet-1 edge = how many of its cycle-shifted copies are
    // already occupied; a zero-weight path is one whose full shift family is
    // free.
    auto collisions = [&](LinkId link, int t) {
        Slot base = view.slot_at(t);
        std::int64_t hits = 0;
        for (int p = 1; p < packets; ++p)
            hits += tecg.occupied(link, wrap_slot(base + static_cast<long long>(p) * flow.cycle,
                                                  tecg.gamma()))
                        ? 1
                        : 0;
        return hits;
    };

    PacketSearchResult first = min_weight_span_path(view, collisions);
    if (!first.found || first.weight != 0)
        return FlowScheduleResult{};

    FlowScheduleResult result;
    std::vector<TimedEdge> all_edges;
    for (int seq = 1; seq <= packets; ++seq) {
        long long shift = static_cast<long long>(seq - 1) * flow.cycle;
        SchedulePath shifted{PacketId{flow.id, seq}, first.path.hops};
        for (Hop& hop : shifted.hops)
            hop.slot = wrap_slot(hop.slot + shift, tecg.gamma());
        for (const TimedEdge& e : comm_edges_of(shifted, topo))
            all_edges.push_back(e);
        result.paths.push_back(std::move(shifted));
        result.costs.push_back(0.0);
    }

    // Shift copies can alias each other when the delay exceeds the cycle;
    // such a family cannot be committed.
    std::vector<TimedEdge> sorted = all_edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return FlowScheduleResult{};

    tecg.occupy(all_edges);
    return result;
}

} // namespace tte
