#include "ttesched/analysis.hpp"

#include <numeric>
#include <stdexcept>

namespace tte {

bool collides(const IndexSet& a, const IndexSet& b) {
    if (a.cycle < 1 || b.cycle < 1)
        throw std::invalid_argument("index set cycles must be >= 1");
    long long g = std::gcd(a.cycle, b.cycle);
    long long diff = a.origin - b.origin;
    return diff % g == 0;
}

std::vector<long long> blocked_slots(const IndexSet& a, long long other_cycle, long long horizon) {
    if (a.cycle < 1 || other_cycle < 1)
        throw std::invalid_argument("index set cycles must be >= 1");
    if (horizon < 1)
        throw std::invalid_argument("horizon must be >= 1");
    long long g = std::gcd(a.cycle, other_cycle);
    std::vector<long long> slots;
    for (long long s = a.origin; s <= horizon; s += g)
        if (s >= 1)
            slots.push_back(s);
    return slots;
}

namespace {

// Paths from the packet's source vertex to its target vertex in the
// span-restricted graph, counted by a forward pass over span positions.
std::uint64_t count_packet_paths(const SchedulePathGraph& view) {
    const Topology& topo = view.tecg().topology();
    const int nodes = topo.node_count();
    std::vector<std::uint64_t> ways(nodes, 0);
    ways[view.source()] = 1;
    for (int t = 0; t < view.span(); ++t) {
        std::vector<std::uint64_t> next(nodes, 0);
        for (NodeId u = 0; u < nodes; ++u) {
            if (ways[u] == 0)
                continue;
            next[u] += ways[u]; // storage edge
            for (const auto& [v, link] : topo.out(u))
                if (view.comm_free(link, t))
                    next[v] += ways[u];
            if (next[u] > kCountGuard)
                throw std::runtime_error("count overflow guard");
        }
        for (NodeId u = 0; u < nodes; ++u)
            if (next[u] > kCountGuard)
                throw std::runtime_error("count overflow guard");
        ways = std::move(next);
    }
    return ways[view.destination()];
}

} // namespace

std::uint64_t count_solutions(const Tecg& tecg, const FlowSpec& flow, Mode mode) {
    if (flow.max_delay > flow.cycle)
        throw std::invalid_argument(
            "count_solutions requires max_delay <= cycle (packet lifespans must not overlap)");
    const int packets = packet_count(flow, tecg.hypercycle());

    if (mode == Mode::Fcs)
        return count_packet_paths(SchedulePathGraph(tecg, PacketId{flow.id, 1}, flow));

    std::uint64_t product = 1;
    for (int seq = 1; seq <= packets; ++seq) {
        std::uint64_t n = count_packet_paths(SchedulePathGraph(tecg, PacketId{flow.id, seq}, flow));
        if (n == 0)
            return 0;
        if (product > kCountGuard / n)
            throw std::runtime_error("count overflow guard");
        product *= n;
    }
    return product;
}

} // namespace tte
