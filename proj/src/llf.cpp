#include "ttesched/llf.hpp"

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace tte {

double alpha_load(const Tecg& tecg, LinkId link) {
    if (link < 0 || link >= tecg.topology().link_count())
        throw std::invalid_argument("unknown link id " + std::to_string(link));
    return static_cast<double>(tecg.occupied_count(link)) / tecg.gamma();
}

namespace {

int occupied_in_span(const Tecg& tecg, LinkId link, const SchedulePathGraph& view) {
    int n = 0;
    for (int t = 0; t < view.span(); ++t)
        n += tecg.occupied(link, view.slot_at(t)) ? 1 : 0;
    return n;
}

} // namespace

double beta_load(const Tecg& tecg, const TimedEdge& edge, const SchedulePathGraph& view) {
    if (edge.link < 0 || edge.link >= tecg.topology().link_count())
        throw std::invalid_argument("unknown link id " + std::to_string(edge.link));
    if (view.offset_of(edge.slot) < 0)
        throw std::invalid_argument("edge slot " + std::to_string(edge.slot) +
                                    " outside the packet's lifespan");
    if (view.flow().max_delay >= tecg.gamma())
        return alpha_load(tecg, edge.link);
    return static_cast<double>(occupied_in_span(tecg, edge.link, view)) / view.flow().max_delay;
}

double xi_weight(double alpha, double beta, Hop::Kind kind) {
    return kind == Hop::Kind::Storage ? 0.0 : alpha + beta;
}

PacketSearchResult min_weight_span_path(const SchedulePathGraph& view,
                                        const std::function<std::int64_t(LinkId, int)>& weight) {
    const Tecg& tecg = view.tecg();
    const Topology& topo = tecg.topology();
    const int span = view.span();
    const int nodes = topo.node_count();

    struct State {
        std::int64_t weight = std::numeric_limits<std::int64_t>::max();
        int comm_hops = 0;
        int last_comm = -1; // span offset of the latest communication hop
        NodeId pred = -1;
        Hop::Kind pred_kind = Hop::Kind::Storage;
        bool reached() const { return weight != std::numeric_limits<std::int64_t>::max(); }
    };

    // Position t holds the state after t hops, i.e. at slot wrap(arrival+t).
    std::vector<std::vector<State>> dist(span + 1, std::vector<State>(nodes));
    dist[0][view.source()] = State{0, 0, -1, -1, Hop::Kind::Storage};

    auto better = [](const State& cand, const State& cur) {
        if (cand.weight != cur.weight)
            return cand.weight < cur.weight;
        if (cand.comm_hops != cur.comm_hops)
            return cand.comm_hops < cur.comm_hops;
        return cand.last_comm < cur.last_comm;
    };

    for (int t = 0; t < span; ++t) {
        for (NodeId u = 0; u < nodes; ++u) {
            const State& here = dist[t][u];
            if (!here.reached())
                continue;
            State stay{here.weight, here.comm_hops, here.last_comm, u, Hop::Kind::Storage};
            if (better(stay, dist[t + 1][u]))
                dist[t + 1][u] = stay;
            for (const auto& [v, link] : topo.out(u)) {
                if (!view.comm_free(link, t))
                    continue;
                State go{here.weight + weight(link, t), here.comm_hops + 1, t, u, Hop::Kind::Comm};
                if (better(go, dist[t + 1][v]))
                    dist[t + 1][v] = go;
            }
        }
    }

    PacketSearchResult result;
    const State& target = dist[span][view.destination()];
    if (!target.reached())
        return result;

    // Reconstruct backwards from the target vertex, then drop the trailing
    // storage hops at the destination: the path ends with the transmission
    // that lands on the destination node.
    std::vector<Hop> hops(span);
    NodeId at = view.destination();
    for (int t = span; t > 0; --t) {
        const State& st = dist[t][at];
        hops[t - 1] = st.pred_kind == Hop::Kind::Comm ? comm_hop(st.pred, at, view.slot_at(t - 1))
                                                      : storage_hop(at, view.slot_at(t - 1));
        at = st.pred;
    }
    hops.resize(target.last_comm + 1);

    result.found = true;
    result.path = SchedulePath{view.packet(), std::move(hops)};
    result.weight = target.weight;
    return result;
}

PacketSearchResult lightest_load_path(const SchedulePathGraph& view,
                                      const std::vector<int>* hypercycle_counts) {
    const Tecg& tecg = view.tecg();
    const Topology& topo = tecg.topology();
    const int gamma = tecg.gamma();
    const int rho = view.flow().max_delay;

    // Exact integer weights: xi * (gamma * rho) per edge, so tie-breaking is
    // not at the mercy of float rounding. For rho >= gamma both load levels
    // equal the hypercycle-level fraction.
    std::vector<std::int64_t> link_weight(topo.link_count());
    for (LinkId e = 0; e < topo.link_count(); ++e) {
        std::int64_t hyper = hypercycle_counts ? (*hypercycle_counts)[e] : tecg.occupied_count(e);
        if (rho >= gamma)
            link_weight[e] = 2 * hyper * rho;
        else
            link_weight[e] =
                hyper * rho + static_cast<std::int64_t>(occupied_in_span(tecg, e, view)) * gamma;
    }

    PacketSearchResult result =
        min_weight_span_path(view, [&](LinkId e, int) { return link_weight[e]; });
    if (result.found)
        result.cost = static_cast<double>(result.weight) / (static_cast<double>(gamma) * rho);
    return result;
}

PacketSearchResult lightest_load_path(const SchedulePathGraph& view) {
    return lightest_load_path(view, nullptr);
}

FlowScheduleResult schedule_flow_per_packet(Tecg& tecg, const FlowSpec& flow,
                                            const PacketSearcher& search) {
    const int packets = packet_count(flow, tecg.hypercycle());
    FlowScheduleResult result;
    std::vector<std::vector<TimedEdge>> committed;

    for (int seq = 1; seq <= packets; ++seq) {
        SchedulePathGraph view(tecg, PacketId{flow.id, seq}, flow);
        PacketSearchResult found = search(view);
        if (!found.found) {
            for (const auto& edges : committed)
                tecg.release(edges);
            return FlowScheduleResult{};
        }
        std::vector<TimedEdge> edges = comm_edges_of(found.path, tecg.topology());
        tecg.occupy(edges);
        committed.push_back(std::move(edges));
        result.paths.push_back(std::move(found.path));
        result.costs.push_back(found.cost);
    }
    return result;
}

FlowScheduleResult schedule_flow_llf(Tecg& tecg, const FlowSpec& flow) {
    // The hypercycle-level load is refreshed per committed flow, not per
    // packet; the packet-level load stays live so a flow still spreads its
    // own packets.
    std::vector<int> hyper(tecg.topology().link_count());
    for (LinkId e = 0; e < tecg.topology().link_count(); ++e)
        hyper[e] = tecg.occupied_count(e);
    return schedule_flow_per_packet(tecg, flow, [&hyper](const SchedulePathGraph& view) {
        return lightest_load_path(view, &hyper);
    });
}

Schedule admit_sequence(Tecg& tecg, const std::vector<FlowSpec>& flows, const FlowScheduler& scheduler,
                        const AdmitObserver& observer) {
    FlowScheduler run = scheduler ? scheduler : [](Tecg& t, const FlowSpec& f) {
        return schedule_flow_llf(t, f);
    };
    Schedule schedule;
    for (const FlowSpec& flow : flows) {
        FlowScheduleResult result = run(tecg, flow);
        schedule.admitted[flow.id] = result.admitted();
        for (const SchedulePath& path : result.paths)
            schedule.paths.emplace(path.packet, path);
        if (observer)
            observer(flow, result);
    }
    return schedule;
}

} // namespace tte
