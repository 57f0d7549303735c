#include "ttesched/verify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tte {

const char* rule_name(Rule rule) {
    switch (rule) {
    case Rule::Capacity: return "capacity";
    case Rule::Conservation: return "conservation";
    case Rule::NoLoop: return "no_loop";
    case Rule::Deadline: return "deadline";
    case Rule::Periodicity: return "periodicity";
    }
    return "?";
}

namespace {

struct Checker {
    const Tecg& tecg;
    const Topology& topo;
    int gamma;
    std::vector<Violation>& out;

    void add(Rule rule, std::string entity, std::string detail) {
        out.push_back(Violation{rule, std::move(entity), std::move(detail)});
    }

    std::string packet_name(const PacketId& p) const {
        return "flow " + std::to_string(p.flow) + " packet " + std::to_string(p.seq);
    }

    std::string edge_name(const Hop& hop) const {
        return "(" + topo.node_name(hop.from) + "," + topo.node_name(hop.to) + ")@" +
               std::to_string(hop.slot);
    }

    // Structural checks for one path; returns the span offset of the final
    // transmission, or -1 when the path is too broken to time.
    int check_path(const FlowSpec& flow, const PacketWindow& window, const SchedulePath& path) {
        const std::string who = packet_name(path.packet);
        if (path.hops.empty()) {
            add(Rule::Conservation, who, "empty path");
            return -1;
        }
        for (const Hop& hop : path.hops)
            if (hop.from < 0 || hop.from >= topo.node_count() || hop.to < 0 ||
                hop.to >= topo.node_count()) {
                add(Rule::Conservation, who, "hop references a node outside the topology");
                return -1;
            }
        const int span = std::min(flow.max_delay, gamma);
        const Hop& first = path.hops.front();
        if (first.from != flow.source)
            add(Rule::Conservation, who,
                "path departs " + topo.node_name(first.from) + " instead of the source");
        if (first.slot < 1 || first.slot > gamma) {
            add(Rule::Conservation, who, "slot out of range");
            return -1;
        }
        int start = static_cast<int>(
            (static_cast<long long>(first.slot) - window.arrival + gamma) % gamma);

        int last_comm = -1;
        for (std::size_t j = 0; j < path.hops.size(); ++j) {
            const Hop& hop = path.hops[j];
            Slot expect = wrap_slot(static_cast<long long>(window.arrival) + start + j, gamma);
            if (hop.slot != expect)
                add(Rule::Conservation, who,
                    "hop " + std::to_string(j + 1) + " at slot " + std::to_string(hop.slot) +
                        ", expected consecutive slot " + std::to_string(expect));
            if (j > 0 && path.hops[j - 1].to != hop.from)
                add(Rule::Conservation, who,
                    "hop " + std::to_string(j + 1) + " departs a different vertex than hop " +
                        std::to_string(j) + " reached");
            if (hop.kind == Hop::Kind::Storage && hop.from != hop.to)
                add(Rule::Conservation, who, "storage hop with distinct endpoints");
            if (hop.kind == Hop::Kind::Comm)
                last_comm = start + static_cast<int>(j);
        }
        if (start + static_cast<int>(path.hops.size()) > span)
            add(Rule::Deadline, who, "hops extend past the deadline slot");
        if (path.hops.back().to != flow.destination)
            add(Rule::Conservation, who, "path ends at " + topo.node_name(path.hops.back().to) +
                                             " instead of the destination");
        if (last_comm < 0) {
            add(Rule::Deadline, who, "packet is never transmitted to the destination");
            return -1;
        }

        // At most one transmission per node, destination exempt.
        std::map<NodeId, int> sends;
        for (const Hop& hop : path.hops)
            if (hop.kind == Hop::Kind::Comm)
                ++sends[hop.from];
        for (const auto& [node, n] : sends)
            if (n > 1 && node != flow.destination)
                add(Rule::NoLoop, who,
                    topo.node_name(node) + " transmits " + std::to_string(n) + " times");
        return last_comm;
    }
};

} // namespace

VerifyReport verify_schedule(const Tecg& tecg, const std::vector<FlowSpec>& flows,
                             const Schedule& schedule, Mode mode) {
    VerifyReport report;
    Checker check{tecg, tecg.topology(), tecg.gamma(), report.violations};

    std::map<FlowId, const FlowSpec*> by_id;
    for (const FlowSpec& f : flows)
        by_id.emplace(f.id, &f);

    // Per-path structure, plus capacity bookkeeping across all paths.
    std::map<TimedEdge, std::vector<PacketId>> edge_users;
    for (const auto& [packet, path] : schedule.paths) {
        auto it = by_id.find(packet.flow);
        if (it == by_id.end())
            throw std::invalid_argument("schedule references unknown flow " + std::to_string(packet.flow));
        const FlowSpec& flow = *it->second;
        auto windows = packet_windows(flow, tecg.hypercycle());
        if (packet.seq < 1 || packet.seq > static_cast<int>(windows.size()))
            throw std::invalid_argument("schedule references packet " + std::to_string(packet.seq) +
                                        " of flow " + std::to_string(packet.flow) +
                                        " beyond the hypercycle");
        if (path.packet != packet)
            throw std::invalid_argument("schedule path keyed under a different packet");

        check.check_path(flow, windows[packet.seq - 1], path);

        for (const Hop& hop : path.hops) {
            if (hop.kind != Hop::Kind::Comm)
                continue;
            LinkId link = check.topo.link_id(hop.from, hop.to);
            if (link < 0) {
                check.add(Rule::Capacity, check.packet_name(packet),
                          "no such link " + check.edge_name(hop));
                continue;
            }
            if (hop.slot >= 1 && hop.slot <= check.gamma)
                edge_users[TimedEdge{link, hop.slot}].push_back(packet);
        }
    }

    for (const auto& [edge, users] : edge_users) {
        const auto& [u, v] = check.topo.link(edge.link);
        std::string name = "(" + check.topo.node_name(u) + "," + check.topo.node_name(v) + ")@" +
                           std::to_string(edge.slot);
        if (users.size() > 1)
            check.add(Rule::Capacity, name,
                      "assigned to " + std::to_string(users.size()) + " packets");
        if (tecg.occupied(edge))
            check.add(Rule::Capacity, name, "already occupied before this schedule");
    }

    // Admission completeness: every packet of an admitted flow needs a path.
    for (const FlowSpec& flow : flows) {
        if (!schedule.is_admitted(flow.id))
            continue;
        int packets = packet_count(flow, tecg.hypercycle());
        for (int seq = 1; seq <= packets; ++seq)
            if (!schedule.paths.count(PacketId{flow.id, seq}))
                check.add(Rule::Deadline, check.packet_name(PacketId{flow.id, seq}),
                          "admitted flow has no path for this packet");
    }

    // FCS: packet i must be the (i-1)*cycle shifted copy of packet 1.
    if (mode == Mode::Fcs) {
        for (const FlowSpec& flow : flows) {
            if (!schedule.is_admitted(flow.id))
                continue;
            auto base = schedule.paths.find(PacketId{flow.id, 1});
            if (base == schedule.paths.end())
                continue;
            int packets = packet_count(flow, tecg.hypercycle());
            for (int seq = 2; seq <= packets; ++seq) {
                auto it = schedule.paths.find(PacketId{flow.id, seq});
                if (it == schedule.paths.end())
                    continue;
                const std::string who = check.packet_name(it->first);
                const auto& ref = base->second.hops;
                const auto& got = it->second.hops;
                long long shift = static_cast<long long>(seq - 1) * flow.cycle;
                if (ref.size() != got.size()) {
                    check.add(Rule::Periodicity, who, "path shape differs from packet 1");
                    continue;
                }
                for (std::size_t j = 0; j < ref.size(); ++j) {
                    bool same = got[j].kind == ref[j].kind && got[j].from == ref[j].from &&
                                got[j].to == ref[j].to &&
                                got[j].slot == wrap_slot(ref[j].slot + shift, check.gamma);
                    if (!same) {
                        check.add(Rule::Periodicity, who,
                                  "hop " + std::to_string(j + 1) +
                                      " is not the cycle-shifted copy of packet 1");
                        break;
                    }
                }
            }
        }
    }

    report.ok = report.violations.empty();
    return report;
}

std::vector<DeliveryPlan> jitter_mask(const std::vector<FlowSpec>& flows, const Schedule& schedule,
                                      const Hypercycle& hc) {
    std::vector<DeliveryPlan> plans;
    for (const FlowSpec& flow : flows) {
        if (!schedule.is_admitted(flow.id))
            continue;
        int packets = packet_count(flow, hc);
        auto windows = packet_windows(flow, hc);
        DeliveryPlan plan{flow.id, 0, {}};
        for (int seq = 1; seq <= packets; ++seq) {
            auto it = schedule.paths.find(PacketId{flow.id, seq});
            if (it == schedule.paths.end())
                throw std::invalid_argument("jitter_mask: admitted flow " + std::to_string(flow.id) +
                                            " is missing packet " + std::to_string(seq));
            const SchedulePath& path = it->second;
            if (path.hops.empty())
                throw std::invalid_argument("jitter_mask: empty path for flow " +
                                            std::to_string(flow.id) + " packet " +
                                            std::to_string(seq));
            int start = static_cast<int>((static_cast<long long>(path.hops.front().slot) -
                                          windows[seq - 1].arrival + hc.gamma) %
                                         hc.gamma);
            int last_comm = -1;
            for (std::size_t j = 0; j < path.hops.size(); ++j)
                if (path.hops[j].kind == Hop::Kind::Comm)
                    last_comm = start + static_cast<int>(j);
            plan.max_delay_slots = std::max(plan.max_delay_slots, last_comm + 1);
        }
        for (int seq = 1; seq <= packets; ++seq)
            plan.deliveries.push_back(static_cast<long long>(flow.arrival) +
                                      static_cast<long long>(seq - 1) * flow.cycle +
                                      plan.max_delay_slots);
        plans.push_back(std::move(plan));
    }
    return plans;
}

} // namespace tte
