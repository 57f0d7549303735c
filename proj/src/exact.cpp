#include "ttesched/exact.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

#include "ttesched/llf.hpp"

namespace tte {

namespace {

// Per-packet variable table: var index by (kind, link-or-node id, span offset).
using VarKey = std::tuple<Hop::Kind, int, int>;

struct PacketScope {
    SchedulePathGraph view;
    std::map<VarKey, int> vars;

    int var_of(Hop::Kind kind, int id, int offset) const {
        auto it = vars.find({kind, id, offset});
        return it == vars.end() ? -1 : it->second;
    }
};

std::vector<std::vector<PacketScope>> packet_scopes(const Tecg& tecg,
                                                    const std::vector<FlowSpec>& flows) {
    std::vector<std::vector<PacketScope>> scopes(flows.size());
    for (std::size_t k = 0; k < flows.size(); ++k) {
        int packets = packet_count(flows[k], tecg.hypercycle());
        scopes[k].reserve(packets);
        for (int seq = 1; seq <= packets; ++seq)
            scopes[k].push_back(PacketScope{
                SchedulePathGraph(tecg, PacketId{flows[k].id, seq}, flows[k]), {}});
    }
    return scopes;
}

IlpModel build_model(const Tecg& tecg, const std::vector<FlowSpec>& flows, Mode mode) {
    for (const FlowSpec& flow : flows)
        validate_flow(flow, tecg.topology());

    IlpModel model{mode, tecg, flows, {}, {}, {}, {}, {}, {}};

    const Topology& topo = tecg.topology();
    auto scopes = packet_scopes(tecg, flows);
    std::map<TimedEdge, std::vector<int>> competing;

    // Variables: one per free communication edge and one per storage edge of
    // every packet's schedule-path graph.
    for (std::size_t k = 0; k < flows.size(); ++k) {
        for (auto& scope : scopes[k]) {
            for (int t = 0; t < scope.view.span(); ++t) {
                Slot slot = scope.view.slot_at(t);
                for (LinkId e = 0; e < topo.link_count(); ++e) {
                    if (tecg.occupied(e, slot))
                        continue;
                    int var = static_cast<int>(model.xvars.size());
                    const auto& [u, v] = topo.link(e);
                    model.xvars.push_back(
                        IlpVar{static_cast<int>(k), scope.view.packet().seq, comm_hop(u, v, slot)});
                    scope.vars[{Hop::Kind::Comm, e, t}] = var;
                    competing[TimedEdge{e, slot}].push_back(var);
                }
                for (NodeId u = 0; u < topo.node_count(); ++u) {
                    int var = static_cast<int>(model.xvars.size());
                    model.xvars.push_back(
                        IlpVar{static_cast<int>(k), scope.view.packet().seq, storage_hop(u, slot)});
                    scope.vars[{Hop::Kind::Storage, u, t}] = var;
                }
            }
        }
    }

    for (auto& [edge, vars] : competing)
        model.capacity_rows.push_back(std::move(vars));

    for (std::size_t k = 0; k < flows.size(); ++k) {
        const FlowSpec& flow = flows[k];
        for (const PacketScope& scope : scopes[k]) {
            const int span = scope.view.span();
            const int seq = scope.view.packet().seq;

            for (int t = 0; t <= span; ++t) {
                for (NodeId u = 0; u < topo.node_count(); ++u) {
                    if ((t == 0 && u == flow.source) || (t == span && u == flow.destination))
                        continue;
                    IlpModel::ConservationRow row;
                    if (t > 0) {
                        if (int var = scope.var_of(Hop::Kind::Storage, u, t - 1); var >= 0)
                            row.in.push_back(var);
                        for (const auto& [w, e] : topo.in(u))
                            if (int var = scope.var_of(Hop::Kind::Comm, e, t - 1); var >= 0)
                                row.in.push_back(var);
                    }
                    if (t < span) {
                        if (int var = scope.var_of(Hop::Kind::Storage, u, t); var >= 0)
                            row.out.push_back(var);
                        for (const auto& [w, e] : topo.out(u))
                            if (int var = scope.var_of(Hop::Kind::Comm, e, t); var >= 0)
                                row.out.push_back(var);
                    }
                    model.conservation_rows.push_back(std::move(row));
                }
            }

            for (NodeId u = 0; u < topo.node_count(); ++u) {
                if (u == flow.destination)
                    continue;
                std::vector<int> row;
                for (int t = 0; t < span; ++t)
                    for (const auto& [w, e] : topo.out(u))
                        if (int var = scope.var_of(Hop::Kind::Comm, e, t); var >= 0)
                            row.push_back(var);
                model.no_loop_rows.push_back(std::move(row));
            }

            IlpModel::IndicatorRow ind;
            ind.flow_idx = static_cast<int>(k);
            ind.seq = seq;
            if (int var = scope.var_of(Hop::Kind::Storage, flow.source, 0); var >= 0)
                ind.outs.push_back(var);
            for (const auto& [w, e] : topo.out(flow.source))
                if (int var = scope.var_of(Hop::Kind::Comm, e, 0); var >= 0)
                    ind.outs.push_back(var);
            model.indicator_rows.push_back(std::move(ind));
        }
    }

    // FCS: each packet's edge variable equals the cycle-shifted packet-1
    // variable. When one side's edge is occupied (no variable), the present
    // side is pinned to zero.
    if (mode == Mode::Fcs) {
        for (std::size_t k = 0; k < flows.size(); ++k) {
            if (scopes[k].size() < 2)
                continue;
            const PacketScope& first = scopes[k][0];
            const int span = first.view.span();
            for (std::size_t p = 1; p < scopes[k].size(); ++p) {
                const PacketScope& other = scopes[k][p];
                for (int t = 0; t < span; ++t) {
                    for (LinkId e = 0; e < topo.link_count(); ++e) {
                        int a = first.var_of(Hop::Kind::Comm, e, t);
                        int b = other.var_of(Hop::Kind::Comm, e, t);
                        if (a < 0 && b < 0)
                            continue;
                        if (a >= 0 && b >= 0)
                            model.periodicity_rows.push_back({a, b});
                        else
                            model.periodicity_rows.push_back({a >= 0 ? a : b, -1});
                    }
                    for (NodeId u = 0; u < topo.node_count(); ++u) {
                        int a = first.var_of(Hop::Kind::Storage, u, t);
                        int b = other.var_of(Hop::Kind::Storage, u, t);
                        model.periodicity_rows.push_back({a, b});
                    }
                }
            }
        }
    }

    return model;
}

// ---------------------------------------------------------------------------
// Path-formulation search machinery shared by solve().

struct Candidate {
    std::vector<TimedEdge> edges; // communication edges, in hop order
    SchedulePath path;
};

// Enumerates every loop-free schedule-path of one packet over the current
// occupancy: a DFS over span positions where each node other than the
// destination transmits at most once and the path ends with the transmission
// landing on the destination.
class CandidateEnumerator {
public:
    CandidateEnumerator(const SchedulePathGraph& view, std::size_t limit)
        : view_(view), topo_(view.tecg().topology()), limit_(limit) {}

    std::vector<Candidate> run() {
        hops_.clear();
        edges_.clear();
        sent_.assign(topo_.node_count(), 0);
        out_.clear();
        walk(view_.source(), 0);
        return std::move(out_);
    }

private:
    void emit() {
        Candidate c;
        c.edges = edges_;
        c.path = SchedulePath{view_.packet(), hops_};
        out_.push_back(std::move(c));
        if (out_.size() > limit_)
            throw std::runtime_error("exact path enumeration limit exceeded");
    }

    void walk(NodeId at, int t) {
        if (t >= view_.span())
            return;
        Slot slot = view_.slot_at(t);
        for (const auto& [v, e] : topo_.out(at)) {
            if (sent_[at] || view_.tecg().occupied(e, slot))
                continue;
            hops_.push_back(comm_hop(at, v, slot));
            edges_.push_back(TimedEdge{e, slot});
            if (v == view_.destination()) {
                emit();
            } else {
                sent_[at] = 1;
                walk(v, t + 1);
                sent_[at] = 0;
            }
            hops_.pop_back();
            edges_.pop_back();
        }
        hops_.push_back(storage_hop(at, slot));
        walk(at, t + 1);
        hops_.pop_back();
    }

    const SchedulePathGraph& view_;
    const Topology& topo_;
    std::size_t limit_;
    std::vector<Hop> hops_;
    std::vector<TimedEdge> edges_;
    std::vector<char> sent_;
    std::vector<Candidate> out_;
};

constexpr std::size_t kSolveEnumerationLimit = 5'000'000;

// Occupancy scratch for the search: base occupancy plus edges taken so far.
class OccupancySet {
public:
    explicit OccupancySet(const Tecg& base)
        : gamma_(base.gamma()),
          taken_(static_cast<std::size_t>(base.topology().link_count()) * gamma_, 0),
          taken_per_link_(base.topology().link_count(), 0) {
        for (const TimedEdge& e : base.occupied_edges())
            taken_[idx(e)] = 1;
    }

    bool conflicts(const std::vector<TimedEdge>& edges) const {
        for (const TimedEdge& e : edges)
            if (taken_[idx(e)])
                return true;
        return false;
    }
    void take(const std::vector<TimedEdge>& edges) {
        for (const TimedEdge& e : edges) {
            taken_[idx(e)] = 1;
            ++taken_per_link_[e.link];
        }
        taken_count_ += static_cast<long long>(edges.size());
    }
    void give_back(const std::vector<TimedEdge>& edges) {
        for (const TimedEdge& e : edges) {
            taken_[idx(e)] = 0;
            --taken_per_link_[e.link];
        }
        taken_count_ -= static_cast<long long>(edges.size());
    }
    long long taken_count() const { return taken_count_; } // search-taken edges only
    int taken_on_link(LinkId link) const { return taken_per_link_[link]; }

private:
    std::size_t idx(const TimedEdge& e) const {
        return static_cast<std::size_t>(e.link) * gamma_ + (e.slot - 1);
    }
    int gamma_;
    std::vector<char> taken_;
    std::vector<int> taken_per_link_;
    long long taken_count_ = 0;
};

// A flow-level option: one candidate path per packet (for FCS these are the
// cycle-shifted copies of a packet-1 path).
struct FlowOption {
    std::vector<SchedulePath> paths;
    std::vector<TimedEdge> edges; // union over packets
};

// Expands a packet-1 candidate into a full FCS flow option; returns false when
// the shifted copies collide with each other or with the base occupancy.
bool expand_fcs_option(const Tecg& base, const FlowSpec& flow, const Candidate& first,
                       FlowOption& out) {
    const Topology& topo = base.topology();
    int packets = packet_count(flow, base.hypercycle());
    out.paths.clear();
    out.edges.clear();
    for (int seq = 1; seq <= packets; ++seq) {
        long long shift = static_cast<long long>(seq - 1) * flow.cycle;
        SchedulePath shifted{PacketId{flow.id, seq}, first.path.hops};
        for (Hop& hop : shifted.hops)
            hop.slot = wrap_slot(hop.slot + shift, base.gamma());
        for (const Hop& hop : shifted.hops) {
            if (hop.kind != Hop::Kind::Comm)
                continue;
            TimedEdge edge{topo.link_id(hop.from, hop.to), hop.slot};
            if (base.occupied(edge))
                return false;
            out.edges.push_back(edge);
        }
        out.paths.push_back(std::move(shifted));
    }
    std::vector<TimedEdge> sorted = out.edges;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

struct SearchDeadline {
    std::chrono::steady_clock::time_point until;
    mutable int tick = 0;
    bool expired = false;

    bool hit() {
        if (expired)
            return true;
        if (++tick % 1024 == 0 && std::chrono::steady_clock::now() >= until)
            expired = true;
        return expired;
    }
};

// Depth-first branch and bound over flows: admit (trying every per-packet
// combination) or reject, flows ordered by fewest options first. The search
// starts from a heuristic incumbent and prunes with a capacity relaxation
// (every admitted flow consumes at least its minimum number of communication
// edges); exhausting the tree proves optimality.
class BranchAndBound {
public:
    BranchAndBound(const IlpModel& model, double time_limit_s)
        : model_(model), occ_(model.base),
          deadline_{std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(time_limit_s))} {}

    ExactResult run() {
        auto t0 = std::chrono::steady_clock::now();
        const std::size_t n = model_.flows.size();
        current_paths_.assign(n, {});
        best_paths_.assign(n, {});
        current_admitted_.assign(n, 0);
        best_admitted_.assign(n, 0);
        prepare();
        warm_start();
        descend(0, 0);

        ExactResult result;
        result.objective = best_;
        result.status = deadline_.expired ? SolveStatus::TimeLimitBestKnown : SolveStatus::ProvenOptimal;
        for (std::size_t k = 0; k < n; ++k) {
            const FlowSpec& flow = model_.flows[k];
            result.schedule.admitted[flow.id] = best_admitted_[k] != 0;
            if (best_admitted_[k])
                for (const SchedulePath& path : best_paths_[k])
                    result.schedule.paths.emplace(path.packet, path);
        }
        result.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return result;
    }

private:
    static constexpr long long kInfNeed = std::numeric_limits<long long>::max() / 4;

    void prepare() {
        const std::size_t n = model_.flows.size();
        options_.assign(n, {});
        packet_candidates_.assign(n, {});
        scratch_.assign(n, {});
        need_.assign(n, kInfNeed);

        for (std::size_t k = 0; k < n; ++k) {
            const FlowSpec& flow = model_.flows[k];
            int packets = packet_count(flow, model_.base.hypercycle());
            if (model_.mode == Mode::Hfs) {
                auto& per_packet = packet_candidates_[k];
                per_packet.reserve(packets);
                long long need = 0;
                bool admissible = true;
                for (int seq = 1; seq <= packets; ++seq) {
                    SchedulePathGraph view(model_.base, PacketId{flow.id, seq}, flow);
                    per_packet.push_back(CandidateEnumerator(view, kSolveEnumerationLimit).run());
                    std::size_t shortest = SIZE_MAX;
                    for (const Candidate& c : per_packet.back())
                        shortest = std::min(shortest, c.edges.size());
                    if (per_packet.back().empty())
                        admissible = false;
                    else
                        need += static_cast<long long>(shortest);
                }
                if (admissible)
                    need_[k] = need;
                scratch_[k].assign(per_packet.size(), nullptr);
            } else {
                SchedulePathGraph view(model_.base, PacketId{flow.id, 1}, flow);
                auto firsts = CandidateEnumerator(view, kSolveEnumerationLimit).run();
                for (const Candidate& c : firsts) {
                    FlowOption option;
                    if (expand_fcs_option(model_.base, flow, c, option))
                        options_[k].push_back(std::move(option));
                }
                for (const FlowOption& option : options_[k])
                    need_[k] = std::min(need_[k], static_cast<long long>(option.edges.size()));
            }
        }

        order_.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            order_[k] = static_cast<int>(k);
        auto option_weight = [&](int k) {
            // saturated product of per-packet counts; FCS lists options directly
            if (model_.mode == Mode::Fcs)
                return static_cast<double>(options_[k].size());
            double w = 1;
            for (const auto& cands : packet_candidates_[k])
                w = std::min(w * static_cast<double>(cands.size()), 1e18);
            return w;
        };
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return option_weight(a) < option_weight(b); });

        // Capacity relaxation per suffix of the flow order: prefix sums of the
        // ascending admissible edge needs, so the reachable admitted count
        // under an edge budget is one binary search away.
        suffix_need_prefix_.assign(n + 1, {0});
        for (std::size_t pos = 0; pos <= n; ++pos) {
            std::vector<long long> needs;
            for (std::size_t p = pos; p < n; ++p)
                if (need_[order_[p]] < kInfNeed)
                    needs.push_back(need_[order_[p]]);
            std::sort(needs.begin(), needs.end());
            auto& prefix = suffix_need_prefix_[pos];
            prefix.resize(needs.size() + 1);
            prefix[0] = 0;
            for (std::size_t i = 0; i < needs.size(); ++i)
                prefix[i + 1] = prefix[i] + needs[i];
        }
        base_free_ = model_.base.free_comm_edge_count();

        // Per-packet candidate order inside a flow: most constrained first.
        pkt_order_.assign(n, {});
        for (std::size_t k = 0; k < n; ++k) {
            auto& order = pkt_order_[k];
            order.resize(packet_candidates_[k].size());
            for (std::size_t i = 0; i < order.size(); ++i)
                order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return packet_candidates_[k][a].size() < packet_candidates_[k][b].size();
            });
        }

        const Topology& topo = model_.base.topology();
        base_free_per_link_.resize(topo.link_count());
        for (LinkId e = 0; e < topo.link_count(); ++e)
            base_free_per_link_[e] = model_.base.gamma() - model_.base.occupied_count(e);
        packets_of_.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            packets_of_[k] = packet_count(model_.flows[k], model_.base.hypercycle());

        // Remaining-flow groups per suffix position, keyed by source and by
        // destination node, demands sorted ascending.
        src_groups_.assign(n + 1, {});
        dst_groups_.assign(n + 1, {});
        for (std::size_t pos = 0; pos <= n; ++pos) {
            std::map<NodeId, std::vector<int>> by_source, by_dest;
            for (std::size_t p = pos; p < n; ++p) {
                int k = order_[p];
                if (need_[k] >= kInfNeed)
                    continue;
                by_source[model_.flows[k].source].push_back(packets_of_[k]);
                by_dest[model_.flows[k].destination].push_back(packets_of_[k]);
            }
            for (auto& [node, demands] : by_source) {
                std::sort(demands.begin(), demands.end());
                src_groups_[pos].push_back(CutGroup{node, std::move(demands)});
            }
            for (auto& [node, demands] : by_dest) {
                std::sort(demands.begin(), demands.end());
                dst_groups_[pos].push_back(CutGroup{node, std::move(demands)});
            }
        }
    }

    // Node cut-sets: every packet of an admitted flow crosses its source's
    // outgoing links once and its destination's incoming links once, so the
    // flows left to admit are limited by the free slots at those boundaries.
    int node_cut_bound(std::size_t pos) const {
        const Topology& topo = model_.base.topology();
        auto side = [&](const std::vector<CutGroup>& groups, bool outgoing) {
            int fit_total = 0;
            for (const CutGroup& group : groups) {
                long long capacity = 0;
                const auto& links = outgoing ? topo.out(group.node) : topo.in(group.node);
                for (const auto& [other, e] : links)
                    capacity += base_free_per_link_[e] - occ_.taken_on_link(e);
                for (int d : group.demands) {
                    if (capacity < d)
                        break;
                    capacity -= d;
                    ++fit_total;
                }
            }
            return fit_total;
        };
        return std::min(side(src_groups_[pos], true), side(dst_groups_[pos], false));
    }

    // Largest number of remaining flows (from `pos` on) whose combined minimum
    // edge consumption fits the free-edge budget.
    int suffix_bound(std::size_t pos, long long budget) const {
        const auto& prefix = suffix_need_prefix_[pos];
        int lo = 0, hi = static_cast<int>(prefix.size()) - 1;
        while (lo < hi) {
            int mid = (lo + hi + 1) / 2;
            if (prefix[mid] <= budget)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }

    // Seeds the incumbent so the search starts with a strong lower bound: the
    // lightest-load heuristic for the flexible mode, greedy first-fit over the
    // flow options for the fixed-cyclic mode.
    void warm_start() {
        const std::size_t n = model_.flows.size();
        if (model_.mode == Mode::Hfs) {
            Tecg scratch = model_.base;
            Schedule heuristic = admit_sequence(scratch, model_.flows);
            std::map<FlowId, std::size_t> index;
            for (std::size_t k = 0; k < n; ++k)
                index[model_.flows[k].id] = k;
            for (const auto& [packet, path] : heuristic.paths)
                best_paths_[index[packet.flow]].push_back(path);
            for (std::size_t k = 0; k < n; ++k)
                best_admitted_[k] = heuristic.is_admitted(model_.flows[k].id) ? 1 : 0;
            best_ = heuristic.admitted_count();
        } else {
            OccupancySet occ(model_.base);
            for (std::size_t pos = 0; pos < n; ++pos) {
                int k = order_[pos];
                for (const FlowOption& option : options_[k]) {
                    if (occ.conflicts(option.edges))
                        continue;
                    occ.take(option.edges);
                    best_admitted_[k] = 1;
                    best_paths_[k] = option.paths;
                    ++best_;
                    break;
                }
            }
        }
    }

    void record_best(int admitted) {
        best_ = admitted;
        best_admitted_ = current_admitted_;
        best_paths_ = current_paths_;
    }

    void descend(std::size_t pos, int admitted) {
        if (deadline_.hit())
            return;
        long long budget = base_free_ - occ_.taken_count();
        if (admitted + suffix_bound(pos, budget) <= best_)
            return;
        if (admitted + node_cut_bound(pos) <= best_)
            return;
        if (pos == model_.flows.size()) {
            record_best(admitted);
            return;
        }
        int k = order_[pos];
        if (need_[k] < kInfNeed) {
            if (model_.mode == Mode::Fcs) {
                for (const FlowOption& option : options_[k]) {
                    if (deadline_.hit())
                        return;
                    if (admitted + 1 + suffix_bound(pos + 1, base_free_ - occ_.taken_count()) <=
                        best_)
                        break;
                    if (occ_.conflicts(option.edges))
                        continue;
                    occ_.take(option.edges);
                    current_admitted_[k] = 1;
                    current_paths_[k] = option.paths;
                    descend(pos + 1, admitted + 1);
                    current_admitted_[k] = 0;
                    occ_.give_back(option.edges);
                }
            } else if (flow_still_open(k)) {
                assign_packets(k, 0, pos, admitted);
            }
        }
        current_admitted_[k] = 0;
        descend(pos + 1, admitted); // reject branch
    }

    // Cheap forward check before the combination search: every packet of the
    // flow still has at least one candidate compatible with the occupancy.
    bool flow_still_open(int k) const {
        for (const auto& cands : packet_candidates_[k]) {
            bool any = false;
            for (const Candidate& c : cands)
                if (!occ_.conflicts(c.edges)) {
                    any = true;
                    break;
                }
            if (!any)
                return false;
        }
        return true;
    }

    // Tries every combination of per-packet candidates for flow k (most
    // constrained packet first); each full assignment recurses into the next
    // flow. The entry bound treats flow k as admitted for free, which keeps it
    // a valid relaxation while cutting the unwind after an incumbent update.
    void assign_packets(int k, std::size_t pkt, std::size_t pos, int admitted) {
        if (deadline_.hit())
            return;
        if (admitted + 1 + suffix_bound(pos + 1, base_free_ - occ_.taken_count()) <= best_)
            return;
        if (pkt == packet_candidates_[k].size()) {
            current_admitted_[k] = 1;
            current_paths_[k].clear();
            for (const Candidate* c : scratch_[k])
                current_paths_[k].push_back(c->path);
            descend(pos + 1, admitted + 1);
            current_admitted_[k] = 0;
            return;
        }
        for (const Candidate& c : packet_candidates_[k][pkt_order_[k][pkt]]) {
            if (deadline_.hit())
                return;
            if (occ_.conflicts(c.edges))
                continue;
            occ_.take(c.edges);
            scratch_[k][pkt_order_[k][pkt]] = &c;
            assign_packets(k, pkt + 1, pos, admitted);
            occ_.give_back(c.edges);
        }
    }

    const IlpModel& model_;
    OccupancySet occ_;
    SearchDeadline deadline_;

    std::vector<std::vector<FlowOption>> options_;                        // FCS
    std::vector<std::vector<std::vector<Candidate>>> packet_candidates_; // HFS
    std::vector<std::vector<const Candidate*>> scratch_;                 // per-flow packet picks
    std::vector<long long> need_;                // min comm edges a flow must consume
    std::vector<std::vector<long long>> suffix_need_prefix_;
    std::vector<std::vector<std::size_t>> pkt_order_;
    std::vector<long long> base_free_per_link_;
    std::vector<int> packets_of_;
    struct CutGroup {
        NodeId node;
        std::vector<int> demands;
    };
    std::vector<std::vector<CutGroup>> src_groups_, dst_groups_;
    long long base_free_ = 0;
    std::vector<int> order_;
    std::vector<std::vector<SchedulePath>> current_paths_, best_paths_;
    std::vector<char> current_admitted_, best_admitted_;
    int best_ = 0;
};

} // namespace

IlpModel build_hfs_model(const Tecg& tecg, const std::vector<FlowSpec>& flows) {
    return build_model(tecg, flows, Mode::Hfs);
}

IlpModel build_fcs_model(const Tecg& tecg, const std::vector<FlowSpec>& flows) {
    return build_model(tecg, flows, Mode::Fcs);
}

ExactResult solve(const IlpModel& model, double time_limit_s) {
    if (time_limit_s <= 0)
        throw std::invalid_argument("time limit must be positive");
    return BranchAndBound(model, time_limit_s).run();
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Deliberately separate from the solver's machinery: it
// enumerates candidates as simple node paths in the static topology crossed
// with increasing slot placements, and maximizes over flow subsets directly.

namespace {

struct OraclePacket {
    std::vector<std::vector<TimedEdge>> candidates;
};

struct OracleFlow {
    std::vector<OraclePacket> packets;                    // HFS
    std::vector<std::vector<TimedEdge>> flow_candidates;  // FCS: union of shifted copies
};

constexpr std::size_t kOracleCandidateLimit = 10'000;

class OracleEnumerator {
public:
    OracleEnumerator(const Tecg& tecg, const FlowSpec& flow, const PacketWindow& window)
        : tecg_(tecg), topo_(tecg.topology()), flow_(flow), window_(window),
          span_(std::min(flow.max_delay, tecg.gamma())) {}

    std::vector<std::vector<TimedEdge>> run() {
        visited_.assign(topo_.node_count(), 0);
        visited_[flow_.source] = 1;
        node_path_.clear();
        out_.clear();
        extend(flow_.source);
        return std::move(out_);
    }

private:
    // Phase 1: simple node paths source -> destination of length <= span.
    void extend(NodeId at) {
        if (static_cast<int>(node_path_.size()) >= span_)
            return;
        for (const auto& [v, e] : topo_.out(at)) {
            if (visited_[v])
                continue;
            node_path_.push_back(e);
            if (v == flow_.destination) {
                placement_.clear();
                place(0, 0);
            } else {
                visited_[v] = 1;
                extend(v);
                visited_[v] = 0;
            }
            node_path_.pop_back();
        }
    }

    // Phase 2: strictly increasing slot offsets for the node path's links.
    void place(std::size_t hop, int from_offset) {
        if (hop == node_path_.size()) {
            out_.push_back(placement_);
            if (out_.size() > kOracleCandidateLimit)
                throw std::runtime_error("oracle scale exceeded");
            return;
        }
        int budget = span_ - static_cast<int>(node_path_.size() - hop);
        for (int t = from_offset; t <= budget; ++t) {
            Slot slot = wrap_slot(static_cast<long long>(window_.arrival) + t, tecg_.gamma());
            if (tecg_.occupied(node_path_[hop], slot))
                continue;
            placement_.push_back(TimedEdge{node_path_[hop], slot});
            place(hop + 1, t + 1);
            placement_.pop_back();
        }
    }

    const Tecg& tecg_;
    const Topology& topo_;
    const FlowSpec& flow_;
    const PacketWindow& window_;
    int span_;
    std::vector<char> visited_;
    std::vector<LinkId> node_path_;
    std::vector<TimedEdge> placement_;
    std::vector<std::vector<TimedEdge>> out_;
};

bool oracle_assign(const std::vector<const OracleFlow*>& picked, std::size_t fi, std::size_t pi,
                   std::vector<char>& occ, int gamma, Mode mode) {
    if (fi == picked.size())
        return true;
    const OracleFlow& flow = *picked[fi];

    auto try_edges = [&](const std::vector<TimedEdge>& edges, auto&& next) {
        for (const TimedEdge& e : edges)
            if (occ[static_cast<std::size_t>(e.link) * gamma + (e.slot - 1)])
                return false;
        for (const TimedEdge& e : edges)
            occ[static_cast<std::size_t>(e.link) * gamma + (e.slot - 1)] = 1;
        bool ok = next();
        for (const TimedEdge& e : edges)
            occ[static_cast<std::size_t>(e.link) * gamma + (e.slot - 1)] = 0;
        return ok;
    };

    if (mode == Mode::Fcs) {
        for (const auto& cand : flow.flow_candidates)
            if (try_edges(cand, [&] { return oracle_assign(picked, fi + 1, 0, occ, gamma, mode); }))
                return true;
        return false;
    }

    if (pi == flow.packets.size())
        return oracle_assign(picked, fi + 1, 0, occ, gamma, mode);
    for (const auto& cand : flow.packets[pi].candidates)
        if (try_edges(cand, [&] { return oracle_assign(picked, fi, pi + 1, occ, gamma, mode); }))
            return true;
    return false;
}

} // namespace

int brute_force_oracle(const Tecg& tecg, const std::vector<FlowSpec>& flows, Mode mode) {
    if (flows.size() > 4)
        throw std::runtime_error("oracle scale exceeded");
    for (const FlowSpec& flow : flows)
        validate_flow(flow, tecg.topology());

    std::vector<OracleFlow> prepared(flows.size());
    for (std::size_t k = 0; k < flows.size(); ++k) {
        const FlowSpec& flow = flows[k];
        auto windows = packet_windows(flow, tecg.hypercycle());
        OracleFlow& of = prepared[k];
        for (const PacketWindow& w : windows)
            of.packets.push_back(OraclePacket{OracleEnumerator(tecg, flow, w).run()});
        if (mode == Mode::Fcs) {
            // shift packet-1 candidates across all packets; drop self-colliding
            // or occupied expansions
            for (const auto& cand : of.packets.front().candidates) {
                std::vector<TimedEdge> all;
                bool ok = true;
                for (std::size_t p = 0; p < of.packets.size() && ok; ++p) {
                    long long shift = static_cast<long long>(p) * flow.cycle;
                    for (const TimedEdge& e : cand) {
                        TimedEdge shifted{e.link, wrap_slot(e.slot + shift, tecg.gamma())};
                        if (tecg.occupied(shifted)) {
                            ok = false;
                            break;
                        }
                        all.push_back(shifted);
                    }
                }
                if (!ok)
                    continue;
                std::vector<TimedEdge> sorted = all;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                    continue;
                of.flow_candidates.push_back(std::move(all));
            }
        }
    }

    const int n = static_cast<int>(flows.size());
    std::vector<char> occ(static_cast<std::size_t>(tecg.topology().link_count()) * tecg.gamma(), 0);
    for (const TimedEdge& e : tecg.occupied_edges())
        occ[static_cast<std::size_t>(e.link) * tecg.gamma() + (e.slot - 1)] = 1;

    for (int size = n; size >= 1; --size) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) != size)
                continue;
            std::vector<const OracleFlow*> picked;
            for (int k = 0; k < n; ++k)
                if (mask & (1u << k))
                    picked.push_back(&prepared[k]);
            if (oracle_assign(picked, 0, 0, occ, tecg.gamma(), mode))
                return size;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// LP export.

namespace {

std::string var_name(const IlpModel& model, int var) {
    const IlpVar& x = model.xvars[var];
    const Hop& hop = x.hop;
    Slot to_slot = wrap_slot(hop.slot + 1LL, model.base.gamma());
    return "x_" + std::to_string(model.flows[x.flow_idx].id) + "_" + std::to_string(x.seq) + "_" +
           std::to_string(hop.from) + "_" + std::to_string(hop.slot) + "_" + std::to_string(hop.to) +
           "_" + std::to_string(to_slot);
}

std::string chi_name(const IlpModel& model, int flow_idx) {
    return "chi_" + std::to_string(model.flows[flow_idx].id);
}

void write_sum(std::ofstream& out, const IlpModel& model, const std::vector<int>& vars,
               const char* sign) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        out << (i == 0 && *sign == '+' ? "" : " ") << (i == 0 ? (*sign == '+' ? "" : sign) : sign)
            << " " << var_name(model, vars[i]);
}

} // namespace

void export_lp(const IlpModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write LP file: " + path);

    out << "\\ " << (model.mode == Mode::Hfs ? "hfs" : "fcs") << " admission model, gamma="
        << model.base.gamma() << "\n";
    for (NodeId u = 0; u < model.base.topology().node_count(); ++u)
        out << "\\ node " << u << " = " << model.base.topology().node_name(u) << "\n";

    out << "Maximize\n obj:";
    if (model.flows.empty()) {
        out << " 0";
    } else {
        for (std::size_t k = 0; k < model.flows.size(); ++k)
            out << (k ? " + " : " ") << chi_name(model, static_cast<int>(k));
    }
    out << "\nSubject To\n";

    int row = 0;
    for (const auto& vars : model.capacity_rows) {
        out << " cap_" << row++ << ":";
        write_sum(out, model, vars, "+");
        out << " <= 1\n";
    }
    row = 0;
    for (const auto& cons : model.conservation_rows) {
        out << " cons_" << row++ << ":";
        if (cons.in.empty() && cons.out.empty()) {
            out << " 0 ";
        } else {
            write_sum(out, model, cons.in, "+");
            write_sum(out, model, cons.out, "-");
        }
        out << " = 0\n";
    }
    row = 0;
    for (const auto& vars : model.no_loop_rows) {
        out << " loop_" << row++ << ":";
        if (vars.empty())
            out << " 0";
        else
            write_sum(out, model, vars, "+");
        out << " <= 1\n";
    }
    row = 0;
    for (const auto& ind : model.indicator_rows) {
        out << " ind_" << row++ << ": " << chi_name(model, ind.flow_idx);
        write_sum(out, model, ind.outs, "-");
        out << " <= 0\n";
    }
    row = 0;
    for (const auto& per : model.periodicity_rows) {
        out << " per_" << row++ << ": " << var_name(model, per.var);
        if (per.partner >= 0)
            out << " - " << var_name(model, per.partner);
        out << " = 0\n";
    }

    out << "Binary\n";
    for (std::size_t k = 0; k < model.flows.size(); ++k)
        out << " " << chi_name(model, static_cast<int>(k)) << "\n";
    for (int v = 0; v < static_cast<int>(model.xvars.size()); ++v)
        out << " " << var_name(model, v) << "\n";
    out << "End\n";
}

} // namespace tte
