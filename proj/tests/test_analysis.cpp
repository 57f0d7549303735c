#include <doctest.h>

#include <stdexcept>

#include <set>

#include "helpers.hpp"
#include "ttesched/analysis.hpp"
#include "ttesched/rng.hpp"

using namespace tte;

namespace {

// Test-side oracle: walk the span-restricted graph hop by hop and count every
// route from the packet's start vertex to its target vertex. Independent of
// the dynamic-programming counter under test.
std::uint64_t enumerate_routes(const Tecg& tecg, const FlowSpec& flow, int seq, NodeId at, int t,
                               const SchedulePathGraph& view) {
    if (t == view.span())
        return at == view.destination() ? 1 : 0;
    std::uint64_t total = enumerate_routes(tecg, flow, seq, at, t + 1, view); // store
    for (const auto& [v, link] : tecg.topology().out(at))
        if (!tecg.occupied(link, view.slot_at(t)))
            total += enumerate_routes(tecg, flow, seq, v, t + 1, view);
    return total;
}

std::uint64_t oracle_count(const Tecg& tecg, const FlowSpec& flow, Mode mode) {
    int packets = packet_count(flow, tecg.hypercycle());
    std::uint64_t product = 1;
    for (int seq = 1; seq <= (mode == Mode::Fcs ? 1 : packets); ++seq) {
        SchedulePathGraph view(tecg, PacketId{flow.id, seq}, flow);
        product *= enumerate_routes(tecg, flow, seq, view.source(), 0, view);
    }
    return product;
}

} // namespace

TEST_CASE("collides matches the gcd divisibility rule") {
    CHECK(collides(IndexSet{1, 2}, IndexSet{2, 3}));        // co-prime cycles always collide
    CHECK_FALSE(collides(IndexSet{1, 4}, IndexSet{2, 6}));  // gcd 2 does not divide 1
    CHECK(collides(IndexSet{1, 4}, IndexSet{3, 6}));        // gcd 2 divides 2
}

TEST_CASE("collides is symmetric") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        IndexSet a{rng.uniform_int(1, 20), rng.uniform_int(1, 12)};
        IndexSet b{rng.uniform_int(1, 20), rng.uniform_int(1, 12)};
        CHECK(collides(a, b) == collides(b, a));
    }
}

TEST_CASE("blocked_slots steps by the gcd from the origin") {
    CHECK(blocked_slots(IndexSet{1, 4}, 6, 12) ==
          std::vector<long long>{1, 3, 5, 7, 9, 11});
    // co-prime cycles block every slot from the origin onwards
    CHECK(blocked_slots(IndexSet{3, 5}, 7, 8) == std::vector<long long>{3, 4, 5, 6, 7, 8});
    // a multiple cycle blocks exactly the index set itself
    CHECK(blocked_slots(IndexSet{2, 4}, 8, 15) == std::vector<long long>{2, 6, 10, 14});
}

TEST_CASE("a flow blocks at least its own slots") {
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        IndexSet a{rng.uniform_int(1, 10), rng.uniform_int(1, 10)};
        long long other = rng.uniform_int(1, 10);
        long long horizon = 60;
        auto blocked = blocked_slots(a, other, horizon);
        std::set<long long> blocked_set(blocked.begin(), blocked.end());
        for (long long s = a.origin; s <= horizon; s += a.cycle)
            CHECK(blocked_set.count(s) == 1);
    }
}

TEST_CASE("counts on the diamond: 2 fixed-cyclic, 4 flexible") {
    Topology topo = test::diamond_topology();
    Tecg tecg = build_tecg(topo, Hypercycle{4});
    FlowSpec f = test::flow(0, topo.node_id("s"), topo.node_id("d"), 1, 2, 2);
    CHECK(count_solutions(tecg, f, Mode::Fcs) == 2);
    CHECK(count_solutions(tecg, f, Mode::Hfs) == 4);
    CHECK(oracle_count(tecg, f, Mode::Fcs) == 2);
    CHECK(oracle_count(tecg, f, Mode::Hfs) == 4);
}

TEST_CASE("count modes agree for a single-packet flow") {
    Topology topo = test::diamond_topology();
    Tecg tecg = build_tecg(topo, Hypercycle{4});
    FlowSpec f = test::flow(0, topo.node_id("s"), topo.node_id("d"), 2, 4, 4);
    CHECK(count_solutions(tecg, f, Mode::Fcs) == count_solutions(tecg, f, Mode::Hfs));
}

TEST_CASE("unreachable destinations count zero in both modes") {
    Topology topo;
    topo.add_node("x");
    topo.add_node("y");
    Tecg tecg = build_tecg(topo, Hypercycle{4});
    FlowSpec f = test::flow(0, 0, 1, 1, 2, 2);
    CHECK(count_solutions(tecg, f, Mode::Fcs) == 0);
    CHECK(count_solutions(tecg, f, Mode::Hfs) == 0);
}

TEST_CASE("counting rejects overlapping lifespans") {
    Topology topo = test::diamond_topology();
    Tecg tecg = build_tecg(topo, Hypercycle{4});
    FlowSpec f = test::flow(0, topo.node_id("s"), topo.node_id("d"), 1, 2, 3);
    CHECK_THROWS_AS(count_solutions(tecg, f, Mode::Hfs), std::invalid_argument);
}

TEST_CASE("count overflow guard trips on dense instances") {
    Topology topo;
    for (int i = 0; i < 5; ++i)
        topo.add_node("k" + std::to_string(i));
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            topo.add_duplex(i, j);
    Tecg tecg = build_tecg(topo, Hypercycle{64});
    FlowSpec f = test::flow(0, 0, 4, 1, 64, 64);
    CHECK_THROWS_WITH_AS(count_solutions(tecg, f, Mode::Hfs), "count overflow guard",
                         std::runtime_error);
}

TEST_CASE("counts match the enumeration oracle and obey the power law") {
    Rng rng(99);
    for (int round = 0; round < 20; ++round) {
        Topology topo = (round % 2) ? test::diamond_topology() : test::line_topology();
        const int gamma = 6;
        const int cycles[] = {2, 3, 6};
        int cycle = cycles[rng.uniform_int(0, 2)];
        NodeId s = rng.uniform_int(0, topo.node_count() - 1);
        NodeId d = rng.uniform_int(0, topo.node_count() - 1);
        if (s == d)
            continue;
        FlowSpec f = test::flow(0, s, d, rng.uniform_int(1, gamma), cycle, cycle);
        Tecg tecg = build_tecg(topo, Hypercycle{gamma});

        std::uint64_t fcs = count_solutions(tecg, f, Mode::Fcs);
        std::uint64_t hfs = count_solutions(tecg, f, Mode::Hfs);
        CHECK(fcs == oracle_count(tecg, f, Mode::Fcs));
        CHECK(hfs == oracle_count(tecg, f, Mode::Hfs));

        // per-packet graphs are isomorphic on a free TECG with rho = cycle
        std::uint64_t expect = 1;
        for (int i = 0; i < gamma / cycle; ++i)
            expect *= fcs;
        CHECK(hfs == expect);
    }
}
