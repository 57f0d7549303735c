#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"
#include "ttesched/model.hpp"

using namespace tte;

TEST_CASE("wrap_slot maps any index into [1, gamma]") {
    const int gamma = 7;
    for (int i = 1; i <= gamma; ++i) {
        CHECK(wrap_slot(i, gamma) == i); // idempotent on [1, gamma]
        CHECK(wrap_slot(i + gamma, gamma) == i);
        CHECK(wrap_slot(i + 3LL * gamma, gamma) == i);
    }
    CHECK(wrap_slot(gamma + 1, gamma) == 1);
}

TEST_CASE("hypercycle_of is the lcm of the cycles") {
    Topology topo = test::line_topology();
    auto flows = test::micro_flows(topo);
    CHECK(hypercycle_of(flows).gamma == 6); // cycles {2,3}

    CHECK(hypercycle_of({test::flow(0, 0, 1, 1, 5, 5)}).gamma == 5);

    std::vector<FlowSpec> three = {test::flow(0, 0, 1, 1, 3, 3), test::flow(1, 0, 1, 1, 5, 5),
                                   test::flow(2, 0, 1, 1, 7, 7)};
    CHECK(hypercycle_of(three).gamma == 105);

    CHECK_THROWS_WITH_AS(hypercycle_of({}), "no flows", std::invalid_argument);
}

TEST_CASE("packet_windows unrolls arrivals and keeps deadlines unwrapped") {
    Hypercycle hc{6};

    SUBCASE("two packets of a cycle-3 flow") {
        auto w = packet_windows(test::flow(1, 0, 1, 2, 3, 3), hc);
        REQUIRE(w.size() == 2);
        CHECK(w[0].arrival == 2);
        CHECK(w[0].deadline == 4);
        CHECK(w[1].arrival == 5);
        CHECK(w[1].deadline == 7); // crosses the hypercycle boundary, stays ordered
    }

    SUBCASE("single packet with zero slack") {
        auto w = packet_windows(test::flow(0, 0, 1, 1, 4, 1), Hypercycle{4});
        REQUIRE(w.size() == 1);
        CHECK(w[0].arrival == 1);
        CHECK(w[0].deadline == 1);
    }

    SUBCASE("arrivals wrap around the boundary") {
        auto w = packet_windows(test::flow(0, 0, 1, 5, 2, 2), hc);
        REQUIRE(w.size() == 3);
        CHECK(w[0].arrival == 5);
        CHECK(w[0].deadline == 6);
        CHECK(w[1].arrival == 1);
        CHECK(w[1].deadline == 2);
        CHECK(w[2].arrival == 3);
        CHECK(w[2].deadline == 4);
    }

    SUBCASE("cycle must divide the hypercycle") {
        CHECK_THROWS_AS(packet_windows(test::flow(0, 0, 1, 1, 4, 2), hc), std::invalid_argument);
    }

    SUBCASE("arrival beyond gamma is wrapped") {
        auto w = packet_windows(test::flow(0, 0, 1, 8, 6, 2), hc);
        REQUIRE(w.size() == 1);
        CHECK(w[0].arrival == 2);
    }
}

TEST_CASE("total packets of a flow set is the sum of gamma/cycle") {
    Topology topo = test::line_topology();
    auto flows = test::micro_flows(topo);
    Hypercycle hc = hypercycle_of(flows);
    long long total = 0;
    for (const auto& f : flows) {
        CHECK(static_cast<int>(packet_windows(f, hc).size()) == packet_count(f, hc));
        total += packet_count(f, hc);
    }
    CHECK(total == 3 + 2);
}

TEST_CASE("topology rejects self-links, duplicates and unknown names") {
    Topology topo;
    NodeId s = topo.add_node("s");
    NodeId a = topo.add_node("a");
    CHECK_THROWS_AS(topo.add_node("s"), std::invalid_argument);
    CHECK_THROWS_AS(topo.add_link(s, s), std::invalid_argument);
    topo.add_duplex(s, a);
    CHECK_THROWS_AS(topo.add_link(s, a), std::invalid_argument);
    CHECK_THROWS_AS(topo.node_id("zz"), std::invalid_argument);
    CHECK(topo.link_id(s, a) == 0);
    CHECK(topo.link_id(a, s) == 1);
    CHECK(topo.link_count() == 2);
}

TEST_CASE("flow validation") {
    Topology topo = test::line_topology();
    NodeId s = topo.node_id("s");
    CHECK_THROWS_AS(validate_flow(test::flow(0, s, s, 1, 2, 2), topo), std::invalid_argument);
    CHECK_THROWS_AS(validate_flow(test::flow(0, s, 99, 1, 2, 2), topo), std::invalid_argument);
    CHECK_THROWS_AS(validate_flow(test::flow(0, s, 1, 1, 0, 2), topo), std::invalid_argument);
    CHECK_THROWS_AS(validate_flow(test::flow(0, s, 1, 1, 2, 0), topo), std::invalid_argument);
    CHECK_THROWS_AS(validate_flow(test::flow(0, s, 1, 0, 2, 2), topo), std::invalid_argument);
    CHECK_NOTHROW(validate_flow(test::flow(0, s, 1, 1, 2, 5), topo));
}
