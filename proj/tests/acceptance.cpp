// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line with the measured numbers. Run via ctest (target `acceptance`) or
// directly: build/tests/acceptance_tests
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ttesched/analysis.hpp"
#include "ttesched/baselines.hpp"
#include "ttesched/exact.hpp"
#include "ttesched/harness.hpp"
#include "ttesched/llf.hpp"
#include "ttesched/rng.hpp"
#include "ttesched/verify.hpp"

using namespace tte;

namespace {

struct Criterion {
    std::string name;
    bool pass = true;
    std::ostringstream detail;

    explicit Criterion(std::string n) : name(std::move(n)) {}
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "  failed: " << what << "\n";
        }
        CHECK_MESSAGE(ok, what);
    }
    ~Criterion() {
        std::cout << "[" << name << "] " << (pass ? "PASS" : "FAIL") << "\n"
                  << detail.str() << std::flush;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Topology micro_topology() {
    Topology topo;
    NodeId s = topo.add_node("s"), a = topo.add_node("a"), d = topo.add_node("d");
    topo.add_duplex(s, a);
    topo.add_duplex(a, d);
    return topo;
}

std::vector<FlowSpec> micro_flows(const Topology& topo) {
    return {FlowSpec{0, topo.node_id("s"), topo.node_id("d"), 1, 2, 2},
            FlowSpec{1, topo.node_id("s"), topo.node_id("d"), 2, 3, 3}};
}

// Shared between criteria 5 and 6 (criterion 6 reuses the 42-flow timings).
struct HeuristicQualityRun {
    bool ran = false;
    double exact_wall_42 = 0.0, llf_wall_42 = 0.0;
    int exact_admitted_42 = 0, llf_admitted_42 = 0;
    std::string exact_status_42;
};
HeuristicQualityRun quality_run;

} // namespace

TEST_CASE("criterion 1: micro instance objectives") {
    Criterion c("criterion 1: micro instance, flexible 2 vs fixed-cyclic 1");
    auto t0 = std::chrono::steady_clock::now();

    Topology topo = micro_topology();
    Tecg tecg = build_tecg(topo, Hypercycle{6});
    auto flows = micro_flows(topo);

    ExactResult hfs = solve(build_hfs_model(tecg, flows), 10.0);
    ExactResult fcs = solve(build_fcs_model(tecg, flows), 10.0);
    double elapsed = seconds_since(t0);

    c.detail << "  hfs_exact=" << hfs.objective << " fcs_exact=" << fcs.objective << " in "
             << elapsed << " s\n";
    c.expect(hfs.objective == 2, "hfs_exact objective must be exactly 2");
    c.expect(hfs.status == SolveStatus::ProvenOptimal, "hfs solve must prove optimality");
    c.expect(fcs.objective == 1, "fcs_exact objective must be exactly 1");
    c.expect(fcs.status == SolveStatus::ProvenOptimal, "fcs solve must prove optimality");
    c.expect(verify_schedule(tecg, flows, hfs.schedule, Mode::Hfs).ok, "hfs schedule verifies");
    c.expect(verify_schedule(tecg, flows, fcs.schedule, Mode::Fcs).ok, "fcs schedule verifies");
    c.expect(elapsed < 1.0, "criterion must finish in under 1 s");
}

TEST_CASE("criterion 2: unbounded-gain family at n=3") {
    Criterion c("criterion 2: co-prime cycles {3,5,7} on one link");
    auto t0 = std::chrono::steady_clock::now();

    Topology topo;
    NodeId u = topo.add_node("u"), v = topo.add_node("v");
    topo.add_link(u, v);
    Tecg tecg = build_tecg(topo, Hypercycle{105});
    std::vector<FlowSpec> flows = {FlowSpec{0, u, v, 1, 3, 3}, FlowSpec{1, u, v, 1, 5, 5},
                                   FlowSpec{2, u, v, 1, 7, 7}};

    // golden value 3 is first confirmed by the independent oracle
    int oracle = brute_force_oracle(tecg, flows, Mode::Hfs);
    c.detail << "  oracle(hfs)=" << oracle << "\n";
    c.expect(oracle == 3, "brute-force oracle must confirm 3 admitted flows");

    ExactResult hfs = solve(build_hfs_model(tecg, flows), 30.0);
    ExactResult fcs = solve(build_fcs_model(tecg, flows), 30.0);
    Tecg llf_tecg = tecg;
    Schedule llf = admit_sequence(llf_tecg, flows);

    double elapsed = seconds_since(t0);
    c.detail << "  hfs_exact=" << hfs.objective << " fcs_exact=" << fcs.objective
             << " hfs_llf=" << llf.admitted_count() << " in " << elapsed << " s\n";

    c.expect(hfs.objective == 3 && hfs.status == SolveStatus::ProvenOptimal,
             "hfs_exact must prove the pinned golden value 3");
    c.expect(fcs.objective == 1 && fcs.status == SolveStatus::ProvenOptimal,
             "fcs_exact must prove exactly 1 (co-prime incompatibility)");
    c.expect(llf.admitted_count() == 3, "hfs_llf must admit all 3 flows");
    c.expect(verify_schedule(tecg, flows, llf, Mode::Hfs).ok, "llf schedule verifies");
    c.expect(verify_schedule(tecg, flows, hfs.schedule, Mode::Hfs).ok, "hfs schedule verifies");
    c.expect(verify_schedule(tecg, flows, fcs.schedule, Mode::Fcs).ok, "fcs schedule verifies");
    c.expect(elapsed < 30.0, "criterion must finish in under 30 s");
}

TEST_CASE("criterion 3: oracle equivalence sweep") {
    Criterion c("criterion 3: 50 random instances, solver == oracle");
    auto t0 = std::chrono::steady_clock::now();

    Rng rng(20240);
    int checked = 0;
    for (int round = 0; round < 50; ++round) {
        int nodes = rng.uniform_int(2, 4);
        Topology topo;
        for (int i = 0; i < nodes; ++i)
            topo.add_node("n" + std::to_string(i));
        for (int i = 0; i < nodes; ++i)
            for (int j = i + 1; j < nodes; ++j)
                if (rng.uniform01() < 0.75)
                    topo.add_duplex(i, j);
        if (topo.link_count() == 0)
            topo.add_duplex(0, 1);

        const int gamma = 12;
        const int cycle_choices[] = {2, 3, 4, 6, 12};
        int n = rng.uniform_int(1, 3);
        std::vector<FlowSpec> flows;
        for (int i = 0; i < n; ++i) {
            NodeId s = rng.uniform_int(0, nodes - 1);
            NodeId d = rng.uniform_int(0, nodes - 1);
            if (s == d)
                d = (d + 1) % nodes;
            flows.push_back(FlowSpec{static_cast<int>(flows.size()), s, d,
                                     rng.uniform_int(1, gamma), cycle_choices[rng.uniform_int(0, 4)],
                                     rng.uniform_int(1, 8)});
        }
        Tecg tecg = build_tecg(topo, Hypercycle{gamma});

        ExactResult hfs = solve(build_hfs_model(tecg, flows), 30.0);
        ExactResult fcs = solve(build_fcs_model(tecg, flows), 30.0);
        int oracle = brute_force_oracle(tecg, flows, Mode::Hfs);
        Tecg llf_tecg = tecg;
        Schedule llf = admit_sequence(llf_tecg, flows);

        c.expect(hfs.status == SolveStatus::ProvenOptimal, "hfs solve must prove optimality");
        c.expect(hfs.objective == oracle,
                 "round " + std::to_string(round) + ": solve(hfs)=" + std::to_string(hfs.objective) +
                     " oracle=" + std::to_string(oracle));
        c.expect(fcs.objective <= hfs.objective, "fcs objective must not exceed hfs");
        c.expect(llf.admitted_count() <= hfs.objective, "llf must not exceed the hfs optimum");
        c.expect(verify_schedule(tecg, flows, hfs.schedule, Mode::Hfs).ok, "hfs schedule verifies");
        c.expect(verify_schedule(tecg, flows, fcs.schedule, Mode::Fcs).ok, "fcs schedule verifies");
        c.expect(verify_schedule(tecg, flows, llf, Mode::Hfs).ok, "llf schedule verifies");
        ++checked;
    }
    double elapsed = seconds_since(t0);
    c.detail << "  " << checked << " instances in " << elapsed << " s\n";
    c.expect(checked == 50, "all 50 instances must run");
    c.expect(elapsed < 60.0, "sweep must finish in under 60 s");
}

TEST_CASE("criterion 4: solution-count power law") {
    Criterion c("criterion 4: flexible count = fixed-cyclic count ^ packets");

    // pinned diamond example
    Topology diamond;
    NodeId s = diamond.add_node("s"), a = diamond.add_node("a"), b = diamond.add_node("b"),
           d = diamond.add_node("d");
    diamond.add_duplex(s, a);
    diamond.add_duplex(s, b);
    diamond.add_duplex(a, d);
    diamond.add_duplex(b, d);
    Tecg diamond_tecg = build_tecg(diamond, Hypercycle{4});
    FlowSpec probe{0, s, d, 1, 2, 2};
    std::uint64_t fcs2 = count_solutions(diamond_tecg, probe, Mode::Fcs);
    std::uint64_t hfs4 = count_solutions(diamond_tecg, probe, Mode::Hfs);
    c.detail << "  diamond: fcs=" << fcs2 << " hfs=" << hfs4 << "\n";
    c.expect(fcs2 == 2, "diamond fixed-cyclic count must be 2");
    c.expect(hfs4 == 4, "diamond flexible count must be 4");

    // 20 seeded flows across the three builtin topologies
    int checked = 0;
    std::vector<std::pair<std::string, Topology>> topologies;
    topologies.emplace_back("afdx", builtin_topology("afdx"));
    topologies.emplace_back("ladder", builtin_topology("ladder"));
    topologies.emplace_back("er", erdos_renyi_topology(50, 0.2, 17));

    for (std::size_t t = 0; t < topologies.size(); ++t) {
        FlowGenConfig config;
        config.count = t == 2 ? 6 : 7;
        config.cycles = {2, 3};
        config.seed = 100 + static_cast<std::uint64_t>(t);
        auto flows = gen_flows(config, topologies[t].second);
        Tecg tecg = build_tecg(topologies[t].second, Hypercycle{6});
        for (const FlowSpec& f : flows) {
            std::uint64_t fcs = count_solutions(tecg, f, Mode::Fcs);
            std::uint64_t hfs = count_solutions(tecg, f, Mode::Hfs);
            std::uint64_t expect = 1;
            for (int i = 0; i < packet_count(f, tecg.hypercycle()); ++i)
                expect *= fcs;
            c.expect(hfs == expect, topologies[t].first + " flow " + std::to_string(f.id) +
                                        ": hfs count " + std::to_string(hfs) +
                                        " != fcs^packets " + std::to_string(expect));
            ++checked;
        }
    }
    c.detail << "  " << checked << " generated flows checked\n";
    c.expect(checked == 20, "exactly 20 seeded flows across the three topologies");
}

TEST_CASE("criterion 5: heuristic quality on the switched topology") {
    Criterion c("criterion 5: hfs_llf >= 0.85 x hfs_exact per size");
    auto t0 = std::chrono::steady_clock::now();

    Topology topo = builtin_topology("afdx");
    Hypercycle hc{30, 15.0};

    for (int size = 18; size <= 54; size += 6) {
        FlowGenConfig config;
        config.count = size;
        config.cycles = {2, 3, 5};
        config.seed = 42;
        auto flows = gen_flows(config, topo);

        auto llf_t0 = std::chrono::steady_clock::now();
        Tecg llf_tecg = build_tecg(topo, hc);
        Schedule llf = admit_sequence(llf_tecg, flows);
        double llf_wall = seconds_since(llf_t0);

        auto exact_t0 = std::chrono::steady_clock::now();
        Tecg tecg = build_tecg(topo, hc);
        ExactResult exact = solve(build_hfs_model(tecg, flows), 60.0);
        double exact_wall = seconds_since(exact_t0);

        bool proven = exact.status == SolveStatus::ProvenOptimal;
        c.detail << "  size " << size << ": exact=" << exact.objective
                 << (proven ? "" : " (time limit, excluded from ratio)")
                 << " llf=" << llf.admitted_count() << " exact_wall=" << exact_wall
                 << "s llf_wall=" << llf_wall << "s\n";

        c.expect(verify_schedule(tecg, flows, llf, Mode::Hfs).ok, "llf schedule verifies");
        c.expect(verify_schedule(tecg, flows, exact.schedule, Mode::Hfs).ok,
                 "exact schedule verifies");
        if (proven) {
            c.expect(llf.admitted_count() <= exact.objective, "llf cannot beat the optimum");
            c.expect(llf.admitted_count() >= 0.85 * exact.objective,
                     "size " + std::to_string(size) + ": llf " +
                         std::to_string(llf.admitted_count()) + " below 0.85 x exact " +
                         std::to_string(exact.objective));
        }
        if (size == 42) {
            quality_run.ran = true;
            quality_run.exact_wall_42 = exact_wall;
            quality_run.llf_wall_42 = llf_wall;
            quality_run.exact_admitted_42 = exact.objective;
            quality_run.llf_admitted_42 = llf.admitted_count();
            quality_run.exact_status_42 = proven ? "optimal" : "time_limit";
        }
    }
    double elapsed = seconds_since(t0);
    c.detail << "  total " << elapsed << " s\n";
    c.expect(elapsed < 600.0, "criterion must finish in under 10 min");
}

TEST_CASE("criterion 6: runtime separation at 42 flows") {
    Criterion c("criterion 6: exact wall time >= 10 x heuristic wall time");
    c.expect(quality_run.ran, "criterion 5 run must provide the 42-flow measurements");
    if (!quality_run.ran)
        return;
    double ratio = quality_run.exact_wall_42 / std::max(quality_run.llf_wall_42, 1e-9);
    c.detail << "  exact(" << quality_run.exact_status_42 << ")=" << quality_run.exact_wall_42
             << " s, llf=" << quality_run.llf_wall_42 << " s, ratio=" << ratio << "\n"
             << "  admitted: exact=" << quality_run.exact_admitted_42
             << " llf=" << quality_run.llf_admitted_42 << "\n";
    c.expect(ratio >= 10.0, "exact / heuristic wall-time ratio must be at least 10");
}

TEST_CASE("criterion 7: jitter masking reproduces the buffering example") {
    Criterion c("criterion 7: d_max 3, deliveries {4,7,10,13}");

    Topology topo = micro_topology();
    NodeId s = topo.node_id("s"), a = topo.node_id("a"), d = topo.node_id("d");
    Hypercycle hc{12};
    std::vector<FlowSpec> flows = {FlowSpec{0, s, d, 1, 3, 3}};

    // handovers at t1,t4,t7,t10; receptions at t3,t7,t10,t12
    Schedule schedule;
    schedule.admitted[0] = true;
    auto add = [&](int seq, std::vector<Hop> hops) {
        schedule.paths.emplace(PacketId{0, seq}, SchedulePath{PacketId{0, seq}, std::move(hops)});
    };
    add(1, {comm_hop(s, a, 1), comm_hop(a, d, 2)});
    add(2, {storage_hop(s, 4), comm_hop(s, a, 5), comm_hop(a, d, 6)});
    add(3, {storage_hop(s, 7), comm_hop(s, a, 8), comm_hop(a, d, 9)});
    add(4, {comm_hop(s, a, 10), comm_hop(a, d, 11)});

    Tecg tecg = build_tecg(topo, hc);
    c.expect(verify_schedule(tecg, flows, schedule, Mode::Hfs).ok, "schedule must verify clean");

    auto plans = jitter_mask(flows, schedule, hc);
    c.expect(plans.size() == 1, "one delivery plan for the admitted flow");
    if (plans.size() == 1) {
        c.detail << "  d_max=" << plans[0].max_delay_slots << " deliveries=";
        for (long long t : plans[0].deliveries)
            c.detail << " t" << t;
        c.detail << "\n";
        c.expect(plans[0].max_delay_slots == 3, "maximum experienced delay must be 3 slots");
        c.expect(plans[0].deliveries == std::vector<long long>{4, 7, 10, 13},
                 "application-layer deliveries must be t4, t7, t10, t13");
    }
}

TEST_CASE("criterion 8: gcd predicates against direct simulation") {
    Criterion c("criterion 8: collides/blocked_slots vs set simulation");
    auto t0 = std::chrono::steady_clock::now();

    Rng rng(777);
    int agree = 0;
    for (int round = 0; round < 200; ++round) {
        long long cycle_a = rng.uniform_int(1, 12), cycle_b = rng.uniform_int(1, 12);
        long long origin_a = rng.uniform_int(1, 8), origin_b = rng.uniform_int(1, 8);
        long long lcm = std::lcm(cycle_a, cycle_b);
        long long horizon = 10 * lcm;

        // membership bitmap of {origin_a + c*cycle_a} over an extended horizon
        long long extended = horizon + 2 * lcm + 16;
        std::vector<char> in_a(static_cast<std::size_t>(extended) + 1, 0);
        for (long long t = origin_a; t <= extended; t += cycle_a)
            in_a[static_cast<std::size_t>(t)] = 1;

        auto sim_collides = [&](long long start) {
            for (long long t = start; t <= extended; t += cycle_b)
                if (in_a[static_cast<std::size_t>(t)])
                    return true;
            return false;
        };

        bool predicted = collides(IndexSet{origin_a, cycle_a}, IndexSet{origin_b, cycle_b});
        bool collides_ok = predicted == sim_collides(origin_b);

        std::vector<long long> expected_blocked;
        for (long long t = origin_a; t <= horizon; ++t)
            if (sim_collides(t))
                expected_blocked.push_back(t);
        bool blocked_ok =
            blocked_slots(IndexSet{origin_a, cycle_a}, cycle_b, horizon) == expected_blocked;

        if (collides_ok && blocked_ok)
            ++agree;
        c.expect(collides_ok, "round " + std::to_string(round) + ": collides mismatch");
        c.expect(blocked_ok, "round " + std::to_string(round) + ": blocked_slots mismatch");
    }
    double elapsed = seconds_since(t0);
    c.detail << "  " << agree << "/200 pairs agree in " << elapsed << " s\n";
    c.expect(agree == 200, "100% agreement required");
    c.expect(elapsed < 5.0, "criterion must finish in under 5 s");
}

TEST_CASE("criterion 9: load-scaling trend on the random graph") {
    Criterion c("criterion 9: hfs_llf beats every baseline at heavy load");

    ExperimentConfig config;
    config.name = "random_graph_load";
    config.topology.builtin = "erdos_renyi";
    config.topology.nodes = 50;
    config.topology.prob = 0.2;
    config.topology.seed = 2;
    config.flows.count = 480;
    config.flows.cycles = {3, 4, 5};
    config.flows.cycle_rule = FlowGenConfig::CycleRule::RoundRobin;
    config.flows.seed = 2;
    config.schemes = {"hfs_llf", "iras", "bfs_s", "jras_tseg"};
    config.time_limit_s = 60.0;

    ExperimentResult result = run_experiment(config);
    int llf = -1;
    double llf_wall = 0.0;
    for (const auto& row : result.rows) {
        c.detail << "  " << row.scheme << ": admitted=" << row.flows_admitted
                 << " packets=" << row.packets_admitted << " wall=" << row.wall_ms / 1000.0
                 << " s verified=" << row.verified << "\n";
        c.expect(row.error.empty(), row.scheme + " must not error");
        c.expect(row.verified, row.scheme + " schedule must verify clean");
        if (row.scheme == "hfs_llf") {
            llf = row.flows_admitted;
            llf_wall = row.wall_ms / 1000.0;
        }
    }
    c.expect(llf >= 0, "hfs_llf row present");
    c.expect(llf_wall < 60.0, "hfs_llf must finish in under 60 s");
    for (const auto& row : result.rows)
        if (row.scheme != "hfs_llf")
            c.expect(llf > row.flows_admitted,
                     "hfs_llf (" + std::to_string(llf) + ") must admit strictly more than " +
                         row.scheme + " (" + std::to_string(row.flows_admitted) + ")");
}
