#include "ttesched/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tte::io {

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

} // namespace

json topology_to_json(const Topology& topo) {
    json nodes = json::array();
    for (NodeId u = 0; u < topo.node_count(); ++u)
        nodes.push_back(topo.node_name(u));
    json links = json::array();
    for (const auto& [u, v] : topo.links())
        links.push_back(json::array({topo.node_name(u), topo.node_name(v)}));
    return json{{"nodes", nodes}, {"links", links}};
}

Topology topology_from_json(const json& j) {
    Topology topo;
    for (const auto& name : j.at("nodes"))
        topo.add_node(name.get<std::string>());
    for (const auto& pair : j.at("links")) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::runtime_error("topology link must be a [from, to] pair");
        topo.add_link(topo.node_id(pair[0].get<std::string>()),
                      topo.node_id(pair[1].get<std::string>()));
    }
    return topo;
}

Topology read_topology_file(const std::string& path) {
    return topology_from_json(load_json_file(path));
}

void write_topology_file(const Topology& topo, const std::string& path) {
    save_text_file(path, topology_to_json(topo).dump(2) + "\n");
}

std::string flows_to_csv(const std::vector<FlowSpec>& flows, const Topology& topo) {
    std::ostringstream out;
    out << "id,src,dst,arrival,cycle,max_delay\n";
    for (const FlowSpec& f : flows)
        out << f.id << ',' << topo.node_name(f.source) << ',' << topo.node_name(f.destination) << ','
            << f.arrival << ',' << f.cycle << ',' << f.max_delay << '\n';
    return out.str();
}

std::vector<FlowSpec> flows_from_csv(std::istream& in, const Topology& topo) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty flow file");
    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(s);
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        return fields;
    };
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (split(line) != std::vector<std::string>{"id", "src", "dst", "arrival", "cycle", "max_delay"})
        throw std::runtime_error("flow file header must be id,src,dst,arrival,cycle,max_delay");

    std::vector<FlowSpec> flows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = split(line);
        if (fields.size() != 6)
            throw std::runtime_error("flow file line " + std::to_string(line_no) +
                                     ": expected 6 fields");
        FlowSpec f;
        f.id = std::stoi(fields[0]);
        f.source = topo.node_id(fields[1]);
        f.destination = topo.node_id(fields[2]);
        f.arrival = std::stoi(fields[3]);
        f.cycle = std::stoi(fields[4]);
        f.max_delay = std::stoi(fields[5]);
        validate_flow(f, topo);
        flows.push_back(f);
    }
    for (std::size_t i = 0; i < flows.size(); ++i)
        for (std::size_t k = i + 1; k < flows.size(); ++k)
            if (flows[i].id == flows[k].id)
                throw std::runtime_error("duplicate flow id " + std::to_string(flows[i].id));
    return flows;
}

std::vector<FlowSpec> read_flows_file(const std::string& path, const Topology& topo) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return flows_from_csv(in, topo);
}

void write_flows_file(const std::vector<FlowSpec>& flows, const Topology& topo,
                      const std::string& path) {
    save_text_file(path, flows_to_csv(flows, topo));
}

json occupancy_to_json(const std::vector<TimedEdge>& edges, const Topology& topo) {
    json out = json::array();
    for (const TimedEdge& e : edges) {
        const auto& [u, v] = topo.link(e.link);
        out.push_back(json{{"link", json::array({topo.node_name(u), topo.node_name(v)})},
                           {"slot", e.slot}});
    }
    return out;
}

std::vector<TimedEdge> occupancy_from_json(const json& j, const Topology& topo) {
    std::vector<TimedEdge> edges;
    for (const auto& rec : j) {
        const auto& pair = rec.at("link");
        LinkId link = topo.link_id(topo.node_id(pair[0].get<std::string>()),
                                   topo.node_id(pair[1].get<std::string>()));
        if (link < 0)
            throw std::runtime_error("occupancy references unknown link " +
                                     pair[0].get<std::string>() + "->" + pair[1].get<std::string>());
        edges.push_back(TimedEdge{link, rec.at("slot").get<Slot>()});
    }
    return edges;
}

std::vector<TimedEdge> read_occupancy_file(const std::string& path, const Topology& topo) {
    return occupancy_from_json(load_json_file(path), topo);
}

void write_occupancy_file(const Tecg& tecg, const std::string& path) {
    save_text_file(path, occupancy_to_json(tecg.occupied_edges(), tecg.topology()).dump(2) + "\n");
}

namespace {

json hops_to_json(const std::vector<Hop>& hops, const Topology& topo) {
    json out = json::array();
    for (const Hop& hop : hops)
        out.push_back(json{{"kind", hop.kind == Hop::Kind::Comm ? "comm" : "storage"},
                           {"from", topo.node_name(hop.from)},
                           {"to", topo.node_name(hop.to)},
                           {"slot", hop.slot}});
    return out;
}

std::vector<Hop> hops_from_json(const json& j, const Topology& topo) {
    std::vector<Hop> hops;
    for (const auto& h : j) {
        Hop hop;
        hop.kind = h.at("kind").get<std::string>() == "comm" ? Hop::Kind::Comm : Hop::Kind::Storage;
        hop.from = topo.node_id(h.at("from").get<std::string>());
        hop.to = topo.node_id(h.at("to").get<std::string>());
        hop.slot = h.at("slot").get<Slot>();
        hops.push_back(hop);
    }
    return hops;
}

} // namespace

json schedule_to_json(const Schedule& schedule, const Topology& topo, int gamma,
                      const std::string& status) {
    json admitted = json::array(), rejected = json::array();
    for (const auto& [id, ok] : schedule.admitted)
        (ok ? admitted : rejected).push_back(id);
    json paths = json::object();
    long long comm_hops = 0, storage_hops = 0;
    for (const auto& [packet, path] : schedule.paths) {
        paths[std::to_string(packet.flow) + ":" + std::to_string(packet.seq)] =
            hops_to_json(path.hops, topo);
        for (const Hop& hop : path.hops)
            (hop.kind == Hop::Kind::Comm ? comm_hops : storage_hops) += 1;
    }
    return json{{"gamma", gamma},
                {"objective", schedule.admitted_count()},
                {"status", status},
                {"admitted", admitted},
                {"rejected", rejected},
                {"comm_hops", comm_hops},
                {"storage_hops", storage_hops},
                {"paths", paths}};
}

Schedule schedule_from_json(const json& j, const Topology& topo) {
    Schedule schedule;
    for (const auto& id : j.at("admitted"))
        schedule.admitted[id.get<FlowId>()] = true;
    for (const auto& id : j.at("rejected"))
        schedule.admitted[id.get<FlowId>()] = false;
    for (const auto& [key, hops] : j.at("paths").items()) {
        auto colon = key.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("schedule path key must be flow:seq, got " + key);
        PacketId packet{std::stoi(key.substr(0, colon)), std::stoi(key.substr(colon + 1))};
        schedule.paths.emplace(packet, SchedulePath{packet, hops_from_json(hops, topo)});
    }
    return schedule;
}

Schedule read_schedule_file(const std::string& path, const Topology& topo) {
    return schedule_from_json(load_json_file(path), topo);
}

json report_to_json(const VerifyReport& report) {
    json violations = json::array();
    for (const Violation& v : report.violations)
        violations.push_back(json{{"rule", rule_name(v.rule)}, {"entity", v.entity},
                                  {"detail", v.detail}});
    return json{{"ok", report.ok}, {"violations", violations}};
}

json trace_record(const std::string& scheme, const FlowSpec& flow, const FlowScheduleResult& result,
                  const Topology& topo) {
    json packets = json::array();
    for (std::size_t i = 0; i < result.paths.size(); ++i)
        packets.push_back(json{{"seq", result.paths[i].packet.seq},
                               {"cost", result.costs[i]},
                               {"path", hops_to_json(result.paths[i].hops, topo)}});
    return json{{"scheme", scheme},
                {"flow", flow.id},
                {"admitted", result.admitted()},
                {"packets", packets}};
}

} // namespace tte::io
