#ifndef TTESCHED_IO_HPP
#define TTESCHED_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttesched/exact.hpp"
#include "ttesched/tecg.hpp"
#include "ttesched/verify.hpp"

// File formats:
//   topology  JSON  {"nodes": [...], "links": [["u","v"], ...]}  (directed pairs)
//   flow set  CSV   id,src,dst,arrival,cycle,max_delay
//   occupancy JSON  [{"link": ["u","v"], "slot": i}, ...]
//   schedule  JSON  {gamma, objective, status, admitted, rejected, paths}
//   admission trace: one JSON object per flow, tagged with the scheme name

namespace tte::io {

using nlohmann::json;

json topology_to_json(const Topology& topo);
Topology topology_from_json(const json& j);
Topology read_topology_file(const std::string& path);
void write_topology_file(const Topology& topo, const std::string& path);

std::string flows_to_csv(const std::vector<FlowSpec>& flows, const Topology& topo);
std::vector<FlowSpec> flows_from_csv(std::istream& in, const Topology& topo);
std::vector<FlowSpec> read_flows_file(const std::string& path, const Topology& topo);
void write_flows_file(const std::vector<FlowSpec>& flows, const Topology& topo,
                      const std::string& path);

json occupancy_to_json(const std::vector<TimedEdge>& edges, const Topology& topo);
std::vector<TimedEdge> occupancy_from_json(const json& j, const Topology& topo);
std::vector<TimedEdge> read_occupancy_file(const std::string& path, const Topology& topo);
void write_occupancy_file(const Tecg& tecg, const std::string& path);

json schedule_to_json(const Schedule& schedule, const Topology& topo, int gamma,
                      const std::string& status);
Schedule schedule_from_json(const json& j, const Topology& topo);
Schedule read_schedule_file(const std::string& path, const Topology& topo);

json report_to_json(const VerifyReport& report);

// One admission-trace line: flow id, admitted flag, per-packet cost and path.
json trace_record(const std::string& scheme, const FlowSpec& flow, const FlowScheduleResult& result,
                  const Topology& topo);

} // namespace tte::io

#endif
