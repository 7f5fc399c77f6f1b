#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "supertask/chain.hpp"
#include "supertask/convergence.hpp"
#include "supertask/enumerate.hpp"
#include "supertask/event.hpp"
#include "supertask/simulate.hpp"
#include "supertask/target_set.hpp"

namespace supertask {

// Wire formats. Exact values travel as "num/den" strings in lowest terms;
// plain doubles appear only in sampled or diagnostic fields.
//
//   chain:   {"added":[1,2,3]}
//   target:  {"kind":"residue","mod":2,"res":0}
//            {"kind":"periodic","prefix":"0110","block":"10"}
//   event:   {"level":1,"horizon":3,"pred":<node>} or a bare <node>, where
//            <node> is one of
//              {"op":"and","args":[...]}   {"op":"or","args":[...]}
//              {"op":"not","arg":<node>}
//              {"op":"atom","atom":"contains","level":2,"ball":3}
//              {"op":"atom","atom":"equals","level":2,"set":[1,2]}
//              {"op":"atom","atom":"final_is","ball":1}
//              {"op":"atom","atom":"final_in_target","target":<target>}

nlohmann::json chain_to_json(const ChainPrefix& chain);
ChainPrefix chain_from_json(const nlohmann::json& doc);

nlohmann::json target_to_json(const TargetSet& target);
TargetSet target_from_json(const nlohmann::json& doc);

nlohmann::json event_node_to_json(const EventNode& node);
EventNode event_node_from_json(const nlohmann::json& doc);

nlohmann::json event_to_json(const EventSpec& event);
// Accepts the wrapped form or a bare predicate node (level then defaults to
// the shallowest atom level, horizon to the deepest).
EventSpec event_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const DensityReport& report);
nlohmann::json report_to_json(const ConstraintCheck& check);
nlohmann::json report_to_json(const SimulationReport& report);
nlohmann::json report_to_json(const CrosscheckReport& report);
nlohmann::json report_to_json(const SequenceDiagnostics& diag);
nlohmann::json report_to_json(const FiniteBoundReport& report);

// Canonical rendering used for every file this project writes: two-space
// indent, keys sorted, trailing newline. Parsing a written file and dumping
// it again reproduces the bytes.
std::string canonical_dump(const nlohmann::json& doc);
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& doc);

// trace.csv: header "k,count,density_num,density_den", one row per level;
// count is the running number of target elements in the chain.
void write_trace_csv(const std::string& path, const std::vector<std::uint64_t>& counts);
std::vector<Rat> read_trace_csv(const std::string& path);

}  // namespace supertask
