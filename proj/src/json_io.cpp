#include "supertask/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace supertask {

using nlohmann::json;

namespace {

[[noreturn]] void bad_schema(const std::string& what) {
  throw std::invalid_argument("malformed document: " + what);
}

std::uint64_t require_uint(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_unsigned()) bad_schema(std::string(key) + " must be a nonnegative integer");
  return doc[key].get<std::uint64_t>();
}

std::string require_string(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_string()) bad_schema(std::string(key) + " must be a string");
  return doc[key].get<std::string>();
}

std::vector<Ball> require_ball_array(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) bad_schema(std::string(key) + " must be an array");
  std::vector<Ball> balls;
  balls.reserve(doc[key].size());
  for (const json& item : doc[key]) {
    if (!item.is_number_unsigned()) bad_schema(std::string(key) + " must contain nonnegative integers");
    balls.push_back(item.get<Ball>());
  }
  return balls;
}

Level shallowest_atom(const EventNode& node) {
  switch (node.kind) {
    case EventNode::Kind::Contains:
    case EventNode::Kind::Equals:
      return node.level;
    case EventNode::Kind::FinalIs:
    case EventNode::Kind::FinalInTarget:
      return 1;
    default: {
      Level best = 0;
      for (const EventNode& child : node.children) {
        const Level l = shallowest_atom(child);
        if (l > 0 && (best == 0 || l < best)) best = l;
      }
      return best;
    }
  }
}

}  // namespace

json chain_to_json(const ChainPrefix& chain) {
  json doc;
  doc["added"] = std::vector<Ball>(chain.added().begin(), chain.added().end());
  return doc;
}

ChainPrefix chain_from_json(const json& doc) {
  if (!doc.is_object()) bad_schema("chain must be an object");
  return ChainPrefix(require_ball_array(doc, "added"));
}

json target_to_json(const TargetSet& target) {
  json doc;
  if (target.kind() == TargetSet::Kind::ResidueClass) {
    doc["kind"] = "residue";
    doc["mod"] = target.modulus();
    doc["res"] = target.residue_value();
  } else {
    doc["kind"] = "periodic";
    doc["prefix"] = target.prefix_bits();
    doc["block"] = target.block_bits();
  }
  return doc;
}

TargetSet target_from_json(const json& doc) {
  if (!doc.is_object()) bad_schema("target must be an object");
  const std::string kind = require_string(doc, "kind");
  if (kind == "residue") return TargetSet::residue(require_uint(doc, "mod"), require_uint(doc, "res"));
  if (kind == "periodic") return TargetSet::periodic(require_string(doc, "prefix"), require_string(doc, "block"));
  bad_schema("unknown target kind '" + kind + "'");
}

json event_node_to_json(const EventNode& node) {
  json doc;
  switch (node.kind) {
    case EventNode::Kind::And:
    case EventNode::Kind::Or: {
      doc["op"] = node.kind == EventNode::Kind::And ? "and" : "or";
      json args = json::array();
      for (const EventNode& child : node.children) args.push_back(event_node_to_json(child));
      doc["args"] = std::move(args);
      return doc;
    }
    case EventNode::Kind::Not:
      doc["op"] = "not";
      doc["arg"] = event_node_to_json(node.children.front());
      return doc;
    case EventNode::Kind::Contains:
      doc["op"] = "atom";
      doc["atom"] = "contains";
      doc["level"] = static_cast<std::uint64_t>(node.level);
      doc["ball"] = node.ball;
      return doc;
    case EventNode::Kind::Equals:
      doc["op"] = "atom";
      doc["atom"] = "equals";
      doc["level"] = static_cast<std::uint64_t>(node.level);
      doc["set"] = node.elements;
      return doc;
    case EventNode::Kind::FinalIs:
      doc["op"] = "atom";
      doc["atom"] = "final_is";
      doc["ball"] = node.ball;
      return doc;
    case EventNode::Kind::FinalInTarget:
      doc["op"] = "atom";
      doc["atom"] = "final_in_target";
      doc["target"] = target_to_json(*node.target);
      return doc;
  }
  bad_schema("unhandled event node");
}

EventNode event_node_from_json(const json& doc) {
  if (!doc.is_object()) bad_schema("event node must be an object");
  const std::string op = require_string(doc, "op");
  if (op == "and" || op == "or") {
    if (!doc.contains("args") || !doc["args"].is_array()) bad_schema("'" + op + "' needs an args array");
    std::vector<EventNode> children;
    children.reserve(doc["args"].size());
    for (const json& child : doc["args"]) children.push_back(event_node_from_json(child));
    return op == "and" ? events::all_of(std::move(children)) : events::any_of(std::move(children));
  }
  if (op == "not") {
    if (!doc.contains("arg")) bad_schema("'not' needs an arg");
    return events::negate(event_node_from_json(doc["arg"]));
  }
  if (op != "atom") bad_schema("unknown op '" + op + "'");

  const std::string atom = require_string(doc, "atom");
  if (atom == "contains")
    return events::contains(static_cast<Level>(require_uint(doc, "level")), require_uint(doc, "ball"));
  if (atom == "equals")
    return events::equals(static_cast<Level>(require_uint(doc, "level")), require_ball_array(doc, "set"));
  if (atom == "final_is") return events::final_is(require_uint(doc, "ball"));
  if (atom == "final_in_target") {
    if (!doc.contains("target")) bad_schema("final_in_target needs a target");
    return events::final_in(target_from_json(doc["target"]));
  }
  bad_schema("unknown atom '" + atom + "'");
}

json event_to_json(const EventSpec& event) {
  json doc;
  doc["level"] = static_cast<std::uint64_t>(event.level());
  doc["horizon"] = static_cast<std::uint64_t>(event.horizon());
  doc["pred"] = event_node_to_json(event.pred());
  return doc;
}

EventSpec event_from_json(const json& doc) {
  if (!doc.is_object()) bad_schema("event must be an object");
  if (doc.contains("pred")) {
    EventNode pred = event_node_from_json(doc["pred"]);
    const Level level = static_cast<Level>(require_uint(doc, "level"));
    if (doc.contains("horizon"))
      return EventSpec(level, static_cast<Level>(require_uint(doc, "horizon")), std::move(pred));
    return EventSpec::at_level(level, std::move(pred));
  }
  EventNode pred = event_node_from_json(doc);
  const Level shallow = shallowest_atom(pred);
  return EventSpec::at_level(shallow == 0 ? 1 : shallow, std::move(pred));
}

json report_to_json(const DensityReport& report) {
  json doc;
  doc["type"] = "density";
  doc["n"] = static_cast<std::uint64_t>(report.n);
  doc["hits"] = report.hits;
  doc["total"] = report.total;
  doc["value"] = rat_string(report.value);
  doc["decimal"] = rat_double(report.value);
  doc["event"] = event_to_json(report.event);
  return doc;
}

json report_to_json(const ConstraintCheck& check) {
  json doc;
  doc["type"] = "constraint";
  doc["k"] = static_cast<std::uint64_t>(check.k);
  doc["n"] = static_cast<std::uint64_t>(check.n);
  doc["verdict"] = check.pass ? "pass" : "fail";
  doc["histories_total"] = check.histories_total;
  doc["truncated"] = check.truncated;
  json lines = json::array();
  for (const HistoryLine& line : check.per_history) {
    json row;
    row["id"] = line.id;
    row["outcomes"] = line.outcomes;
    row["qualifying"] = line.qualifying_removals;
    row["in_event"] = line.in_event;
    row["ok"] = line.ok;
    lines.push_back(std::move(row));
  }
  doc["per_history"] = std::move(lines);
  doc["event"] = event_to_json(check.event);
  return doc;
}

json report_to_json(const SimulationReport& report) {
  json doc;
  doc["type"] = "simulation";
  doc["n"] = static_cast<std::uint64_t>(report.n);
  doc["trials"] = report.trials;
  doc["seed"] = report.seed;
  json counts = json::array();
  for (std::size_t i = 0; i < report.balls.size(); ++i) {
    json row;
    row["ball"] = report.balls[i];
    row["count"] = report.final_counts[i];
    row["frequency"] = report.frequency(i);
    counts.push_back(std::move(row));
  }
  doc["counts"] = std::move(counts);
  if (report.in_target) {
    doc["target_count"] = *report.in_target;
    doc["target_frequency"] = report.target_frequency();
  } else {
    doc["target_count"] = nullptr;
    doc["target_frequency"] = nullptr;
  }
  return doc;
}

json report_to_json(const CrosscheckReport& report) {
  json doc;
  doc["type"] = "crosscheck";
  doc["n"] = static_cast<std::uint64_t>(report.n);
  doc["trials"] = report.trials;
  doc["seed"] = report.seed;
  json per_ball = json::array();
  for (const CrosscheckLine& line : report.per_ball) {
    json row;
    row["ball"] = line.ball;
    row["exact"] = rat_string(line.exact);
    row["empirical"] = line.empirical;
    row["deviation"] = line.deviation;
    row["bound"] = line.bound;
    row["ok"] = line.ok;
    per_ball.push_back(std::move(row));
  }
  doc["per_ball"] = std::move(per_ball);
  doc["max_deviation"] = report.max_deviation;
  doc["pass"] = report.pass;
  return doc;
}

json report_to_json(const SequenceDiagnostics& diag) {
  json doc;
  doc["type"] = "diagnostics";
  doc["source"] = diag.source;
  doc["count"] = static_cast<std::uint64_t>(diag.count);
  doc["window_count"] = static_cast<std::uint64_t>(diag.window_count);
  doc["window"] = rat_string(diag.window_fraction);
  doc["tol"] = rat_string(diag.tolerance);
  doc["liminf"] = rat_string(diag.liminf_estimate);
  doc["limsup"] = rat_string(diag.limsup_estimate);
  doc["cesaro"] = rat_string(diag.cesaro_mean);
  doc["verdict"] = verdict_name(diag.verdict);
  doc["value"] = rat_string(diag.value);
  doc["decimal"] = rat_double(diag.value);
  return doc;
}

json report_to_json(const FiniteBoundReport& report) {
  json doc;
  doc["n"] = static_cast<std::uint64_t>(report.n);
  doc["in_chain"] = report.in_chain;
  doc["value"] = rat_string(report.value);
  doc["bound"] = rat_string(report.bound);
  doc["within"] = report.within;
  return doc;
}

std::string canonical_dump(const json& doc) { return doc.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json doc;
  in >> doc;
  return doc;
}

void save_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << canonical_dump(doc);
}

void write_trace_csv(const std::string& path, const std::vector<std::uint64_t>& counts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "k,count,density_num,density_den\n";
  for (std::size_t k = 1; k <= counts.size(); ++k) {
    const Rat d = rat_from_uint(counts[k - 1], k);
    out << k << "," << counts[k - 1] << "," << d.get_num().get_str() << ","
        << d.get_den().get_str() << "\n";
  }
}

std::vector<Rat> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "k,count,density_num,density_den")
    throw std::invalid_argument("trace file must start with 'k,count,density_num,density_den'");
  std::vector<Rat> densities;
  std::size_t expected_k = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string k_field, count_field, num_field, den_field;
    if (!std::getline(row, k_field, ',') || !std::getline(row, count_field, ',') ||
        !std::getline(row, num_field, ',') || !std::getline(row, den_field))
      throw std::invalid_argument("trace row needs four comma-separated fields");
    if (std::stoull(k_field) != expected_k)
      throw std::invalid_argument("trace rows must cover k = 1, 2, ... in order");
    const mpz_class num(num_field);
    const mpz_class den(den_field);
    Rat d(num, den);
    d.canonicalize();
    densities.push_back(std::move(d));
    ++expected_k;
  }
  if (densities.empty()) throw std::invalid_argument("trace file has no rows");
  return densities;
}

}  // namespace supertask
