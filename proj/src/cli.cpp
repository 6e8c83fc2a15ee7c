#include "neutro/cli.hpp"

#include <algorithm>

#include "neutro/error.hpp"

namespace neutro::cli {

namespace {

[[noreturn]] void schema_error(const std::string& message, const std::string& where) {
  throw Error(ErrorKind::SchemaError, message, where);
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    schema_error("missing field \"" + key + "\"", where);
  }
  return obj.at(key);
}

const Json& array_field(const Json& obj, const std::string& key) {
  const Json& j = field(obj, key, key);
  if (!j.is_array()) schema_error("expected an array", key);
  return j;
}

std::string read_string(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error("expected a string", where);
  return j.get<std::string>();
}

std::vector<std::vector<std::string>> read_string_matrix(const Json& doc,
                                                         const std::string& key) {
  const Json& rows = array_field(doc, key);
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string at = key + "[" + std::to_string(i) + "]";
    if (!rows[i].is_array()) schema_error("expected an array", at);
    std::vector<std::string> row;
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      row.push_back(read_string(rows[i][k], at + "[" + std::to_string(k) + "]"));
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Triplet validation failures inside a document are schema errors that name
// the element; structural errors keep their own kind.
template <class F>
auto as_schema(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::SumNotOne:
      case ErrorKind::OutOfRange:
      case ErrorKind::TieViolation:
      case ErrorKind::MissingAssignment:
      case ErrorKind::InvalidArgument:
      case ErrorKind::DuplicateMember:
      case ErrorKind::DepthExceeded:
      case ErrorKind::NodeNotInTree:
        throw Error(ErrorKind::SchemaError,
                    std::string(to_string(e.kind())) + ": " + e.detail(), e.where());
      default:
        throw;
    }
  }
}

std::string require_kind(const Json& doc) {
  if (!doc.is_object()) schema_error("document must be an object", "$");
  std::string kind = read_string(field(doc, "kind", "kind"), "kind");
  if (kind != "family" && kind != "tree" && kind != "zorn") {
    schema_error("unknown kind \"" + kind + "\"", "kind");
  }
  return kind;
}

bool has_assignment(const Json& doc, const std::string& kind) {
  return doc.contains(kind == "zorn" ? "fan_triplets" : "assignment");
}

Json ref_json(const ElementRef& r) {
  return Json{{"set", r.set}, {"id", r.id}};
}

Json member_json(const MemberSet& s) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(x);
  return out;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{
      "classify",      "partition",       "check-compensation",
      "allocate",      "product-status",  "find-path",
      "enumerate-paths", "find-maximal",  "verify-report",
      "generate"};
  return names;
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError, "malformed JSON",
                "line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

RawTriplet read_triplet(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) {
    schema_error("triplet must be an array of three \"num/den\" strings", where);
  }
  RawTriplet raw;
  for (std::size_t c = 0; c < 3; ++c) {
    std::string text = read_string(j[c], where);
    try {
      raw[c] = Rational::parse(text);
    } catch (const Error& e) {
      schema_error(e.detail(), where);
    }
  }
  return raw;
}

Json write_triplet(const Triplet& t) {
  Json out = Json::array();
  for (const auto& r : t.components()) out.push_back(r.str());
  return out;
}

NeutroChoice read_family(const Json& doc) {
  auto sets = read_string_matrix(doc, "sets");
  const Json& table = array_field(doc, "assignment");
  if (table.size() != sets.size()) {
    schema_error("assignment needs one object per set", "assignment");
  }
  TripletTable triplets;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string at = "assignment[" + std::to_string(i) + "]";
    if (!table[i].is_object()) schema_error("expected an object", at);
    for (const auto& [id, value] : table[i].items()) {
      triplets[ElementRef{i, id}] = read_triplet(value, to_string(ElementRef{i, id}));
    }
  }
  return as_schema([&] { return build_choice(SetFamily(std::move(sets)), triplets); });
}

namespace {

std::size_t read_horizon(const Json& doc, std::optional<std::size_t> override_) {
  if (override_) return *override_;
  const Json& h = field(doc, "horizon", "horizon");
  if (!h.is_number_integer() || h.get<long long>() <= 0) {
    schema_error("horizon must be a positive integer", "horizon");
  }
  return h.get<std::size_t>();
}

std::vector<BitString> read_strings(const Json& doc) {
  const Json& arr = array_field(doc, "strings");
  std::vector<BitString> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = "strings[" + std::to_string(i) + "]";
    try {
      out.emplace_back(read_string(arr[i], at));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SchemaError) throw;
      schema_error(e.detail(), at);
    }
  }
  return out;
}

}  // namespace

TreeChoice read_tree(const Json& doc, std::optional<std::size_t> horizon) {
  auto strings = read_strings(doc);
  const std::size_t d = read_horizon(doc, horizon);
  const Json& table = field(doc, "assignment", "assignment");
  if (!table.is_object()) schema_error("expected an object keyed by bit-string", "assignment");
  NodeTripletTable triplets;
  for (const auto& [key, value] : table.items()) {
    const std::string at = "\"" + key + "\"";
    BitString node = [&] {
      try {
        return BitString(key);
      } catch (const Error& e) {
        schema_error(e.detail(), "assignment");
      }
    }();
    triplets[node] = read_triplet(value, at);
  }
  return as_schema([&] { return build_tree_choice(build_tree(strings, d), triplets); });
}

ZornFamily read_zorn_family(const Json& doc) {
  auto members = read_string_matrix(doc, "members");
  return as_schema([&] { return ZornFamily(members); });
}

FanTriplets read_fan_triplets(const Json& doc, const ZornFamily& p) {
  const Json& rows = array_field(doc, "fan_triplets");
  if (rows.size() != p.size()) schema_error("one row per member required", "fan_triplets");
  FanTriplets out;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const std::string at = "fan_triplets[" + std::to_string(a) + "]";
    if (!rows[a].is_array()) schema_error("expected an array", at);
    const auto fan = superset_fan(p, a).fan;
    if (rows[a].size() != fan.size()) {
      schema_error("fan has " + std::to_string(fan.size()) + " entries, row has " +
                       std::to_string(rows[a].size()),
                   at);
    }
    std::vector<RawTriplet> row;
    for (std::size_t e = 0; e < rows[a].size(); ++e) {
      row.push_back(read_triplet(rows[a][e], "P" + std::to_string(a) + " fan[" +
                                                  std::to_string(e) + "]"));
    }
    out.push_back(std::move(row));
  }
  return out;
}

MaximalReport read_report(const Json& j) {
  if (!j.is_object()) schema_error("report must be an object", "report");
  MaximalReport r;
  try {
    for (const auto& m : field(j, "maximal_indices", "report.maximal_indices")) {
      r.maximal.push_back(m.get<std::size_t>());
    }
    for (const auto& e : field(j, "successors", "report.successors")) {
      SuccessorEntry s;
      s.base = e.at("base").get<std::size_t>();
      s.successor = e.at("successor").get<std::size_t>();
      const auto prov = e.at("provenance").get<std::string>();
      if (prov == "direct") {
        s.provenance = Provenance::DirectChoice;
      } else if (prov == "compensated") {
        s.provenance = Provenance::Compensated;
      } else {
        schema_error("unknown provenance \"" + prov + "\"", "report.successors");
      }
      if (e.contains("compensator") && !e.at("compensator").is_null()) {
        const auto& c = e.at("compensator");
        s.compensator = CompensatorId{c.at("owner").get<std::size_t>(),
                                      c.at("member").get<std::size_t>()};
      }
      r.successors.push_back(s);
    }
  } catch (const Json::exception& e) {
    schema_error(e.what(), "report");
  }
  return r;
}

Json write_plan(const CompensationPlan& plan) {
  Json pairs = Json::array();
  for (const auto& p : plan.pairs) {
    pairs.push_back({{"compensated", p.compensated.id},
                     {"recipient_index", p.compensated.set},
                     {"compensator", p.compensator.id},
                     {"donor_index", p.donor}});
  }
  Json marks = Json::array();
  for (const auto& m : plan.marks) marks.push_back(ref_json(m));
  return Json{{"pairs", pairs}, {"marks", marks}};
}

Json write_trace(const PathTrace& trace) {
  Json stages = Json::array();
  for (const auto& s : trace.stages) {
    Json st{{"stage", s.stage}, {"node", s.node.str()}, {"step", std::string(to_string(s.kind))}};
    st["compensator"] = s.compensator ? Json(s.compensator->str()) : Json(nullptr);
    if (s.partner) st["pair_partner"] = s.partner->str();
    stages.push_back(std::move(st));
  }
  return Json{{"path", trace.path().str()}, {"stages", stages}};
}

Json write_report(const ZornFamily& p, const MaximalReport& r) {
  Json maximal = Json::array();
  for (auto m : r.maximal) maximal.push_back(member_json(p.member(m)));
  Json succ = Json::array();
  for (const auto& e : r.successors) {
    Json j{{"base", e.base},
           {"successor", e.successor},
           {"provenance", std::string(to_string(e.provenance))}};
    j["compensator"] = e.compensator ? Json{{"owner", e.compensator->owner},
                                            {"member", e.compensator->member}}
                                     : Json(nullptr);
    succ.push_back(std::move(j));
  }
  return Json{{"maximal", maximal},
              {"maximal_indices", r.maximal},
              {"successors", succ},
              {"passes", r.passes}};
}

// ---------------------------------------------------------------------------

Json generate_assignment(const Json& doc, const RunOptions& opts) {
  const std::string kind = require_kind(doc);
  const bool explicit_table = has_assignment(doc, kind);
  const bool flags = opts.seed.has_value() || opts.bound.has_value();
  if (explicit_table && doc.contains("rng")) {
    schema_error("document has both an assignment and an rng block", "rng");
  }
  if (explicit_table) {
    if (flags) schema_error("--seed/--bound given for a document with an explicit assignment", "rng");
    return doc;
  }
  if (!doc.contains("rng") && !flags) {
    schema_error("document needs an assignment or an rng block", "$");
  }
  std::uint64_t seed = 0;
  std::int64_t bound = 0;
  if (doc.contains("rng")) {
    const Json& rng = doc.at("rng");
    const Json& s = field(rng, "seed", "rng.seed");
    const Json& b = field(rng, "denominator_bound", "rng.denominator_bound");
    if (!s.is_number_integer()) schema_error("expected an integer", "rng.seed");
    if (!b.is_number_integer()) schema_error("expected an integer", "rng.denominator_bound");
    seed = s.get<std::uint64_t>();
    bound = b.get<std::int64_t>();
  } else if (!opts.seed || !opts.bound) {
    schema_error("--seed and --bound are both required without an rng block", "rng");
  }
  if (opts.seed) seed = *opts.seed;
  if (opts.bound) bound = *opts.bound;

  RngState state{seed};
  auto draw = [&] {
    auto sample = random_triplet(state, bound);
    state = sample.next;
    return write_triplet(sample.triplet);
  };

  Json out = doc;
  out.erase("rng");
  if (kind == "family") {
    auto sets = read_string_matrix(doc, "sets");
    Json table = Json::array();
    for (const auto& set : sets) {
      Json row = Json::object();
      for (const auto& id : set) row[id] = draw();
      table.push_back(std::move(row));
    }
    out["assignment"] = std::move(table);
  } else if (kind == "tree") {
    auto tree = as_schema([&] {
      return build_tree(read_strings(doc), read_horizon(doc, opts.horizon));
    });
    Json table = Json::object();
    for (const auto& node : tree.nodes()) table[node.str()] = draw();
    out["assignment"] = std::move(table);
  } else {
    auto p = read_zorn_family(doc);
    Json rows = Json::array();
    for (std::size_t a = 0; a < p.size(); ++a) {
      Json row = Json::array();
      for (std::size_t e = 0; e < superset_fan(p, a).fan.size(); ++e) row.push_back(draw());
      rows.push_back(std::move(row));
    }
    out["fan_triplets"] = std::move(rows);
  }
  out["provenance"] = Json{{"seed", seed}, {"denominator_bound", bound}};
  return out;
}

namespace {

Json classify_family(const NeutroChoice& f, const RunOptions& opts) {
  Json sets = Json::array();
  const auto& fam = f.family();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    Json row = Json::array();
    for (std::size_t pos = 0; pos < fam.set(i).size(); ++pos) {
      const auto& t = f.triplet(i, pos);
      Json e{{"element", fam.set(i)[pos]},
             {"triplet", write_triplet(t)},
             {"verdict", std::string(to_string(classify(t)))}};
      if (opts.threshold) {
        e["threshold_verdict"] = std::string(to_string(classify_threshold(t, *opts.threshold)));
      }
      row.push_back(std::move(e));
    }
    sets.push_back(std::move(row));
  }
  return Json{{"verdicts", sets}};
}

Json classify_tree(const TreeChoice& tc, const RunOptions& opts) {
  Json nodes = Json::array();
  for (const auto& n : tc.tree().nodes()) {
    const auto& t = tc.triplet(n);
    Json e{{"node", n.str()},
           {"triplet", write_triplet(t)},
           {"verdict", std::string(to_string(classify(t)))}};
    if (opts.threshold) {
      e["threshold_verdict"] = std::string(to_string(classify_threshold(t, *opts.threshold)));
    }
    nodes.push_back(std::move(e));
  }
  return Json{{"verdicts", nodes}, {"dead_levels", dead_levels(tc)}};
}

[[noreturn]] void not_applicable(std::string_view command, const std::string& kind) {
  schema_error("command \"" + std::string(command) + "\" does not apply to kind \"" + kind + "\"",
               "kind");
}

Json dispatch(std::string_view command, const Json& raw_doc, const RunOptions& opts,
              int& exit_code) {
  const std::string kind = require_kind(raw_doc);
  if (command == "generate") return generate_assignment(raw_doc, opts);
  const Json doc = generate_assignment(raw_doc, opts);

  if (kind == "family") {
    auto f = read_family(doc);
    if (command == "classify") return classify_family(f, opts);
    if (command == "partition") {
      Json parts = Json::array();
      for (std::size_t i = 0; i < f.family().size(); ++i) {
        auto p = partition_set(f, i);
        parts.push_back({{"set", i},
                         {"chosen", p.chosen},
                         {"not_chosen", p.not_chosen},
                         {"indeterminate", p.indeterminate}});
      }
      return Json{{"partitions", parts}};
    }
    if (command == "check-compensation") {
      auto r = check_compensation(f);
      return Json{{"holds", r.holds}, {"uncompensatable", r.uncompensatable}};
    }
    if (command == "allocate") {
      auto plan = allocate_compensators(f);
      return Json{{"plan", write_plan(plan)}, {"plan_valid", validate_plan(f, plan)}};
    }
    if (command == "product-status") {
      auto s = product_status(f);
      return Json{{"status", std::string(to_string(s.kind))}, {"witness", s.witness}};
    }
  } else if (kind == "tree") {
    auto tc = read_tree(doc, opts.horizon);
    if (command == "classify") return classify_tree(tc, opts);
    if (command == "find-path") {
      auto trace = construct_path(tc);
      auto check = validate_trace(tc, trace);
      return Json{{"trace", write_trace(trace)},
                  {"dead_levels", dead_levels(tc)},
                  {"trace_valid", check.ok}};
    }
    if (command == "enumerate-paths") {
      Json traces = Json::array();
      bool all_valid = true;
      for (const auto& t : enumerate_paths(tc, opts.count)) {
        all_valid = all_valid && validate_trace(tc, t, opts.count == 1).ok;
        traces.push_back(write_trace(t));
      }
      return Json{{"traces", traces}, {"traces_valid", all_valid}};
    }
  } else {
    auto p = read_zorn_family(doc);
    if (command == "find-maximal") {
      auto triplets = read_fan_triplets(doc, p);
      auto report = find_maximal(p, triplets);
      Json out = write_report(p, report);
      out["chain_closed"] = check_chain_closed(p);
      out["report_valid"] = verify_report(p, report);
      return out;
    }
    if (command == "verify-report") {
      if (!doc.contains("report")) schema_error("missing field \"report\"", "report");
      bool valid = verify_report(p, read_report(doc.at("report")));
      if (!valid) exit_code = kExitModuleError;
      return Json{{"valid", valid}};
    }
  }
  not_applicable(command, kind);
}

}  // namespace

RunResult run(std::string_view command, const Json& doc, const RunOptions& opts) {
  RunResult result;
  result.output = Json{{"command", std::string(command)}};
  const auto& names = commands();
  try {
    if (std::find(names.begin(), names.end(), command) == names.end()) {
      throw Error(ErrorKind::InvalidArgument, "unknown command \"" + std::string(command) + "\"");
    }
    int exit_code = 0;
    result.output["result"] = dispatch(command, doc, opts, exit_code);
    result.exit_code = exit_code;
  } catch (const Error& e) {
    const bool doc_error = e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::SchemaError;
    result.exit_code = doc_error ? kExitSchemaError : kExitModuleError;
    result.output["error"] = Json{{"kind", std::string(to_string(e.kind()))},
                                  {"message", e.detail()},
                                  {"where", e.where()}};
  }
  return result;
}

RunResult run_text(std::string_view command, std::string_view text, const RunOptions& opts) {
  try {
    return run(command, parse_document(text), opts);
  } catch (const Error& e) {
    RunResult r;
    r.exit_code = kExitSchemaError;
    r.output = Json{{"command", std::string(command)},
                    {"error", Json{{"kind", std::string(to_string(e.kind()))},
                                   {"message", e.detail()},
                                   {"where", e.where()}}}};
    return r;
  }
}

}  // namespace neutro::cli
