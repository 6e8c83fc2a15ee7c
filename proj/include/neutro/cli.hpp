#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "neutro/choice.hpp"
#include "neutro/tree.hpp"
#include "neutro/zorn.hpp"

namespace neutro::cli {

using Json = nlohmann::ordered_json;

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> bound;
  std::optional<std::size_t> horizon;
  std::size_t count = 2;
  std::optional<Rational> threshold;
};

struct RunResult {
  int exit_code = 0;
  Json output;
  std::string text() const { return output.dump(2) + "\n"; }
};

inline constexpr int kExitModuleError = 1;
inline constexpr int kExitSchemaError = 2;

const std::vector<std::string>& commands();

/// Parses JSON text; throws ParseError with a line/column address.
Json parse_document(std::string_view text);

/// Replaces an rng block (or flag-supplied seed/bound) with an explicit
/// assignment filled in canonical element order. Documents that already carry
/// an assignment are returned unchanged.
Json generate_assignment(const Json& doc, const RunOptions& opts = {});

/// Dispatches `command` on a parsed document. Never throws for document or
/// module errors; those become a structured diagnostic and a nonzero exit.
RunResult run(std::string_view command, const Json& doc, const RunOptions& opts = {});
RunResult run_text(std::string_view command, std::string_view text,
                   const RunOptions& opts = {});

// Schema readers and writers, shared with the Python bindings.
RawTriplet read_triplet(const Json& j, const std::string& field);
Json write_triplet(const Triplet& t);
NeutroChoice read_family(const Json& doc);
TreeChoice read_tree(const Json& doc, std::optional<std::size_t> horizon = {});
ZornFamily read_zorn_family(const Json& doc);
FanTriplets read_fan_triplets(const Json& doc, const ZornFamily& p);
MaximalReport read_report(const Json& j);

Json write_plan(const CompensationPlan& plan);
Json write_trace(const PathTrace& trace);
Json write_report(const ZornFamily& p, const MaximalReport& r);

}  // namespace neutro::cli
