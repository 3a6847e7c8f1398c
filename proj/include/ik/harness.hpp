#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ik::harness {

using Json = nlohmann::json;

struct Tolerance {
  enum class Kind { Absolute, Relative };
  Kind kind = Kind::Relative;
  double value = 1e-3;
};

struct GoldenCase {
  std::string id;
  std::string op;
  Json inputs = Json::object();
  Json expected = Json::object();
  Tolerance tol;
  std::string cite;
  std::optional<std::string> book_note;
  std::optional<int> criterion;
  std::optional<std::string> skip;  // reason; the case is reported but not run
};

/// An operation maps a JSON object of inputs to a JSON object of outputs.
using OpFn = std::function<Json(const Json& inputs)>;

/// Name -> operation for every library call the manifest can reference.
const std::vector<std::pair<std::string, OpFn>>& registry();
const OpFn* find_op(const std::string& name);

/// Parses a manifest document. Errors carry the 1-based line of JSON syntax
/// problems; unknown ops and bad tolerances name the offending case id.
std::vector<GoldenCase> parse_manifest(const std::string& text);
std::vector<GoldenCase> load_manifest(const std::string& path);

/// Manifest path: $IK_MANIFEST if set, else the path baked in at build time.
std::string default_manifest_path();

/// Directory holding sample datasets; relative "dataset"/"network" inputs resolve against it.
std::string data_dir();

enum class Status { Pass, Fail, Skip };
std::string to_string(Status s);

struct CaseResult {
  std::string id;
  Status status = Status::Pass;
  Json got;
  Json expected;
  double delta = 0.0;  // largest numeric deviation seen
  std::string message;
};

struct RunReport {
  std::vector<CaseResult> rows;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;

  int exit_code() const noexcept { return failed == 0 ? 0 : 1; }
  Json to_json() const;
  std::string to_text() const;
};

/// Compares `got` against `expected` recursively: numbers within tolerance,
/// other scalars exactly, arrays elementwise, objects key by key (keys only in
/// `got` are ignored). Returns an explanation on mismatch.
std::optional<std::string> compare(const Json& got, const Json& expected, const Tolerance& tol, double& delta);

/// Runs every case whose id starts with `filter` (all when empty). Failures
/// and exceptions become report rows; the run never aborts early.
RunReport run_exam(const std::vector<GoldenCase>& cases, const std::string& filter = "");

}  // namespace ik::harness
