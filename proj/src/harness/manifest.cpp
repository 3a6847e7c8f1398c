#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ik/error.hpp"
#include "ik/harness.hpp"

#ifndef IK_DEFAULT_MANIFEST
#define IK_DEFAULT_MANIFEST "data/golden.json"
#endif
#ifndef IK_DATA_DIR
#define IK_DATA_DIR "data"
#endif

namespace ik::harness {
namespace {

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

Tolerance parse_tolerance(const Json& j, const std::string& id) {
  Tolerance tol;
  if (j.is_null()) return tol;
  if (!j.is_object()) throw InvalidArgument("case '" + id + "': tol must be an object");
  const auto kind = j.value("kind", std::string("rel"));
  if (kind == "rel") tol.kind = Tolerance::Kind::Relative;
  else if (kind == "abs") tol.kind = Tolerance::Kind::Absolute;
  else throw InvalidArgument("case '" + id + "': tolerance kind '" + kind + "' is not rel or abs");
  if (!j.contains("value") || !j.at("value").is_number())
    throw InvalidArgument("case '" + id + "': tolerance needs a numeric value");
  tol.value = j.at("value").get<double>();
  if (!(tol.value > 0.0)) throw InvalidArgument("case '" + id + "': tolerance must be > 0");
  return tol;
}

GoldenCase parse_case(const Json& j, std::size_t index) {
  if (!j.is_object()) throw InvalidArgument("case #" + std::to_string(index) + " is not an object");
  GoldenCase c;
  if (!j.contains("id") || !j.at("id").is_string())
    throw InvalidArgument("case #" + std::to_string(index) + " has no string id");
  c.id = j.at("id").get<std::string>();
  if (!j.contains("op") || !j.at("op").is_string()) throw InvalidArgument("case '" + c.id + "' has no op");
  c.op = j.at("op").get<std::string>();
  if (!find_op(c.op)) throw InvalidArgument("case '" + c.id + "': unknown op '" + c.op + "'");
  c.inputs = j.value("inputs", Json::object());
  c.expected = j.value("expected", Json::object());
  if (!c.inputs.is_object() || !c.expected.is_object())
    throw InvalidArgument("case '" + c.id + "': inputs and expected must be objects");
  c.tol = parse_tolerance(j.value("tol", Json()), c.id);
  c.cite = j.value("cite", std::string());
  if (j.contains("book_note")) c.book_note = j.at("book_note").get<std::string>();
  if (j.contains("criterion")) c.criterion = j.at("criterion").get<int>();
  if (j.contains("skip")) c.skip = j.at("skip").get<std::string>();
  return c;
}

}  // namespace

std::vector<GoldenCase> parse_manifest(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("manifest is not valid JSON (line " + std::to_string(line_of(text, e.byte)) + ")", e.byte);
  }
  // A bare array of cases is accepted as well as {"cases": [...]}.
  const Json* cases = &doc;
  if (doc.is_object()) {
    if (!doc.contains("cases")) throw InvalidArgument("manifest object has no 'cases' array");
    cases = &doc.at("cases");
  }
  if (!cases->is_array()) throw InvalidArgument("manifest cases must be an array");

  std::vector<GoldenCase> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < cases->size(); ++i) {
    auto c = parse_case((*cases)[i], i);
    if (!seen.insert(c.id).second) throw InvalidArgument("duplicate case id '" + c.id + "'");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<GoldenCase> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open manifest '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

std::string default_manifest_path() {
  if (const char* env = std::getenv("IK_MANIFEST"); env && *env) return env;
  return IK_DEFAULT_MANIFEST;
}

std::string data_dir() {
  if (const char* env = std::getenv("IK_DATA_DIR"); env && *env) return env;
  return IK_DATA_DIR;
}

}  // namespace ik::harness
