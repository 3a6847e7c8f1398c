#include <algorithm>
#include <cmath>
#include <sstream>
#include <typeinfo>

#include "ik/error.hpp"
#include "ik/format.hpp"
#include "ik/harness.hpp"

namespace ik::harness {
namespace {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  return "Error";
}

std::optional<std::string> compare_at(const Json& got, const Json& expected, const Tolerance& tol, double& delta,
                                      const std::string& path) {
  const std::string where = path.empty() ? "value" : path;
  if (expected.is_number()) {
    if (!got.is_number()) return where + ": expected a number, got " + got.dump();
    const double g = got.get<double>();
    const double e = expected.get<double>();
    if (!std::isfinite(g)) return where + ": got non-finite " + format_number(g);
    double dev = std::abs(g - e);
    if (tol.kind == Tolerance::Kind::Relative && e != 0.0) dev /= std::abs(e);
    delta = std::max(delta, dev);
    if (dev > tol.value)
      return where + ": got " + format_number(g) + ", expected " + format_number(e) + " (deviation " +
             format_number(dev) + ")";
    return std::nullopt;
  }
  if (expected.is_array()) {
    if (!got.is_array()) return where + ": expected an array, got " + got.dump();
    if (got.size() != expected.size())
      return where + ": expected " + std::to_string(expected.size()) + " entries, got " + std::to_string(got.size());
    std::optional<std::string> first;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      auto m = compare_at(got[i], expected[i], tol, delta, where + "[" + std::to_string(i) + "]");
      if (m && !first) first = m;
    }
    return first;
  }
  if (expected.is_object()) {
    if (!got.is_object()) return where + ": expected an object, got " + got.dump();
    std::optional<std::string> first;
    for (const auto& [key, value] : expected.items()) {
      const std::string sub = path.empty() ? key : path + "." + key;
      if (!got.contains(key)) {
        if (!first) first = sub + ": missing from result";
        continue;
      }
      auto m = compare_at(got.at(key), value, tol, delta, sub);
      if (m && !first) first = m;
    }
    return first;
  }
  if (got != expected) return where + ": got " + got.dump() + ", expected " + expected.dump();
  return std::nullopt;
}

CaseResult run_case(const GoldenCase& c) {
  CaseResult row;
  row.id = c.id;
  row.expected = c.expected;
  if (c.skip) {
    row.status = Status::Skip;
    row.message = *c.skip;
    return row;
  }
  const OpFn* fn = find_op(c.op);
  try {
    row.got = (*fn)(c.inputs);
  } catch (const std::exception& e) {
    row.got = Json{{"error", error_kind(e)}, {"message", e.what()}};
  }
  // A case expecting an error only checks the error kind.
  Json expected = c.expected;
  if (expected.contains("error") && row.got.contains("message")) expected = Json{{"error", expected.at("error")}};
  if (auto m = compare(row.got, expected, c.tol, row.delta)) {
    row.status = Status::Fail;
    row.message = *m;
  }
  return row;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "unknown";
}

std::optional<std::string> compare(const Json& got, const Json& expected, const Tolerance& tol, double& delta) {
  return compare_at(got, expected, tol, delta, "");
}

RunReport run_exam(const std::vector<GoldenCase>& cases, const std::string& filter) {
  RunReport report;
  for (const auto& c : cases) {
    if (!filter.empty() && c.id.rfind(filter, 0) != 0) continue;
    report.rows.push_back(run_case(c));
    switch (report.rows.back().status) {
      case Status::Pass: ++report.passed; break;
      case Status::Fail: ++report.failed; break;
      case Status::Skip: ++report.skipped; break;
    }
  }
  return report;
}

Json RunReport::to_json() const {
  Json rows_json = Json::array();
  for (const auto& r : rows) {
    Json j{{"id", r.id}, {"status", to_string(r.status)}, {"got", r.got}, {"expected", r.expected},
           {"delta", r.delta}};
    if (!r.message.empty()) j["message"] = r.message;
    rows_json.push_back(std::move(j));
  }
  return Json{{"cases", rows_json},
              {"summary", {{"total", rows.size()}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}}}};
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << (r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "SKIP") << "  " << r.id;
    if (r.status == Status::Pass) os << "  (delta " << format_number(r.delta) << ")";
    if (!r.message.empty()) os << "  " << r.message;
    os << '\n';
  }
  os << rows.size() << " cases: " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  return os.str();
}

}  // namespace ik::harness
