#include "qembed/report.hpp"

#include <algorithm>

namespace qembed {

void Report::add(std::string tag, nlohmann::json p, bool ok, std::optional<std::string> witness) {
  checks.push_back(Check{std::move(tag), std::move(p), ok, ok ? std::nullopt : std::move(witness)});
}

void Report::absorb(const Report& other) {
  for (Check c : other.checks) {
    for (const auto& [k, v] : other.params.items())
      if (!c.params.contains(k)) c.params[k] = v;
    checks.push_back(std::move(c));
  }
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.passed; }));
}

std::size_t Report::failed() const { return checks.size() - passed(); }

nlohmann::json Report::to_json(bool with_timing) const {
  nlohmann::json j;
  j["suite"] = suite;
  j["params"] = params;
  j["checks"] = nlohmann::json::array();
  for (const Check& c : checks) {
    nlohmann::json cj{{"tag", c.tag}, {"params", c.params}, {"status", c.passed ? "pass" : "fail"}};
    if (c.witness) cj["witness"] = *c.witness;
    j["checks"].push_back(std::move(cj));
  }
  j["counts"] = {{"total", checks.size()}, {"passed", passed()}, {"failed", failed()}};
  if (with_timing && wallclock) j["wallclock"] = *wallclock;
  return j;
}

Report Report::from_json(const nlohmann::json& j) {
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.params = j.value("params", nlohmann::json::object());
  for (const auto& cj : j.at("checks")) {
    Check c;
    c.tag = cj.at("tag").get<std::string>();
    c.params = cj.value("params", nlohmann::json::object());
    c.passed = cj.at("status").get<std::string>() == "pass";
    if (cj.contains("witness")) c.witness = cj["witness"].get<std::string>();
    r.checks.push_back(std::move(c));
  }
  if (j.contains("wallclock")) r.wallclock = j["wallclock"].get<double>();
  return r;
}

}  // namespace qembed
