#pragma once

// Verification reports: one Check per identity instance.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qembed {

struct Check {
  std::string tag;
  nlohmann::json params = nlohmann::json::object();
  bool passed = false;
  std::optional<std::string> witness;
};

struct Report {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Check> checks;
  std::optional<double> wallclock;

  void add(std::string tag, nlohmann::json params, bool passed, std::optional<std::string> witness = std::nullopt);
  // Appends every check of `other`; its params are folded into each check.
  void absorb(const Report& other);

  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }

  nlohmann::json to_json(bool with_timing = true) const;
  static Report from_json(const nlohmann::json& j);
};

}  // namespace qembed
