#pragma once

// Pass/fail records produced by the verification suites.

#include <string>
#include <vector>

#include <json.hpp>

namespace kflag {

struct ReportEntry {
  std::string relation;
  bool ok = true;
  std::string counterexample;  // empty when ok
  std::size_t checked = 0;     // number of instances evaluated
};

class Report {
 public:
  explicit Report(std::string suite = {}, std::string root_system = {})
      : suite_(std::move(suite)), root_system_(std::move(root_system)) {}

  /// Records one relation; the first failure's witness is kept.
  void record(const std::string& relation, bool ok, const std::string& witness = {});
  void merge(const Report& other);
  /// Extra free-form findings (e.g. positivity scan rows).
  nlohmann::ordered_json& extra() { return extra_; }
  const nlohmann::ordered_json& extra() const { return extra_; }

  bool ok() const;
  const std::vector<ReportEntry>& entries() const { return entries_; }
  const std::string& suite() const { return suite_; }
  nlohmann::ordered_json to_json() const;
  /// First failing entry rendered as text, or empty.
  std::string first_failure() const;

 private:
  std::string suite_, root_system_;
  std::vector<ReportEntry> entries_;
  nlohmann::ordered_json extra_ = nlohmann::ordered_json::object();
};

}  // namespace kflag
