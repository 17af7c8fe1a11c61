#include "kflag/report.hpp"

#include <algorithm>

namespace kflag {

void Report::record(const std::string& relation, bool ok, const std::string& witness) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const ReportEntry& e) { return e.relation == relation; });
  if (it == entries_.end()) {
    entries_.push_back({relation, true, {}, 0});
    it = std::prev(entries_.end());
  }
  ++it->checked;
  if (!ok && it->ok) {
    it->ok = false;
    it->counterexample = witness;
  }
}

void Report::merge(const Report& other) {
  for (const auto& e : other.entries_) {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const ReportEntry& x) { return x.relation == e.relation; });
    if (it == entries_.end()) {
      entries_.push_back(e);
    } else {
      it->checked += e.checked;
      if (!e.ok && it->ok) {
        it->ok = false;
        it->counterexample = e.counterexample;
      }
    }
  }
  for (const auto& [k, v] : other.extra_.items()) extra_[k] = v;
}

bool Report::ok() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const ReportEntry& e) { return e.ok; });
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite_;
  j["root_system"] = root_system_;
  j["status"] = ok() ? "pass" : "fail";
  auto& arr = j["relations"] = nlohmann::ordered_json::array();
  for (const auto& e : entries_) {
    nlohmann::ordered_json r;
    r["relation"] = e.relation;
    r["status"] = e.ok ? "pass" : "fail";
    r["checked"] = e.checked;
    if (!e.ok) r["counterexample"] = e.counterexample;
    arr.push_back(std::move(r));
  }
  if (!extra_.empty()) j["details"] = extra_;
  return j;
}

std::string Report::first_failure() const {
  for (const auto& e : entries_)
    if (!e.ok) return e.relation + ": " + e.counterexample;
  return {};
}

}  // namespace kflag
