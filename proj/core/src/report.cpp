#include "hilbperv/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace hilbperv {

std::int64_t Witness::excess() const {
  if (bound && value) return *value - *bound;
  return 0;
}

namespace {

// Total order: larger excess first, then lexicographic by check and inputs.
bool ranks_before(const Witness& a, const Witness& b) {
  if (a.excess() != b.excess()) return a.excess() > b.excess();
  if (a.check != b.check) return a.check < b.check;
  if (a.inputs != b.inputs) return a.inputs < b.inputs;
  if (a.expected != b.expected) return a.expected < b.expected;
  return a.actual < b.actual;
}

}  // namespace

void CheckReport::add_violation(Witness w) {
  ++violations_;
  if (witnesses_.size() < max_witnesses) {
    witnesses_.push_back(std::move(w));
    return;
  }
  // Keep the first max_witnesses under the witness order, independent of arrival order.
  auto last = std::max_element(witnesses_.begin(), witnesses_.end(), ranks_before);
  if (ranks_before(w, *last)) *last = std::move(w);
}

void CheckReport::fail(const std::string& reason) {
  forced_failure_ = true;
  set_detail("failure", reason);
}

void CheckReport::set_detail(const std::string& key, const std::string& value) {
  for (auto& [k, v] : details_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  details_.emplace_back(key, value);
}

std::optional<std::string> CheckReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void CheckReport::merge(const CheckReport& other) {
  checked_ += other.checked_;
  forced_failure_ = forced_failure_ || other.forced_failure_;
  std::uint64_t before = violations_;
  for (const Witness& w : other.witnesses_) add_violation(w);
  violations_ = before + other.violations_;
  for (const auto& [k, v] : other.details_) {
    if (!detail(k)) set_detail(k, v);
  }
}

void CheckReport::sort_witnesses() {
  std::stable_sort(witnesses_.begin(), witnesses_.end(), ranks_before);
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os << "suite: " << suite_ << "\n";
  os << "status: " << (passed() ? "pass" : "fail") << "\n";
  os << "checked: " << checked_ << "\n";
  os << "violations: " << violations_ << "\n";
  for (const auto& [k, v] : details_) os << k << ": " << v << "\n";
  for (const Witness& w : witnesses_) {
    os << "witness: [" << w.check << "]";
    for (const auto& in : w.inputs) os << " " << in << ";";
    if (!w.expected.empty()) os << " expected " << w.expected << ";";
    if (!w.actual.empty()) os << " actual " << w.actual << ";";
    if (w.bound) os << " bound " << *w.bound << ";";
    if (w.value) os << " value " << *w.value << ";";
    os << "\n";
  }
  return os.str();
}

std::string CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite_;
  j["status"] = passed() ? "pass" : "fail";
  j["checked"] = checked_;
  j["violations"] = violations_;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  for (const auto& [k, v] : details_) details[k] = v;
  j["details"] = details;
  nlohmann::ordered_json ws = nlohmann::ordered_json::array();
  for (const Witness& w : witnesses_) {
    nlohmann::ordered_json jw;
    jw["check"] = w.check;
    jw["inputs"] = w.inputs;
    jw["expected"] = w.expected;
    jw["actual"] = w.actual;
    jw["bound"] = w.bound ? nlohmann::ordered_json(*w.bound) : nlohmann::ordered_json(nullptr);
    jw["value"] = w.value ? nlohmann::ordered_json(*w.value) : nlohmann::ordered_json(nullptr);
    ws.push_back(std::move(jw));
  }
  j["witnesses"] = ws;
  return j.dump(2) + "\n";
}

}  // namespace hilbperv
