// SPDX-License-Identifier: Apache-2.0
#include "tsm/report.hpp"

#include <algorithm>
#include <sstream>

namespace tsm {

std::size_t CheckReport::hard_count() const {
  return static_cast<std::size_t>(
      std::count_if(cases_.begin(), cases_.end(), [](const CaseRow& c) { return !c.observational; }));
}

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(std::count_if(
      cases_.begin(), cases_.end(), [](const CaseRow& c) { return !c.observational && !c.pass; }));
}

std::size_t CheckReport::observations() const { return cases_.size() - hard_count(); }

void CheckReport::merge(const CheckReport& other) {
  for (auto row : other.cases_) {
    row.params = other.name_ + ": " + row.params;
    cases_.push_back(std::move(row));
  }
  for (const auto& s : other.skipped_) skipped_.push_back(other.name_ + ": " + s);
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : cases_) {
    cases.push_back({{"params", c.params},
                     {"observed", c.observed},
                     {"required", c.required},
                     {"pass", c.pass},
                     {"observational", c.observational}});
  }
  return {{"name", name_},
          {"cases", std::move(cases)},
          {"skipped", skipped_},
          {"summary",
           {{"hard", hard_count()},
            {"failed", failures()},
            {"observational", observations()},
            {"skipped", skipped_.size()}}},
          {"pass", passed()}};
}

std::string CheckReport::to_text(bool verbose) const {
  std::ostringstream out;
  out << (passed() ? "PASS " : "FAIL ") << name_ << ": " << hard_count() - failures() << "/"
      << hard_count() << " hard checks passed, " << observations() << " observations, "
      << skipped_.size() << " skipped (coverage)\n";
  for (const auto& c : cases_) {
    if (!verbose && c.pass && !c.observational) continue;
    out << "  " << (c.observational ? "obs " : (c.pass ? "ok  " : "FAIL")) << " " << c.params
        << " -> " << c.observed;
    if (!c.required.empty()) out << " (" << c.required << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace tsm
