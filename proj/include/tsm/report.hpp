// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace tsm {

// One checked instance. Observational rows are reported but never fail a
// suite.
struct CaseRow {
  std::string params;
  std::string observed;
  std::string required;
  bool pass = true;
  bool observational = false;
};

class CheckReport {
 public:
  explicit CheckReport(std::string name) : name_(std::move(name)) {}

  void add_hard(std::string params, std::string observed, std::string required,
                bool pass) {
    cases_.push_back({std::move(params), std::move(observed), std::move(required), pass, false});
  }
  void add_observation(std::string params, std::string observed, std::string note = {}) {
    cases_.push_back({std::move(params), std::move(observed), std::move(note), true, true});
  }
  /// A grid point that was not evaluated because the tables do not reach it.
  void note_skip(std::string params) { skipped_.push_back(std::move(params)); }

  const std::string& name() const noexcept { return name_; }
  const std::vector<CaseRow>& cases() const noexcept { return cases_; }
  const std::vector<std::string>& skipped() const noexcept { return skipped_; }

  std::size_t hard_count() const;
  std::size_t failures() const;
  std::size_t observations() const;
  bool passed() const { return failures() == 0; }

  /// Appends all rows of `other`, prefixing their params with its name.
  void merge(const CheckReport& other);

  nlohmann::json to_json() const;
  std::string to_text(bool verbose = false) const;

 private:
  std::string name_;
  std::vector<CaseRow> cases_;
  std::vector<std::string> skipped_;
};

}  // namespace tsm
