// Copyright 2026 The trajldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRAJLDP_BUDGET_H_
#define TRAJLDP_BUDGET_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace trajldp {

// Overspending the privacy budget is a program error: sequential composition
// only holds while the recorded spends stay within the total.
class BudgetOverspendError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Append-only record of every randomized access to the sensitive trajectory
// and the epsilon it consumed. One ledger per protected input.
class BudgetLedger {
 public:
  struct Entry {
    std::string label;
    double epsilon;
  };

  static constexpr double kSlack = 1e-12;

  explicit BudgetLedger(double total_epsilon) : total_(total_epsilon) {
    if (!(total_epsilon > 0.0)) {
      throw std::invalid_argument("BudgetLedger: total epsilon must be positive");
    }
  }

  void spend(std::string label, double epsilon) {
    if (!(epsilon > 0.0)) {
      throw std::invalid_argument("BudgetLedger: spend must be positive (" +
                                  label + ")");
    }
    if (spent_ + epsilon > total_ + kSlack) {
      throw BudgetOverspendError("budget overspend at \"" + label + "\": " +
                                 std::to_string(spent_ + epsilon) + " > total " +
                                 std::to_string(total_));
    }
    spent_ += epsilon;
    entries_.push_back({std::move(label), epsilon});
  }

  double total() const { return total_; }
  double spent() const { return spent_; }
  double remaining() const { return total_ - spent_; }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  double total_;
  double spent_ = 0.0;
  std::vector<Entry> entries_;
};

}  // namespace trajldp

#endif  // TRAJLDP_BUDGET_H_
