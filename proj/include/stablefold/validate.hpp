#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stablefold/assembly.hpp"
#include "stablefold/braid.hpp"
#include "stablefold/morse.hpp"

namespace stablefold {

enum class CheckGroup { Structure, Theorem1, Corollary2, Labeling, Oracle };

const char* to_string(CheckGroup group) noexcept;

struct CheckResult {
  std::string name;
  CheckGroup group = CheckGroup::Structure;
  bool passed = false;
  std::string detail;

  bool operator==(const CheckResult&) const = default;
};

struct ValidationReport {
  std::string subject;   // "stable_map" or "surgered_map"
  std::vector<CheckResult> checks;
  std::optional<std::uint64_t> seed;

  // A group without checks counts as passing.
  bool group_passed(CheckGroup group) const;
  bool theorem1() const { return group_passed(CheckGroup::Theorem1); }
  bool corollary2() const { return group_passed(CheckGroup::Corollary2); }
  bool labeling() const { return group_passed(CheckGroup::Labeling); }
  bool oracle_agreement() const { return group_passed(CheckGroup::Oracle); }
  bool passed() const;
  const CheckResult* find(const std::string& name) const;

  bool operator==(const ValidationReport&) const = default;
};

// Names of the checks each report runs, in report order.
const std::vector<std::string>& theorem1_check_names();
const std::vector<std::string>& corollary2_check_names();

// Transverse crossings of two piecewise-linear height curves: sign changes
// of their height difference sampled at the union of their breakpoints.
// Touching without changing sides does not count.
int transverse_crossings(const LevelCurve& a, const LevelCurve& b);

struct CrossingTally {
  int minima = 0;   // minimum/minimum pairs
  int saddles = 0;  // saddle/saddle pairs
  int mixed = 0;    // minimum/saddle pairs; never expected

  bool operator==(const CrossingTally&) const = default;
};

CrossingTally tally_crossings(const std::vector<LevelCurve>& curves);

// II2 count by simulating the height trajectories of every sector and
// counting saddle-curve crossings. Does not use the closed formula.
int oracle_ii2(const BraidWord& word);

ValidationReport check_theorem1(const StableMapModel& model);
ValidationReport check_corollary2(const SurgeredMapModel& model);

// Fixed-width text table, one row per check plus a summary line.
std::string format_report(const ValidationReport& report);

}  // namespace stablefold
