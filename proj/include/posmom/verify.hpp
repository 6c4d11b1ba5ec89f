#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "posmom/quadrature.hpp"

namespace posmom::verify {

struct CheckResult {
  std::string id;   ///< short key, e.g. "closed-form"
  std::string name; ///< one-line description
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  /// Coarser grids and a subset of checks.
  bool quick = false;
  /// Replaces the small-m sets ({0..6} and friends) where a check has one.
  std::vector<int> m_set;
  /// When set, every residual threshold is replaced by this value.
  std::optional<double> tolerance_override;
  QuadratureConfig cfg;
};

using Reporter = std::function<void(const CheckResult &)>;

/// The acceptance criteria, in order. Each entry yields exactly one result.
std::vector<CheckResult> run_acceptance(const Options &opts, const Reporter &report = {});

/// Extra invariants run by `posmom verify` after the acceptance criteria.
std::vector<CheckResult> run_invariants(const Options &opts, const Reporter &report = {});

/// "PASS|FAIL  id  measured=... threshold=...  detail".
std::string format_line(const CheckResult &r);

} // namespace posmom::verify
