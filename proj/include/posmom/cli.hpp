#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "posmom/verify.hpp"

namespace posmom::cli {

inline constexpr const char *tool_version = "1.0.0";

enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failed = 1,
  exit_usage = 2,
  exit_numerical = 3,
};

struct DensityArgs {
  int m = 0;
  std::optional<double> lambda_min;
  std::optional<double> lambda_max;
  double step = 0.01;
  std::string backend = "quadrature";
  std::string out; ///< empty writes CSV/JSON to stdout
  std::string format = "csv";
};

/// Writes a density table. A CSV written to a file gets a sidecar
/// `<out>.manifest.json`; JSON embeds the manifest.
int cmd_density(const DensityArgs &args, std::ostream &out, std::ostream &err);

/// One line per check; exit_ok iff every check passes.
int cmd_verify(const verify::Options &opts, std::ostream &out, std::ostream &err);

/// Writes figure `fig` as SVG plus one companion CSV per m
/// (`<out>.m<m>.csv`, full lambda range).
int cmd_figure(int fig, const std::string &out_path, std::ostream &out, std::ostream &err);

/// Parses `args` (without the program name) and dispatches.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace posmom::cli
