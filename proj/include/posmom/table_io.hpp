#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "posmom/scan.hpp"
#include "json.hpp"

namespace posmom::io {

inline constexpr std::string_view csv_header = "lambda,p,alpha2,beta2,mu2,nu2";
inline constexpr int csv_significant_digits = 12;

/// Locale-independent scientific notation with 12 significant digits.
std::string format_number(double x);

/// Provenance of an emitted data file.
struct RunManifest {
  std::string command;
  std::vector<int> m_values;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double step = 0.0;
  std::string backend;
  QuadratureConfig cfg;
  std::string tool_version;
  double wall_seconds = 0.0;

  nlohmann::json to_json() const;
};

/// Header plus one LF-terminated row per lambda.
void write_csv(const DensityTable &table, std::ostream &out);

/// Parses what write_csv emits. Throws std::runtime_error on malformed input.
DensityTable read_csv(std::istream &in);

/// {"manifest": {...}, "columns": {"lambda": [...], "p": [...], ...}}
nlohmann::json to_json(const DensityTable &table, const RunManifest &manifest);

} // namespace posmom::io
