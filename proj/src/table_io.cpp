#include "posmom/table_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace posmom::io {

std::string format_number(double x) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                       std::chars_format::scientific,
                                       csv_significant_digits - 1);
  if (ec != std::errc())
    throw std::runtime_error("format_number: conversion failed");
  return std::string(buf.data(), end);
}

nlohmann::json RunManifest::to_json() const {
  return {
      {"command", command},
      {"m_values", m_values},
      {"grid", {{"min", lambda_min}, {"max", lambda_max}, {"step", step}}},
      {"backend", backend},
      {"config",
       {{"abs_tol", cfg.abs_tol},
        {"rel_tol", cfg.rel_tol},
        {"line_truncation", cfg.line_truncation},
        {"max_subdivisions", cfg.max_subdivisions},
        {"singularity_margin", cfg.singularity_margin},
        {"fingerprint", cfg.fingerprint()}}},
      {"tool_version", tool_version},
      {"wall_seconds", wall_seconds},
  };
}

void write_csv(const DensityTable &table, std::ostream &out) {
  std::string buf;
  buf.reserve(96 * (table.size() + 1));
  buf.append(csv_header).push_back('\n');
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (double v : {table.lambdas[i], table.p[i], table.alpha2[i], table.beta2[i],
                     table.mu2[i], table.nu2[i]}) {
      buf += format_number(v);
      buf.push_back(',');
    }
    buf.back() = '\n';
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

namespace {

double parse_field(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("read_csv: bad number '" + std::string(s) + "' on line " +
                             std::to_string(line));
  return v;
}

} // namespace

DensityTable read_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header)
    throw std::runtime_error("read_csv: missing or unexpected header");

  DensityTable t;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty())
      continue;
    std::array<double, 6> v{};
    std::size_t start = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const std::size_t comma = line.find(',', start);
      const bool last = k + 1 == v.size();
      if (last != (comma == std::string::npos))
        throw std::runtime_error("read_csv: expected 6 fields on line " +
                                 std::to_string(line_no));
      const std::size_t stop = last ? line.size() : comma;
      v[k] = parse_field(std::string_view(line).substr(start, stop - start), line_no);
      start = stop + 1;
    }
    t.lambdas.push_back(v[0]);
    t.p.push_back(v[1]);
    t.alpha2.push_back(v[2]);
    t.beta2.push_back(v[3]);
    t.mu2.push_back(v[4]);
    t.nu2.push_back(v[5]);
  }
  return t;
}

nlohmann::json to_json(const DensityTable &table, const RunManifest &manifest) {
  nlohmann::json manifest_json = manifest.to_json();
  manifest_json["m"] = table.m;
  manifest_json["cfg_fingerprint"] = table.cfg_fingerprint;
  return {{"manifest", manifest_json},
          {"columns",
           {{"lambda", table.lambdas},
            {"p", table.p},
            {"alpha2", table.alpha2},
            {"beta2", table.beta2},
            {"mu2", table.mu2},
            {"nu2", table.nu2}}}};
}

} // namespace posmom::io
