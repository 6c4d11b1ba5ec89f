#include "posmom/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "posmom/core.hpp"
#include "posmom/figure.hpp"
#include "posmom/scan.hpp"
#include "posmom/table_io.hpp"

namespace posmom::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string join_command(const std::vector<std::string> &args) {
  std::string s = "posmom";
  for (const auto &a : args)
    s += " " + a;
  return s;
}

bool write_file(const std::string &path, const std::string &content, std::ostream &err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot open " << path << " for writing\n";
    return false;
  }
  f << content;
  f.close();
  if (!f) {
    err << "error: write to " << path << " failed\n";
    return false;
  }
  return true;
}

std::string csv_text(const DensityTable &t) {
  std::ostringstream os;
  io::write_csv(t, os);
  return os.str();
}

// Maps library exceptions raised during a computation onto exit codes.
template <class F>
int guarded(std::ostream &err, F &&body) {
  try {
    return body();
  } catch (const ScanError &e) {
    err << "numerical failure at lambda=" << io::format_number(e.lambda) << ": " << e.what()
        << "\n";
    return exit_numerical;
  } catch (const UnsupportedError &e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DomainError &e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception &e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
}

std::string command_line_ = "posmom";

} // namespace

int cmd_density(const DensityArgs &args, std::ostream &out, std::ostream &err) {
  return guarded(err, [&]() -> int {
    Backend backend;
    try {
      backend = parse_backend(args.backend);
    } catch (const std::exception &e) {
      err << "error: " << e.what() << "\n";
      return exit_usage;
    }
    if (args.format != "csv" && args.format != "json") {
      err << "error: --format must be csv or json\n";
      return exit_usage;
    }
    if (backend == Backend::ClosedForm && !has_closed_form(args.m)) {
      err << "error: no closed form for m=" << args.m << " (available: 0, +-1, +-3, +-5)\n";
      return exit_usage;
    }
    const double w = scan::default_half_width(args.m);
    const double lo = args.lambda_min.value_or(-w);
    const double hi = args.lambda_max.value_or(w);
    if (!(args.step > 0.0) || !(hi >= lo)) {
      err << "error: need --step > 0 and --max >= --min\n";
      return exit_usage;
    }

    QuadratureConfig cfg;
    const auto t0 = Clock::now();
    const DensityTable table = scan::scan_density(args.m, lo, hi, args.step, cfg, backend);
    io::RunManifest manifest{command_line_, {args.m}, lo, hi, args.step,
                             std::string(backend_name(backend)), cfg, tool_version,
                             std::chrono::duration<double>(Clock::now() - t0).count()};

    std::string body;
    if (args.format == "csv")
      body = csv_text(table);
    else
      body = io::to_json(table, manifest).dump(2) + "\n";

    if (args.out.empty()) {
      out << body;
      return exit_ok;
    }
    if (!write_file(args.out, body, err))
      return exit_numerical;
    if (args.format == "csv" &&
        !write_file(args.out + ".manifest.json", manifest.to_json().dump(2) + "\n", err))
      return exit_numerical;
    return exit_ok;
  });
}

int cmd_verify(const verify::Options &opts, std::ostream &out, std::ostream &err) {
  try {
    opts.cfg.validate();
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  bool all = true;
  auto report = [&](const verify::CheckResult &r) {
    out << verify::format_line(r) << std::endl;
    all = all && r.passed;
  };
  verify::run_acceptance(opts, report);
  verify::run_invariants(opts, report);
  out << (all ? "ALL PASS" : "SOME CHECKS FAILED") << "\n";
  return all ? exit_ok : exit_verification_failed;
}

int cmd_figure(int fig, const std::string &out_path, std::ostream &out, std::ostream &err) {
  std::vector<int> ms;
  try {
    ms = figure::figure_m_values(fig);
  } catch (const std::out_of_range &e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  if (out_path.empty()) {
    err << "error: --out is required\n";
    return exit_usage;
  }
  return guarded(err, [&]() -> int {
    const QuadratureConfig cfg;
    const auto t0 = Clock::now();
    const figure::FigureData data = figure::build_figure(fig, cfg);
    if (!write_file(out_path, figure::render_svg(data.plot), err))
      return exit_numerical;
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    for (const DensityTable &t : data.tables) {
      const std::string path = out_path + ".m" + std::to_string(t.m) + ".csv";
      if (!write_file(path, csv_text(t), err))
        return exit_numerical;
      io::RunManifest manifest{command_line_, {t.m}, t.lambdas.front(), t.lambdas.back(),
                               t.lambdas.size() > 1 ? t.lambdas[1] - t.lambdas[0] : 0.0,
                               std::string(backend_name(t.backend)), cfg, tool_version,
                               seconds};
      if (!write_file(path + ".manifest.json", manifest.to_json().dump(2) + "\n", err))
        return exit_numerical;
    }
    out << "wrote " << out_path << " (" << data.plot.series.size() << " curves)\n";
    return exit_ok;
  });
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  command_line_ = join_command(args);

  CLI::App app{"Spectral distribution of the posmom operator on the circle", "posmom"};
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1);

  DensityArgs dargs;
  auto *density = app.add_subcommand("density", "tabulate p_m(lambda) and sector weights");
  density->add_option("--m", dargs.m, "angular momentum quantum number")->required();
  density->add_option("--min", dargs.lambda_min, "lower lambda (default -(|m|/2+6))");
  density->add_option("--max", dargs.lambda_max, "upper lambda (default |m|/2+6)");
  density->add_option("--step", dargs.step, "grid spacing")->capture_default_str();
  density->add_option("--backend", dargs.backend, "quadrature|hypergeometric|closed-form")
      ->check(CLI::IsMember({"quadrature", "hypergeometric", "closed-form"}))
      ->capture_default_str();
  density->add_option("--out", dargs.out, "output path (default stdout)");
  density->add_option("--format", dargs.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  verify::Options vopts;
  double override_value = 0.0;
  auto *verify_cmd = app.add_subcommand("verify", "run the acceptance checks and invariants");
  verify_cmd->add_flag("--quick", vopts.quick, "reduced grids and a subset of checks");
  verify_cmd->add_option("--m-set", vopts.m_set, "m values for the small-m checks")
      ->delimiter(',');
  auto *override_opt = verify_cmd->add_option("--tolerance-override", override_value,
                                              "replace every residual threshold");

  int fig = 0;
  std::string fig_out;
  auto *figure_cmd = app.add_subcommand("figure", "render a figure as SVG plus CSV data");
  figure_cmd->add_option("--fig", fig, "figure index 1..6")->required();
  figure_cmd->add_option("--out", fig_out, "SVG output path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForVersion &) {
    out << tool_version << "\n";
    return exit_ok;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  if (density->parsed())
    return cmd_density(dargs, out, err);
  if (verify_cmd->parsed()) {
    if (*override_opt)
      vopts.tolerance_override = override_value;
    return cmd_verify(vopts, out, err);
  }
  return cmd_figure(fig, fig_out, out, err);
}

} // namespace posmom::cli
