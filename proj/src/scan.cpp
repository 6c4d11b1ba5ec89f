#include "posmom/scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "posmom/parallel.hpp"

namespace posmom::scan {

std::vector<double> lambda_grid(double lo, double hi, double step) {
  if (!(step > 0.0))
    throw std::invalid_argument("lambda grid: step must be > 0");
  if (!(hi >= lo))
    throw std::invalid_argument("lambda grid: empty range");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + static_cast<double>(i) * step;
  return g;
}

double default_half_width(int m) { return 0.5 * std::abs(m) + 6.0; }

DensityTable scan_density(int m, double lambda_min, double lambda_max, double step,
                          const QuadratureConfig &cfg, Backend backend) {
  cfg.validate();
  if (backend == Backend::ClosedForm && !has_closed_form(m))
    throw UnsupportedError("closed-form backend is unavailable for m = " +
                           std::to_string(m));

  DensityTable t;
  t.m = m;
  t.backend = backend;
  t.cfg_fingerprint = cfg.fingerprint();
  t.lambdas = lambda_grid(lambda_min, lambda_max, step);
  const std::size_t n = t.size();
  t.alpha2.assign(n, 0.0);
  t.beta2.assign(n, 0.0);
  t.mu2.assign(n, 0.0);
  t.nu2.assign(n, 0.0);
  t.p.assign(n, 0.0);

  parallel_for(n, [&](std::size_t i) {
    const double lambda = t.lambdas[i];
    try {
      std::array<double, 4> cols;
      if (backend == Backend::ClosedForm) {
        cols = sector_densities_closed_form(m, lambda);
      } else {
        const CoefficientSet c = coefficients(m, lambda, cfg, backend);
        cols = {std::norm(c.alpha), std::norm(c.beta), std::norm(c.mu), std::norm(c.nu)};
      }
      t.alpha2[i] = cols[0];
      t.beta2[i] = cols[1];
      t.mu2[i] = cols[2];
      t.nu2[i] = cols[3];
      t.p[i] = cols[0] + cols[1] + cols[2] + cols[3];
    } catch (const std::exception &e) {
      std::ostringstream os;
      os << "scan failed at lambda = " << lambda << ": " << e.what();
      throw ScanError(lambda, os.str());
    }
  });
  return t;
}

double default_node_threshold(const DensityTable &table) {
  if (table.p.empty())
    return 0.0;
  return 1e-3 * *std::max_element(table.p.begin(), table.p.end());
}

ExtremaReport count_extrema(const std::vector<double> &lambdas,
                            const std::vector<double> &values, double node_threshold) {
  // Merge plateaus: keep one representative (the midpoint) per run of equal values.
  std::vector<double> x, y;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j + 1 < values.size() && values[j + 1] == values[i])
      ++j;
    x.push_back(0.5 * (lambdas[i] + lambdas[j]));
    y.push_back(values[i]);
    i = j + 1;
  }

  ExtremaReport r;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] > y[i + 1]) {
      ++r.n_maxima;
      r.maxima.push_back(x[i]);
    } else if (y[i] < y[i - 1] && y[i] < y[i + 1]) {
      ++r.n_minima;
      r.minima.push_back(x[i]);
      r.minimum_values.push_back(y[i]);
      if (y[i] < node_threshold)
        ++r.n_near_zero_minima;
    }
  }
  return r;
}

ExtremaReport count_extrema(const DensityTable &table, double node_threshold) {
  return count_extrema(table.lambdas, table.p, node_threshold);
}

ExtremaReport count_extrema(const DensityTable &table) {
  return count_extrema(table, default_node_threshold(table));
}

int oscillator_level(int m) {
  const int a = std::abs(m);
  if (a < 4)
    throw std::invalid_argument("oscillator comparison needs |m| >= 4");
  return a % 2 == 0 ? a / 2 - 1 : (a - 1) / 2;
}

double oscillator_scale(int m) {
  const double n = oscillator_level(m);
  return std::sqrt((static_cast<double>(m) * m + 1.0) / 8.0 / (n + 0.5));
}

std::vector<double> oscillator_density(int m, const std::vector<double> &lambdas) {
  const int n = oscillator_level(m);
  const double s = oscillator_scale(m);
  std::vector<double> h(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    h[i] = specfun::hermite_momentum_density(n, lambdas[i], s);
  return h;
}

namespace {

double trapezoid(const std::vector<double> &x, const std::vector<double> &y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

} // namespace

OscillatorComparison oscillator_comparison(int m, const DensityTable &table) {
  const std::vector<double> h = oscillator_density(m, table.lambdas);
  std::vector<double> diff(h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    diff[i] = std::abs(table.p[i] - h[i]);
  return {oscillator_level(m), oscillator_scale(m), trapezoid(table.lambdas, diff)};
}

std::vector<double> empirical_cdf(const DensityTable &table) {
  std::vector<double> cdf(table.size(), 0.0);
  for (std::size_t i = 1; i < table.size(); ++i)
    cdf[i] = cdf[i - 1] +
             0.5 * (table.lambdas[i] - table.lambdas[i - 1]) * (table.p[i] + table.p[i - 1]);
  return cdf;
}

double sup_distance(const std::vector<double> &a, const std::vector<double> &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("sup_distance: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double classical_comparison(int m, const DensityTable &table) {
  if (std::abs(m) < 10)
    throw std::invalid_argument("classical comparison needs |m| >= 10");
  std::vector<double> arcsine(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    arcsine[i] = classical_cdf(std::abs(m), table.lambdas[i]);
  return sup_distance(empirical_cdf(table), arcsine);
}

double total_probability(const DensityTable &table) {
  return trapezoid(table.lambdas, table.p);
}

} // namespace posmom::scan
