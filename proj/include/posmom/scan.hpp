#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "posmom/core.hpp"

namespace posmom {

/// Sector-resolved density of Phi_m on a lambda grid.
struct DensityTable {
  int m = 0;
  std::vector<double> lambdas;
  std::vector<double> alpha2, beta2, mu2, nu2;
  std::vector<double> p;
  std::string cfg_fingerprint;
  Backend backend = Backend::Quadrature;

  std::size_t size() const { return lambdas.size(); }
};

/// A scan point failed; carries the offending lambda.
class ScanError : public std::runtime_error {
public:
  ScanError(double lambda, const std::string &what)
      : std::runtime_error(what), lambda(lambda) {}
  double lambda;
};

struct ExtremaReport {
  int n_maxima = 0;
  int n_minima = 0;
  int n_near_zero_minima = 0;
  std::vector<double> maxima;
  std::vector<double> minima;
  std::vector<double> minimum_values;
};

struct OscillatorComparison {
  int n_oscillator;
  double scale;
  double l1_distance;
};

namespace scan {

/// Lambda grid lo + i * step for i = 0.. while <= hi (1e-9 step slack).
std::vector<double> lambda_grid(double lo, double hi, double step);

/// Default half-width of the scanned range: |m|/2 + 6.
double default_half_width(int m);

/// Evaluates every column on the grid in parallel. Throws ScanError for the
/// first failing lambda (lowest index).
DensityTable scan_density(int m, double lambda_min, double lambda_max, double step,
                          const QuadratureConfig &cfg = {},
                          Backend backend = Backend::Quadrature);

/// Default node threshold: 1e-3 * max(p).
double default_node_threshold(const DensityTable &table);

/// Strict interior extrema of p after merging runs of equal values.
/// Minima with p < node_threshold are counted as near-zero.
ExtremaReport count_extrema(const DensityTable &table, double node_threshold);
ExtremaReport count_extrema(const DensityTable &table);
ExtremaReport count_extrema(const std::vector<double> &lambdas,
                            const std::vector<double> &values, double node_threshold);

/// Oscillator level n = m/2 - 1 (even m) or (m-1)/2 (odd m), m >= 4.
int oscillator_level(int m);

/// Momentum scale s with (n + 1/2) s^2 = (m^2 + 1)/8.
double oscillator_scale(int m);

/// Trapezoidal int |p_m - hermite density| over the table grid.
OscillatorComparison oscillator_comparison(int m, const DensityTable &table);

/// Hermite density sampled on the table grid, for plotting and extrema.
std::vector<double> oscillator_density(int m, const std::vector<double> &lambdas);

/// Cumulative trapezoid of p on the table grid.
std::vector<double> empirical_cdf(const DensityTable &table);

/// sup_i |a_i - b_i|.
double sup_distance(const std::vector<double> &a, const std::vector<double> &b);

/// Kolmogorov distance between the empirical CDF of the table and the
/// arcsine CDF on [-m/2, m/2]. m >= 10.
double classical_comparison(int m, const DensityTable &table);

/// Trapezoidal int p dlambda.
double total_probability(const DensityTable &table);

} // namespace scan
} // namespace posmom
