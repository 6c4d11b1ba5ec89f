#include "posmom/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace posmom::specfun {

namespace {

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> stirling_coeffs = {
    1.0 / 12.0,          -1.0 / 360.0,      1.0 / 1260.0,
    -1.0 / 1680.0,       1.0 / 1188.0,      -691.0 / 360360.0,
    1.0 / 156.0,         -3617.0 / 122400.0, 43867.0 / 244188.0,
    -174611.0 / 125400.0};

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

Complex stirling(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double c : stirling_coeffs) {
    series += c * power;
    power *= inv2;
  }
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return (z - 0.5) * std::log(z) - z + half_log_two_pi + series;
}

} // namespace

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw PoleError("log_gamma: pole at non-positive integer " +
                    std::to_string(z.real()));
  if (z.imag() == 0.0 && z.real() > 0.0)
    return {std::lgamma(z.real()), 0.0};

  // Shift into the region where the asymptotic series is accurate to
  // double precision.
  Complex shift = 0.0;
  while (z.real() < 10.0 || std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex hyp2f1_at_minus_one(Complex a, Complex b, Complex c, double tol,
                            int max_terms) {
  if (is_nonpositive_integer(c))
    throw PoleError("hyp2f1: c is a non-positive integer");

  const Complex bp = c - b;
  Complex term = 1.0;
  Complex sum = 1.0;
  int quiet = 0;
  for (int n = 0; n < max_terms; ++n) {
    const double dn = n;
    term *= (a + dn) * (bp + dn) / ((c + dn) * (dn + 1.0)) * 0.5;
    sum += term;
    if (term == 0.0)
      return std::exp(-a * std::numbers::ln2) * sum;
    // The tail is only bounded once the term ratio has dropped below one.
    const double ratio = std::abs(a + dn + 1.0) * std::abs(bp + dn + 1.0) /
                         (std::abs(c + dn + 1.0) * (dn + 2.0) * 2.0);
    if (ratio < 1.0 && std::abs(term) < tol * std::abs(sum)) {
      if (++quiet == 2)
        return std::exp(-a * std::numbers::ln2) * sum;
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("hyp2f1_at_minus_one: series did not converge in " +
                             std::to_string(max_terms) + " terms",
                         std::exp(-a * std::numbers::ln2) * sum, max_terms);
}

double hermite_function(int n, double x) {
  if (n < 0)
    throw std::invalid_argument("hermite_function: n must be non-negative");

  constexpr double rescale = 1e150;
  const double log_rescale = std::log(rescale);
  double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  double prev = 1.0;
  if (n == 0)
    return std::exp(log_scale);
  double cur = std::numbers::sqrt2 * x;
  for (int k = 2; k <= n; ++k) {
    const double next = std::sqrt(2.0 / k) * x * cur -
                        std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > rescale) {
      cur /= rescale;
      prev /= rescale;
      log_scale += log_rescale;
    }
  }
  if (cur == 0.0)
    return 0.0;
  const double mag = std::log(std::abs(cur)) + log_scale;
  return std::copysign(std::exp(mag), cur);
}

double hermite_momentum_density(int n, double p, double scale) {
  if (n < 0 || n > 200)
    throw std::invalid_argument("hermite_momentum_density: n outside [0, 200]");
  if (!(scale > 0.0))
    throw std::invalid_argument("hermite_momentum_density: scale must be > 0");
  const double phi = hermite_function(n, p / scale);
  return phi * phi / scale;
}

} // namespace posmom::specfun
