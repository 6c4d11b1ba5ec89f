#pragma once

#include <complex>
#include <stdexcept>

namespace posmom {

using Complex = std::complex<double>;

/// Thrown when a special function is evaluated at one of its poles.
class PoleError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Thrown when a series fails its tail test within the iteration cap.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string &what, Complex partial, int terms)
      : std::runtime_error(what), partial_sum(partial), terms_used(terms) {}
  Complex partial_sum;
  int terms_used;
};

namespace specfun {

/// Principal branch of log Gamma(z), analytic on C minus (-inf, 0].
///
/// Small or left-half-plane arguments are shifted up with the recurrence
/// log G(z) = log G(z+n) - sum log(z+k) and then evaluated by the Stirling
/// series with Bernoulli terms through B_20. Absolute error in the log is
/// ~1e-15 * max(1, |log G|) for |z| <= 100.
Complex log_gamma(Complex z);

/// Gamma(z) = exp(log_gamma(z)).
Complex gamma(Complex z);

/// Gauss 2F1(a, b; c; -1).
///
/// The defining series is at best conditionally convergent at z = -1 for the
/// parameters used here, so it is evaluated through the Pfaff transformation
///   F(a,b;c;-1) = 2^{-a} F(a, c-b; c; 1/2),
/// whose series converges geometrically. `max_terms` caps the iteration.
Complex hyp2f1_at_minus_one(Complex a, Complex b, Complex c,
                            double tol = 1e-16, int max_terms = 10000);

/// Normalized Hermite function phi_n(x) (signed), via the three-term
/// recurrence on phi_n directly with a running log-scale.
double hermite_function(int n, double x);

/// |phi_n(p/scale)|^2 / scale: momentum density of the n-th oscillator state
/// with momentum unit `scale`. Requires 0 <= n <= 200 and scale > 0.
double hermite_momentum_density(int n, double p, double scale);

} // namespace specfun
} // namespace posmom
