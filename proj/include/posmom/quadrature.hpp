#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "posmom/specfun.hpp"

namespace posmom {

/// Tolerances and truncation parameters shared by every integration.
struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  /// Real-line integrals are truncated to [-line_truncation, line_truncation].
  double line_truncation = 80.0;
  int max_subdivisions = 2000;
  /// Half-width around quadrant boundaries where point evaluation of the
  /// posmom eigenfunctions is refused.
  double singularity_margin = 1e-12;

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;
  /// Stable textual digest of all fields, embedded in emitted tables.
  std::string fingerprint() const;
};

struct IntegralResult {
  Complex value;
  double error_estimate = 0.0;
  long evaluations = 0;
};

class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string &what, IntegralResult best)
      : std::runtime_error(what), best_estimate(best) {}
  IntegralResult best_estimate;
};

using LineIntegrand = std::function<Complex(double)>;

/// A point inside an open quadrant given by its offset from both ends, so
/// that distances to the boundary stay exact even when they are far below
/// the spacing of doubles near pi/2.
struct QuadrantPoint {
  double phi;        ///< offset from the quadrant start, in (0, pi/2)
  double complement; ///< pi/2 - phi
};
using QuadrantIntegrand = std::function<Complex(const QuadrantPoint &)>;

struct CirclePoint {
  double phi;      ///< absolute angle in (0, 2 pi)
  int quadrant;    ///< 0..3 for quadrants I..IV
  QuadrantPoint local;
};
using CircleIntegrand = std::function<Complex(const CirclePoint &)>;

namespace quadrature {

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. `frequency_hint`
/// (rad per unit length) seeds the initial partition so each panel spans
/// about one oscillation period.
IntegralResult integrate_interval(const LineIntegrand &f, double a, double b,
                                  const QuadratureConfig &cfg,
                                  double frequency_hint = 0.0);

/// Integral over the real line truncated to [-u_max, u_max].
///
/// The reported error adds a truncation bound that assumes |f| decays at
/// least like exp(-|u|/2) beyond the cut: tail <= 2 (|f(u_max)| + |f(-u_max)|).
/// For f dominated by sqrt(sech u) this equals 4 sqrt(2) exp(-u_max/2).
IntegralResult integrate_line(const LineIntegrand &f,
                              const QuadratureConfig &cfg,
                              double frequency_hint = 0.0);

/// Integral over (0, pi/2) of an integrand with at most inverse-square-root
/// endpoint singularities, by level-refined tanh-sinh (double exponential)
/// quadrature. The map phi = pi/4 (1 + tanh(pi/2 sinh t)) sends both
/// endpoints to infinity, where the weight decays double-exponentially.
IntegralResult integrate_singular_quadrant(const QuadrantIntegrand &f,
                                           const QuadratureConfig &cfg);

/// Fixed-node integral over (0, 2 pi): each open quadrant gets a tanh-sinh
/// rule with n_points / 4 nodes. Accuracy is checked by the caller through
/// refinement of n_points.
Complex integrate_circle(const CircleIntegrand &f, int n_points);

/// Tail bound used by integrate_line for an integrand with the given
/// magnitudes at the truncation points.
double line_tail_bound(double f_left, double f_right);

} // namespace quadrature
} // namespace posmom
