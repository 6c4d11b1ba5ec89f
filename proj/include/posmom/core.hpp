#pragma once

#include <array>
#include <stdexcept>
#include <string_view>

#include "posmom/quadrature.hpp"
#include "posmom/specfun.hpp"

// Posmom Q_x = (i/2)(sin 2phi d/dphi + cos 2phi) on the unit circle, hbar = 1.

namespace posmom {

class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class UnsupportedError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Simultaneous parity class of Q_x under m_x (phi -> -phi) and
/// m_y (phi -> pi - phi). A bar marks odd parity about that axis.
enum class ParitySector { XY, XbarYbar, XbarY, XYbar };

inline constexpr std::array<ParitySector, 4> all_sectors = {
    ParitySector::XY, ParitySector::XbarYbar, ParitySector::XbarY,
    ParitySector::XYbar};

/// Signs of the sector basis function in quadrants I..IV.
constexpr std::array<int, 4> sign_mask(ParitySector s) {
  switch (s) {
  case ParitySector::XY:
    return {+1, +1, +1, +1};
  case ParitySector::XbarYbar:
    return {+1, -1, +1, -1};
  case ParitySector::XbarY:
    return {+1, +1, -1, -1};
  case ParitySector::XYbar:
    return {+1, -1, -1, +1};
  }
  return {0, 0, 0, 0};
}

std::string_view sector_name(ParitySector s);

/// Where coefficient integrals come from.
enum class Backend { Quadrature, Hypergeometric, ClosedForm };

std::string_view backend_name(Backend b);
/// Inverse of backend_name; throws std::invalid_argument.
Backend parse_backend(std::string_view name);

/// Expansion amplitudes of a state on the four sector bases at one lambda.
struct CoefficientSet {
  Complex alpha; ///< XY
  Complex beta;  ///< XbarYbar
  Complex mu;    ///< XbarY
  Complex nu;    ///< XYbar

  Complex operator[](ParitySector s) const;
  double density() const;
};

inline constexpr int max_angular_momentum = 10000;
/// Largest |lambda| the coefficient integrals accept; beyond it the
/// oscillation e^{i lambda u} outgrows the subdivision budget.
inline constexpr double max_supported_lambda = 200.0;

/// Quadrant index 0..3 of an angle, reduced mod 2 pi.
int quadrant_of(double phi);

/// Posmom eigenfunction (1/sqrt(pi)) |sin 2phi|^{-1/2} exp(-i lambda ln|tan phi|).
/// Throws DomainError within `margin` of a quadrant boundary.
Complex xi(double lambda, double phi, double margin = 1e-12);

/// Same, evaluated from a quadrature node without losing the distance to
/// the boundary.
Complex xi(double lambda, const CirclePoint &p);

/// Sector basis function: mask sign of phi's quadrant times xi / 2.
Complex parity_basis(ParitySector s, double lambda, double phi,
                     double margin = 1e-12);
Complex parity_basis(ParitySector s, double lambda, const CirclePoint &p);

/// I_m(lambda) = int_0^{pi/2} e^{i m phi} (sin 2phi)^{-1/2} e^{i lambda ln tan phi} dphi,
/// for m >= 0.
///
/// Quadrature backend: u = ln tan phi turns this into
///   (1/2) int sqrt(sech u) exp(i m atan(e^u) + i lambda u) du,
/// integrated on the truncated real line.
/// Hypergeometric backend: the Gamma / 2F1(.; -1) closed form. It loses
/// relative accuracy for large |lambda| and is meant as a cross-check.
Complex coefficient_integral(int m, double lambda, Backend backend,
                             const QuadratureConfig &cfg = {});

/// Amplitudes of Phi_m = e^{i m phi}/sqrt(2 pi). Exact zeros are placed by
/// parity selection; negative m uses conj(coefficients(-m, -lambda)).
CoefficientSet coefficients(int m, double lambda, const QuadratureConfig &cfg = {},
                            Backend backend = Backend::Quadrature);

/// p_m(lambda) = |alpha|^2 + |beta|^2 + |mu|^2 + |nu|^2.
double density(int m, double lambda, const QuadratureConfig &cfg = {},
               Backend backend = Backend::Quadrature);

/// True where density_closed_form is available: |m| in {0, 1, 3, 5}.
bool has_closed_form(int m);

/// Analytic density for m in {0, 1, 3, 5} (and their negatives):
///   p_0 = |Gamma(1/4 - i lambda/2)|^4 / (4 pi^3)
///   p_1 = sech(pi lambda), p_3 = 4 lambda^2 sech(pi lambda),
///   p_5 = (1 - 4 lambda^2)^2 sech(pi lambda) / 4.
/// Throws UnsupportedError otherwise.
double density_closed_form(int m, double lambda);

/// Sector-resolved closed form (alpha2, beta2, mu2, nu2).
std::array<double, 4> sector_densities_closed_form(int m, double lambda);

struct MomentGrid {
  double half_width = 0.0; ///< 0 selects |m|/2 + 12
  double step = 0.01;
};

struct Moments {
  double mean;
  double variance; ///< second moment about zero, int lambda^2 p dlambda
};

/// Trapezoidal moments of p_m over [-half_width, half_width].
Moments moments(int m, const QuadratureConfig &cfg = {}, MomentGrid grid = {});

/// Arcsine law of a uniformly phased sinusoid of amplitude m/2:
/// 1 / (pi sqrt((m/2)^2 - lambda^2)) for |lambda| < m/2, else 0. m >= 1.
double classical_density(int m, double lambda);

/// Cumulative distribution of classical_density.
double classical_cdf(int m, double lambda);

} // namespace posmom
