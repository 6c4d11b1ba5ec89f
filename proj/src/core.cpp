#include "posmom/core.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "posmom/parallel.hpp"

namespace posmom {

namespace {

constexpr double pi = std::numbers::pi;
constexpr Complex I{0.0, 1.0};

double sech(double x) { return 1.0 / std::cosh(x); }

// i^k for integer k
Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
  case 0:
    return 1.0;
  case 1:
    return I;
  case 2:
    return -1.0;
  default:
    return -I;
  }
}

void check_m(int m) {
  if (std::abs(m) > max_angular_momentum)
    throw std::invalid_argument("|m| exceeds " + std::to_string(max_angular_momentum));
}

double reduce_angle(double phi) {
  double r = std::fmod(phi, 2.0 * pi);
  if (r < 0.0)
    r += 2.0 * pi;
  return r;
}

Complex xi_from_parts(double lambda, double abs_sin2, double log_abs_tan) {
  return std::exp(Complex(0.0, -lambda * log_abs_tan)) /
         std::sqrt(pi * abs_sin2);
}

// sqrt(sech u) without overflow for large |u|.
double sqrt_sech(double u) {
  const double e = std::exp(-std::abs(u));
  return std::sqrt(2.0 * e / (1.0 + e * e));
}

Complex integral_by_quadrature(int m, double lambda, const QuadratureConfig &cfg) {
  const double dm = m;
  auto integrand = [dm, lambda](double u) -> Complex {
    const double phase = dm * std::atan(std::exp(u)) + lambda * u;
    return 0.5 * sqrt_sech(u) * Complex(std::cos(phase), std::sin(phase));
  };
  return quadrature::integrate_line(integrand, cfg, std::abs(lambda) + 0.5 * dm)
      .value;
}

Complex integral_by_hypergeometric(int m, double lambda) {
  const Complex a{0.5, lambda};
  const Complex b{0.5 * (m + 1), 0.0};
  const Complex c{0.5 * m + 1.0, lambda};
  const Complex hyp = specfun::hyp2f1_at_minus_one(a, b, c);
  // Real prefactors are folded into the exponent before conjugation so
  // large m cannot overflow Gamma((m+1)/2).
  const Complex log_scale = std::lgamma(0.5 * (m + 1)) - 0.5 * pi * lambda +
                            specfun::log_gamma(a) - specfun::log_gamma(c);
  const Complex v = std::exp(log_scale) * hyp;
  return Complex(0.5, 0.5) * (v - i_power(m + 1) * std::conj(v));
}

} // namespace

std::string_view sector_name(ParitySector s) {
  switch (s) {
  case ParitySector::XY:
    return "xy";
  case ParitySector::XbarYbar:
    return "xbar-ybar";
  case ParitySector::XbarY:
    return "xbar-y";
  case ParitySector::XYbar:
    return "x-ybar";
  }
  return "?";
}

std::string_view backend_name(Backend b) {
  switch (b) {
  case Backend::Quadrature:
    return "quadrature";
  case Backend::Hypergeometric:
    return "hypergeometric";
  case Backend::ClosedForm:
    return "closed-form";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  for (Backend b : {Backend::Quadrature, Backend::Hypergeometric, Backend::ClosedForm})
    if (backend_name(b) == name)
      return b;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

Complex CoefficientSet::operator[](ParitySector s) const {
  switch (s) {
  case ParitySector::XY:
    return alpha;
  case ParitySector::XbarYbar:
    return beta;
  case ParitySector::XbarY:
    return mu;
  case ParitySector::XYbar:
    return nu;
  }
  return 0.0;
}

double CoefficientSet::density() const {
  return std::norm(alpha) + std::norm(beta) + std::norm(mu) + std::norm(nu);
}

int quadrant_of(double phi) {
  const int q = static_cast<int>(reduce_angle(phi) / (0.5 * pi));
  return q > 3 ? 3 : q;
}

Complex xi(double lambda, double phi, double margin) {
  const double r = reduce_angle(phi);
  const double abs_sin2 = std::abs(std::sin(2.0 * r));
  if (!(abs_sin2 > margin))
    throw DomainError("xi: phi = " + std::to_string(phi) +
                      " lies on a quadrant boundary");
  return xi_from_parts(lambda, abs_sin2, std::log(std::abs(std::tan(r))));
}

Complex xi(double lambda, const CirclePoint &p) {
  const double s = std::sin(p.local.phi);
  const double c = std::sin(p.local.complement);
  const double log_tan_local = std::log(s) - std::log(c);
  const double log_abs_tan = (p.quadrant % 2 == 0) ? log_tan_local : -log_tan_local;
  return xi_from_parts(lambda, 2.0 * s * c, log_abs_tan);
}

Complex parity_basis(ParitySector s, double lambda, double phi, double margin) {
  const Complex x = xi(lambda, phi, margin);
  return 0.5 * sign_mask(s)[quadrant_of(phi)] * x;
}

Complex parity_basis(ParitySector s, double lambda, const CirclePoint &p) {
  return 0.5 * sign_mask(s)[p.quadrant] * xi(lambda, p);
}

Complex coefficient_integral(int m, double lambda, Backend backend,
                             const QuadratureConfig &cfg) {
  if (m < 0)
    throw std::invalid_argument("coefficient_integral: m must be >= 0");
  check_m(m);
  if (!(std::abs(lambda) <= max_supported_lambda))
    throw DomainError("coefficient_integral: |lambda| = " + std::to_string(std::abs(lambda)) +
                      " exceeds the supported " + std::to_string(max_supported_lambda));
  switch (backend) {
  case Backend::Quadrature:
    return integral_by_quadrature(m, lambda, cfg);
  case Backend::Hypergeometric:
    return integral_by_hypergeometric(m, lambda);
  case Backend::ClosedForm:
    break;
  }
  throw UnsupportedError("coefficient_integral: no closed-form backend for I_m");
}

CoefficientSet coefficients(int m, double lambda, const QuadratureConfig &cfg,
                            Backend backend) {
  check_m(m);
  if (m < 0) {
    const CoefficientSet c = coefficients(-m, -lambda, cfg, backend);
    return {std::conj(c.alpha), std::conj(c.beta), std::conj(c.mu), std::conj(c.nu)};
  }
  if (backend == Backend::ClosedForm)
    throw UnsupportedError("coefficients: closed forms give densities only");

  const Complex plus = coefficient_integral(m, lambda, backend, cfg);
  const Complex minus =
      lambda == 0.0 ? plus : coefficient_integral(m, -lambda, backend, cfg);
  const double norm = 1.0 / (std::numbers::sqrt2 * pi);
  // e^{i m pi/2}: (-1)^k for m = 2k, i (-1)^k for m = 2k+1.
  const Complex phase = i_power(m);

  CoefficientSet out{};
  if (m % 2 == 0) {
    out.alpha = norm * (plus + phase * minus);
    out.beta = m == 0 ? Complex{} : norm * (plus - phase * minus);
  } else {
    out.mu = norm * (plus + phase * minus);
    out.nu = norm * (plus - phase * minus);
  }
  return out;
}

bool has_closed_form(int m) {
  const int a = std::abs(m);
  return a == 0 || a == 1 || a == 3 || a == 5;
}

double density_closed_form(int m, double lambda) {
  const auto s = sector_densities_closed_form(m, lambda);
  return s[0] + s[1] + s[2] + s[3];
}

std::array<double, 4> sector_densities_closed_form(int m, double lambda) {
  if (!has_closed_form(m))
    throw UnsupportedError("no closed-form density for m = " + std::to_string(m));
  const int a = std::abs(m);
  if (a == 0) {
    const double log_mod = specfun::log_gamma(Complex(0.25, -0.5 * lambda)).real();
    return {std::exp(4.0 * log_mod) / (4.0 * pi * pi * pi), 0.0, 0.0, 0.0};
  }
  const double s = sech(pi * lambda);
  double p = 0.0;
  if (a == 1) {
    p = s;
  } else if (a == 3) {
    p = 4.0 * lambda * lambda * s;
  } else {
    const double q = 1.0 - 4.0 * lambda * lambda;
    p = 0.25 * q * q * s;
  }
  // Odd m: |mu|^2 = |nu|^2.
  return {0.0, 0.0, 0.5 * p, 0.5 * p};
}

double density(int m, double lambda, const QuadratureConfig &cfg, Backend backend) {
  if (backend == Backend::ClosedForm)
    return density_closed_form(m, lambda);
  return coefficients(m, lambda, cfg, backend).density();
}

Moments moments(int m, const QuadratureConfig &cfg, MomentGrid grid) {
  check_m(m);
  const double half = grid.half_width > 0.0 ? grid.half_width : 0.5 * std::abs(m) + 12.0;
  if (!(grid.step > 0.0))
    throw std::invalid_argument("moments: step must be > 0");
  const auto n = static_cast<std::size_t>(std::llround(2.0 * half / grid.step)) + 1;
  std::vector<double> lambda(n), p(n);
  for (std::size_t i = 0; i < n; ++i)
    lambda[i] = -half + static_cast<double>(i) * grid.step;
  parallel_for(n, [&](std::size_t i) { p[i] = density(m, lambda[i], cfg); });

  double first = 0.0, second = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    first += w * lambda[i] * p[i];
    second += w * lambda[i] * lambda[i] * p[i];
  }
  return {first * grid.step, second * grid.step};
}

double classical_density(int m, double lambda) {
  if (m < 1)
    throw std::invalid_argument("classical_density: m must be >= 1");
  const double amp = 0.5 * m;
  if (std::abs(lambda) >= amp)
    return 0.0;
  return 1.0 / (pi * std::sqrt((amp - lambda) * (amp + lambda)));
}

double classical_cdf(int m, double lambda) {
  if (m < 1)
    throw std::invalid_argument("classical_cdf: m must be >= 1");
  const double amp = 0.5 * m;
  if (lambda <= -amp)
    return 0.0;
  if (lambda >= amp)
    return 1.0;
  return 0.5 + std::asin(lambda / amp) / pi;
}

} // namespace posmom
