#include <cmath>
#include <numbers>

#include "doctest.h"
#include "posmom/core.hpp"
#include "posmom/quadrature.hpp"
#include "posmom/specfun.hpp"

using namespace posmom;
using std::numbers::pi;

namespace {
double sech(double x) { return 1.0 / std::cosh(x); }
} // namespace

TEST_SUITE("core") {

TEST_CASE("sector masks are the Klein-group characters") {
  for (ParitySector a : all_sectors) {
    for (ParitySector b : all_sectors) {
      int dot = 0;
      for (int q = 0; q < 4; ++q)
        dot += sign_mask(a)[q] * sign_mask(b)[q];
      CHECK(dot == (a == b ? 4 : 0));
    }
    CHECK(sign_mask(a)[0] == 1);
  }
  CHECK(sign_mask(ParitySector::XbarYbar) == std::array<int, 4>{1, -1, 1, -1});
  CHECK(sign_mask(ParitySector::XbarY) == std::array<int, 4>{1, 1, -1, -1});
  CHECK(sign_mask(ParitySector::XYbar) == std::array<int, 4>{1, -1, -1, 1});
}

TEST_CASE("backend names round-trip") {
  for (Backend b : {Backend::Quadrature, Backend::Hypergeometric, Backend::ClosedForm})
    CHECK(parse_backend(backend_name(b)) == b);
  CHECK_THROWS_AS(parse_backend("simpson"), std::invalid_argument);
}

TEST_CASE("xi examples") {
  CHECK(std::abs(xi(0.0, pi / 4) - 1.0 / std::sqrt(pi)) < 1e-15);
  CHECK(std::norm(xi(1.7, 0.3)) * std::abs(std::sin(0.6)) == doctest::Approx(1.0 / pi));
  CHECK(std::abs(xi(0.9, pi / 2 - 0.4) - xi(-0.9, 0.4)) < 1e-14);
  CHECK_THROWS_AS(xi(1.0, pi / 2), DomainError);
  CHECK_THROWS_AS(xi(1.0, 0.0), DomainError);
}

TEST_CASE("parity_basis examples") {
  const double lambda = 1.2, phi = 0.5;
  const double reflected = 2 * pi - phi;
  CHECK(std::abs(parity_basis(ParitySector::XY, lambda, reflected) -
                 parity_basis(ParitySector::XY, lambda, phi)) < 1e-14);
  CHECK(std::abs(parity_basis(ParitySector::XbarY, lambda, reflected) +
                 parity_basis(ParitySector::XbarY, lambda, phi)) < 1e-14);
  for (ParitySector s : all_sectors)
    CHECK(std::abs(parity_basis(s, 0.8, 0.7) - xi(0.8, 0.7) / 2.0) < 1e-15);
}

TEST_CASE("parity eigenvalues under m_x and m_y") {
  // m_x: phi -> -phi, m_y: phi -> pi - phi
  for (ParitySector s : all_sectors) {
    const auto mask = sign_mask(s);
    const int ex = mask[3]; // quadrant I <-> IV
    const int ey = mask[1]; // quadrant I <-> II
    for (double phi : {0.3, 1.9, 3.5, 5.1}) {
      CHECK(std::abs(parity_basis(s, 0.6, std::fmod(2 * pi - phi, 2 * pi)) -
                     double(ex) * parity_basis(s, 0.6, phi)) < 1e-13);
      CHECK(std::abs(parity_basis(s, 0.6, std::fmod(3 * pi - phi, 2 * pi)) -
                     double(ey) * parity_basis(s, 0.6, phi)) < 1e-13);
    }
  }
}

TEST_CASE("coefficient integral reference values") {
  const double beta = std::sqrt(pi) / 2 * (specfun::gamma(0.25) / specfun::gamma(0.75)).real();
  for (Backend b : {Backend::Quadrature, Backend::Hypergeometric})
    CHECK(std::abs(coefficient_integral(0, 0.0, b) - beta) < 1e-6);
  CHECK(std::abs(coefficient_integral(4, 1.3, Backend::Quadrature) -
                 coefficient_integral(4, 1.3, Backend::Hypergeometric)) <= 1e-8);
  CHECK_THROWS_AS(coefficient_integral(-1, 0.0, Backend::Quadrature), std::invalid_argument);
  CHECK_THROWS_AS(coefficient_integral(2, 200.5, Backend::Quadrature), DomainError);
  CHECK_NOTHROW(coefficient_integral(2, -200.0, Backend::Quadrature));
}

TEST_CASE("coefficient examples") {
  const CoefficientSet c2 = coefficients(2, 0.37);
  CHECK(c2.mu == Complex(0.0));
  CHECK(c2.nu == Complex(0.0));

  const CoefficientSet c1 = coefficients(1, 0.0);
  CHECK(std::abs(std::abs(c1.mu) - 1.0 / std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(c1.mu - Complex(0.0, 1.0 / std::sqrt(2.0))) < 1e-10);
  CHECK(c1.alpha == Complex(0.0));
  CHECK(c1.beta == Complex(0.0));

  const CoefficientSet c0 = coefficients(0, 1.0);
  const double expected = std::norm(specfun::gamma(Complex(0.25, -0.5))) / (2 * std::pow(pi, 1.5));
  CHECK(std::abs(std::abs(c0.alpha) - expected) < 1e-10);
  CHECK(c0.beta == Complex(0.0));

  // mu_1 closed form i / (sqrt 2 (cosh(pi l/2) - i sinh(pi l/2))), modulus only.
  for (double lambda : {-1.5, 0.6, 2.0}) {
    const CoefficientSet c = coefficients(1, lambda);
    const double mod = 1.0 / (std::sqrt(2.0) * std::sqrt(std::cosh(pi * lambda)));
    CHECK(std::abs(std::abs(c.mu) - mod) < 1e-10);
    CHECK(std::norm(c.mu) + std::norm(c.nu) == doctest::Approx(sech(pi * lambda)).epsilon(1e-9));
  }
}

TEST_CASE("negative m follows the conjugation rule") {
  for (int m : {1, 2, 5}) {
    for (double lambda : {-0.7, 0.0, 1.3}) {
      const CoefficientSet a = coefficients(-m, lambda), b = coefficients(m, -lambda);
      for (ParitySector s : all_sectors)
        CHECK(std::abs(a[s] - std::conj(b[s])) < 1e-15);
      CHECK(std::abs(density(-m, lambda) - density(m, lambda)) < 1e-10);
    }
  }
}

TEST_CASE("density examples") {
  CHECK(density(1, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(density(3, 0.0)) < 1e-12);
  CHECK(density(0, 0.0) == doctest::Approx(1.393203929686).epsilon(1e-10));
  CHECK(std::abs(density(0, 0.0) - 1.393) < 0.007);
}

TEST_CASE("selection rules, symmetry and equipartition") {
  for (int m = 0; m <= 8; ++m) {
    for (double lambda : {0.25, 1.0, 3.5}) {
      const CoefficientSet c = coefficients(m, lambda);
      int zeros = 0;
      for (ParitySector s : all_sectors)
        zeros += c[s] == Complex(0.0);
      CHECK(zeros == (m == 0 ? 3 : 2));
      if (m % 2)
        CHECK(std::abs(std::norm(c.mu) - std::norm(c.nu)) < 1e-10);
      CHECK(std::abs(c.density() - density(m, -lambda)) < 1e-10);
      CHECK(c.density() >= 0.0);
    }
  }
}

TEST_CASE("closed forms") {
  CHECK(density_closed_form(5, 0.5) == 0.0);
  CHECK(density_closed_form(3, 1.0) == doctest::Approx(4.0 * 2.0 / (std::exp(pi) + std::exp(-pi))));
  CHECK(std::abs(density_closed_form(3, 1.0) - 0.3451) < 1e-4);
  CHECK(density_closed_form(0, 0.0) == doctest::Approx(std::pow(specfun::gamma(0.25).real(), 4) /
                                                       (4 * pi * pi * pi)));
  const IntegralResult r = quadrature::integrate_line(
      [](double l) { return Complex(density_closed_form(1, l)); }, {});
  CHECK(std::abs(r.value - 1.0) < 1e-10);
  CHECK_THROWS_AS(density_closed_form(2, 0.0), UnsupportedError);
  CHECK(has_closed_form(-3));
  CHECK_FALSE(has_closed_form(7));
}

TEST_CASE("closed forms agree with the coefficient formulas on [-4, 4]") {
  for (int m : {0, 1, 3, 5}) {
    for (double lambda = -4.0; lambda <= 4.0; lambda += 0.05) {
      CHECK(std::abs(density(m, lambda) - density_closed_form(m, lambda)) <= 1e-7);
      const auto parts = sector_densities_closed_form(m, lambda);
      const CoefficientSet c = coefficients(m, lambda);
      for (int s = 0; s < 4; ++s)
        CHECK(std::abs(parts[s] - std::norm(c[all_sectors[s]])) <= 1e-7);
    }
  }
}

TEST_CASE("moments") {
  for (int m : {1, 5}) {
    const Moments mo = moments(m);
    CHECK(std::abs(mo.mean) < 1e-8);
    CHECK(std::abs(mo.variance - (m * m + 1) / 8.0) < 1e-6);
  }
  CHECK(std::abs(moments(0).variance - 0.125) < 1e-6);
}

TEST_CASE("classical density") {
  CHECK(classical_density(3, 0.0) == doctest::Approx(2.0 / (3.0 * pi)));
  CHECK(classical_density(4, 2.0) == 0.0);
  CHECK(classical_density(4, -2.5) == 0.0);
  CHECK_THROWS(classical_density(0, 0.0));
  // lambda = -A cos(theta) turns the arcsine law into a uniform density.
  const double A = 3.5;
  const IntegralResult r = quadrature::integrate_singular_quadrant(
      [&](const QuadrantPoint &q) {
        // phi in (0, pi/2) -> lambda in (-A, A), with exact distances to both ends.
        const double scale = 4.0 * A / pi;
        const double from_left = scale * q.phi, from_right = scale * q.complement;
        return Complex(scale / (pi * std::sqrt(from_left * from_right)));
      },
      {});
  CHECK(std::abs(r.value - 1.0) < 1e-9);
  CHECK(classical_density(7, 0.3) == doctest::Approx(1.0 / (pi * std::sqrt(A * A - 0.09))));
  CHECK(classical_cdf(7, -A) == 0.0);
  CHECK(classical_cdf(7, A) == 1.0);
  CHECK(classical_cdf(7, 0.0) == doctest::Approx(0.5));
}

} // TEST_SUITE
