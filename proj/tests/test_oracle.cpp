#include <cmath>
#include <numbers>

#include "doctest.h"
#include "posmom/oracle.hpp"

using namespace posmom;
using namespace posmom::oracle;
using std::numbers::pi;

TEST_SUITE("oracle") {

TEST_CASE("CircleState construction rules") {
  CHECK_THROWS(CircleState(std::vector<Complex>(60), 0.01));
  CHECK_THROWS(CircleState(std::vector<Complex>(66), 0.01));
  CHECK_THROWS(CircleState(std::vector<Complex>(64), 0.0)); // sample on phi = 0
  const CircleState s = CircleState::angular_momentum(3, 256);
  CHECK(s.size() == 256);
  CHECK(s.offset() == doctest::Approx(pi / 256));
  CHECK(s.l2_norm() == doctest::Approx(1.0).epsilon(1e-14));
  for (int j = 0; j < s.size(); ++j)
    CHECK(std::abs(std::sin(2 * s.phi(j))) > 1e-3);
}

TEST_CASE("apply_posmom on the constant state") {
  const int n = 512;
  const CircleState c = CircleState::sample(n, [](double) { return Complex(1.0 / std::sqrt(2 * pi)); });
  const CircleState q = apply_posmom(c);
  for (int j = 0; j < n; ++j) {
    const Complex expected = Complex(0.0, 0.5) * std::cos(2 * c.phi(j)) / std::sqrt(2 * pi);
    CHECK(std::abs(q.samples()[j] - expected) < 1e-14);
  }
}

TEST_CASE("eigenvalue relation on the grid") {
  CHECK(eigen_residual(1.5, 4096) < 1e-4);
  for (double lambda : {0.5, 1.5, 3.0}) {
    // 4th order: halving the step gains ~16x until the floating-point floor.
    CHECK(eigen_residual(lambda, 1024) / eigen_residual(lambda, 2048) >= 8.0);
    CHECK(eigen_residual(lambda, 2048) / eigen_residual(lambda, 4096) >= 8.0);
  }
}

TEST_CASE("posmom expectation in angular-momentum states vanishes") {
  const CircleState phi4 = CircleState::angular_momentum(4, 4096);
  CHECK(std::abs(phi4.inner(apply_posmom(phi4))) < 1e-10);
}

TEST_CASE("second moment oracle matches (m^2 + 1)/8") {
  for (int m : {0, 1, 2, 5})
    CHECK(posmom_second_moment(m, 4096) == doctest::Approx((m * m + 1) / 8.0).epsilon(1e-8));
}

TEST_CASE("parity permutations") {
  const CircleState s = CircleState::sample(256, [](double phi) {
    return std::exp(Complex(0.0, 3.0 * phi)) + 0.3 * std::cos(phi);
  });
  for (Reflection r : {Reflection::MX, Reflection::MY}) {
    const CircleState once = apply_parity(r, s);
    const CircleState twice = apply_parity(r, once);
    for (int j = 0; j < s.size(); ++j)
      CHECK(twice.samples()[j] == s.samples()[j]);
    CHECK(once.l2_norm() == doctest::Approx(s.l2_norm()).epsilon(1e-15));
  }
  const CircleState mx = apply_parity(Reflection::MX, s);
  const CircleState my = apply_parity(Reflection::MY, s);
  for (int j = 0; j < s.size(); j += 17) {
    const double phi = s.phi(j);
    CHECK(std::abs(mx.samples()[j] - (std::exp(Complex(0.0, -3.0 * phi)) + 0.3 * std::cos(phi))) <
          1e-12);
    CHECK(std::abs(my.samples()[j] -
                   (std::exp(Complex(0.0, 3.0 * (pi - phi))) + 0.3 * std::cos(pi - phi))) < 1e-12);
  }
  CHECK_THROWS_AS(apply_parity(Reflection::MX, CircleState(std::vector<Complex>(64), 0.01)),
                  std::invalid_argument);
}

TEST_CASE("commutators with the reflections vanish") {
  for (int m = 1; m <= 4; ++m) {
    CHECK(commutator_residual(Reflection::MX, m, 4096) < 1e-10);
    CHECK(commutator_residual(Reflection::MY, m, 4096) < 1e-10);
  }
}

TEST_CASE("m_x negates the odd sector samples") {
  const CircleState s = CircleState::sample(
      512, [](double phi) { return parity_basis(ParitySector::XbarYbar, 0.7, phi); });
  const CircleState r = apply_parity(Reflection::MX, s);
  for (int j = 0; j < s.size(); ++j)
    CHECK(std::abs(r.samples()[j] + s.samples()[j]) < 1e-12);
}

TEST_CASE("reconstruction") {
  CHECK(reconstruct(0, {}).l2_residual == doctest::Approx(1.0));
  const std::vector<double> grid = uniform_grid(-10.0, 10.0, 0.01);
  CHECK(grid.size() == 2001);
  CHECK(reconstruct(1, grid).l2_residual < 1e-3);
  CHECK(reconstruct(0, grid).l2_residual < 1e-3);
  CHECK_THROWS(reconstruct(6, uniform_grid(-5.0, 5.0, 0.01)));
}

TEST_CASE("reconstruction improves as the lambda grid grows") {
  for (int m : {0, 1, 2, 3}) {
    double prev = INFINITY;
    const double w = 8.0 + 0.5 * m;
    for (auto [extra, step] : {std::pair{0.0, 0.04}, std::pair{1.0, 0.02}, std::pair{2.0, 0.01}}) {
      const double r = reconstruct(m, uniform_grid(-w - extra, w + extra, step), {}, 1024).l2_residual;
      CHECK_MESSAGE(r <= 1.1 * prev, "m=" << m);
      prev = r;
    }
  }
}

TEST_CASE("sector orthogonality with a Gaussian window") {
  const auto g = [](double l) {
    return Complex(std::pow(2 * pi, -0.25) * std::exp(-0.25 * l * l));
  };
  CHECK(std::abs(sector_orthogonality(g, ParitySector::XY, ParitySector::XY) - 1.0) < 1e-3);
  CHECK(std::abs(sector_orthogonality(g, ParitySector::XY, ParitySector::XbarY)) < 1e-6);
  CHECK(std::abs(sector_orthogonality(g, ParitySector::XbarYbar, ParitySector::XYbar)) < 1e-6);
}

} // TEST_SUITE
