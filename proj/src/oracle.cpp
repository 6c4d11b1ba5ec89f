#include "posmom/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "posmom/parallel.hpp"

namespace posmom::oracle {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double boundary_margin = 1e-12;

// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
  if (x <= 0.0)
    return 0.0;
  if (x >= 1.0)
    return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double local_offset(double phi) {
  double r = std::fmod(phi, 0.5 * pi);
  if (r < 0.0)
    r += 0.5 * pi;
  return r;
}

int reflection_shift(const CircleState &s) {
  const double ratio = 2.0 * s.offset() / s.step();
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) > 1e-9)
    throw std::invalid_argument("apply_parity: grid is not reflection symmetric");
  return static_cast<int>(nearest);
}

} // namespace

CircleState::CircleState(std::vector<Complex> samples, double offset)
    : samples_(std::move(samples)), offset_(offset) {
  const int n = size();
  if (n < 64 || n % 4 != 0)
    throw std::invalid_argument("CircleState: need N >= 64 and divisible by 4, got " +
                                std::to_string(n));
  for (int j = 0; j < n; ++j)
    if (!(std::abs(std::sin(2.0 * phi(j))) > boundary_margin))
      throw std::invalid_argument("CircleState: grid point on a quadrant boundary");
}

double CircleState::default_offset(int n_points) { return pi / n_points; }

CircleState CircleState::sample(int n_points, const std::function<Complex(double)> &f) {
  return sample(n_points, default_offset(n_points), f);
}

CircleState CircleState::sample(int n_points, double offset,
                                const std::function<Complex(double)> &f) {
  if (n_points <= 0)
    throw std::invalid_argument("CircleState: n_points must be positive");
  std::vector<Complex> v(n_points);
  const double h = 2.0 * pi / n_points;
  for (int j = 0; j < n_points; ++j)
    v[j] = f(offset + j * h);
  return CircleState(std::move(v), offset);
}

CircleState CircleState::angular_momentum(int m, int n_points) {
  const double norm = 1.0 / std::sqrt(2.0 * pi);
  return sample(n_points, [m, norm](double phi) {
    return norm * std::exp(Complex(0.0, m * phi));
  });
}

double CircleState::step() const { return 2.0 * pi / size(); }

double CircleState::phi(int j) const { return offset_ + j * step(); }

double CircleState::l2_norm() const {
  double s = 0.0;
  for (const Complex &z : samples_)
    s += std::norm(z);
  return std::sqrt(s * step());
}

Complex CircleState::inner(const CircleState &other) const {
  if (other.size() != size())
    throw std::invalid_argument("CircleState::inner: grid size mismatch");
  Complex s = 0.0;
  for (int j = 0; j < size(); ++j)
    s += std::conj(samples_[j]) * other.samples_[j];
  return s * step();
}

CircleState operator-(const CircleState &a, const CircleState &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("CircleState: grid size mismatch");
  std::vector<Complex> v(a.size());
  for (int j = 0; j < a.size(); ++j)
    v[j] = a.samples()[j] - b.samples()[j];
  return CircleState(std::move(v), a.offset());
}

CircleState apply_posmom(const CircleState &state) {
  const int n = state.size();
  const double h = state.step();
  const auto f = state.samples();
  std::vector<Complex> out(n);
  for (int j = 0; j < n; ++j) {
    const Complex fp1 = f[(j + 1) % n], fp2 = f[(j + 2) % n];
    const Complex fm1 = f[(j + n - 1) % n], fm2 = f[(j + n - 2) % n];
    const Complex deriv = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    const double phi = state.phi(j);
    out[j] = Complex(0.0, 0.5) * (std::sin(2.0 * phi) * deriv + std::cos(2.0 * phi) * f[j]);
  }
  return CircleState(std::move(out), state.offset());
}

CircleState apply_parity(Reflection which, const CircleState &state) {
  const int n = state.size();
  const int shift = reflection_shift(state);
  const int base = (which == Reflection::MX) ? n : n / 2;
  std::vector<Complex> out(n);
  for (int j = 0; j < n; ++j) {
    const int k = (((base - j - shift) % n) + n) % n;
    out[j] = state.samples()[k];
  }
  return CircleState(std::move(out), state.offset());
}

CircleState windowed_eigenfunction(double lambda, int n_points, double plateau_start) {
  const double ramp = 0.1;
  const double ramp_start = plateau_start - ramp;
  if (!(ramp_start > 0.0) || !(plateau_start < 0.25 * pi))
    throw std::invalid_argument("windowed_eigenfunction: plateau_start out of range");
  return CircleState::sample(n_points, [=](double phi) {
    const double o = local_offset(phi);
    const double w = smooth_step((o - ramp_start) / ramp) *
                     smooth_step((0.5 * pi - o - ramp_start) / ramp);
    return w == 0.0 ? Complex{} : w * xi(lambda, phi);
  });
}

double eigen_residual(double lambda, int n_points, double interior_start) {
  const CircleState state = windowed_eigenfunction(lambda, n_points);
  const CircleState applied = apply_posmom(state);
  double num = 0.0, den = 0.0;
  for (int j = 0; j < state.size(); ++j) {
    const double o = local_offset(state.phi(j));
    if (o < interior_start || o > 0.5 * pi - interior_start)
      continue;
    const Complex expected = lambda * state.samples()[j];
    num += std::norm(applied.samples()[j] - expected);
    den += std::norm(expected);
  }
  return std::sqrt(num / den);
}

double commutator_residual(Reflection which, int m, int n_points) {
  const CircleState phi_m = CircleState::angular_momentum(m, n_points);
  const CircleState q_phi = apply_posmom(phi_m);
  const CircleState lhs = apply_parity(which, q_phi);
  const CircleState rhs = apply_posmom(apply_parity(which, phi_m));
  return (lhs - rhs).l2_norm() / q_phi.l2_norm();
}

double posmom_second_moment(int m, int n_points) {
  const double norm = apply_posmom(CircleState::angular_momentum(m, n_points)).l2_norm();
  return norm * norm;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0))
    throw std::invalid_argument("uniform_grid: step must be > 0");
  if (hi < lo)
    return {};
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + static_cast<double>(i) * step;
  return g;
}

Reconstruction reconstruct(int m, std::span<const double> lambda_grid,
                           const QuadratureConfig &cfg, int n_points) {
  const CircleState target = CircleState::angular_momentum(m, n_points);
  const std::size_t n_lambda = lambda_grid.size();

  std::vector<Complex> out(n_points, Complex{});
  if (n_lambda == 0) {
    CircleState zero(std::move(out), target.offset());
    return {zero, (zero - target).l2_norm()};
  }

  double step = 1.0;
  if (n_lambda >= 2) {
    step = lambda_grid[1] - lambda_grid[0];
    for (std::size_t i = 1; i < n_lambda; ++i)
      if (std::abs(lambda_grid[i] - lambda_grid[i - 1] - step) > 1e-9 * std::abs(step) + 1e-12)
        throw std::invalid_argument("reconstruct: lambda grid is not uniform");
  }
  const double need = 8.0 + 0.5 * std::abs(m);
  if (n_lambda < 2 || !(step > 0.0) || lambda_grid.front() > -need + 1e-9 ||
      lambda_grid.back() < need - 1e-9)
    throw std::invalid_argument("reconstruct: lambda grid must be increasing and span [-" +
                                std::to_string(need) + ", " + std::to_string(need) + "]");

  // Per-quadrant combination sum_s mask_s[q] c_s(lambda), trapezoid weights folded in.
  std::vector<std::array<Complex, 4>> combo(n_lambda);
  parallel_for(n_lambda, [&](std::size_t i) {
    const CoefficientSet c = coefficients(m, lambda_grid[i], cfg);
    const double w = ((i == 0 || i + 1 == n_lambda) ? 0.5 : 1.0) * step;
    for (int q = 0; q < 4; ++q) {
      Complex sum = 0.0;
      for (ParitySector s : all_sectors)
        sum += static_cast<double>(sign_mask(s)[q]) * c[s];
      combo[i][q] = w * sum;
    }
  });

  parallel_for(static_cast<std::size_t>(n_points), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    const double phi = target.phi(j);
    const int q = quadrant_of(phi);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n_lambda; ++i)
      acc += combo[i][q] * xi(lambda_grid[i], phi);
    out[j] = 0.5 * acc;
  });

  CircleState state(std::move(out), target.offset());
  const double residual = (state - target).l2_norm();
  return {std::move(state), residual};
}

Complex sector_orthogonality(const std::function<Complex(double)> &window,
                             ParitySector s1, ParitySector s2,
                             const QuadratureConfig &cfg, int n_points) {
  constexpr double support = 10.0;
  // Fourier transform of the window at u = ln|tan phi|.
  auto transform = [&](double u) {
    auto integrand = [&](double lambda) {
      return window(lambda) * std::exp(Complex(0.0, -lambda * u));
    };
    return quadrature::integrate_interval(integrand, -support, support, cfg, std::abs(u))
        .value;
  };
  // Packet amplitude: sign(q)/2 * |sin 2phi|^{-1/2}/sqrt(pi) * transform(ln|tan phi|).
  auto packet = [&](ParitySector s, const CirclePoint &p, Complex g_hat) {
    return 0.5 * sign_mask(s)[p.quadrant] * g_hat /
           std::sqrt(pi * 2.0 * std::sin(p.local.phi) * std::sin(p.local.complement));
  };
  return quadrature::integrate_circle(
      [&](const CirclePoint &p) {
        const double log_tan = std::log(std::sin(p.local.phi)) -
                               std::log(std::sin(p.local.complement));
        const Complex g_hat = transform(p.quadrant % 2 == 0 ? log_tan : -log_tan);
        return std::conj(packet(s1, p, g_hat)) * packet(s2, p, g_hat);
      },
      n_points);
}

} // namespace posmom::oracle
