#pragma once

#include <functional>
#include <span>
#include <vector>

#include "posmom/core.hpp"

// Grid-based checks that share no code path with the coefficient formulas.

namespace posmom::oracle {

/// Complex samples on the uniform grid phi_j = offset + j * 2pi/N.
///
/// The default offset is half a step: with N divisible by 4 the quadrant
/// boundaries fall exactly between samples and the grid is mapped onto
/// itself by both reflections.
class CircleState {
public:
  CircleState(std::vector<Complex> samples, double offset);

  static double default_offset(int n_points);
  static CircleState sample(int n_points, const std::function<Complex(double)> &f);
  static CircleState sample(int n_points, double offset,
                            const std::function<Complex(double)> &f);
  /// Phi_m = e^{i m phi} / sqrt(2 pi).
  static CircleState angular_momentum(int m, int n_points);

  std::span<const Complex> samples() const { return samples_; }
  int size() const { return static_cast<int>(samples_.size()); }
  double offset() const { return offset_; }
  double step() const;
  double phi(int j) const;

  /// Trapezoidal L2 norm (spectrally exact for smooth periodic states).
  double l2_norm() const;
  /// Trapezoidal <this | other>.
  Complex inner(const CircleState &other) const;

private:
  std::vector<Complex> samples_;
  double offset_;
};

CircleState operator-(const CircleState &a, const CircleState &b);

/// (i/2)(sin 2phi Phi' + cos 2phi Phi) with Phi' from 4th-order periodic
/// central differences.
CircleState apply_posmom(const CircleState &state);

enum class Reflection { MX, MY };

/// m_x: phi -> -phi, m_y: phi -> pi - phi (mod 2pi), as sample permutations.
/// Throws std::invalid_argument if the grid is not symmetric under them.
CircleState apply_parity(Reflection which, const CircleState &state);

/// xi_lambda multiplied by a smooth window equal to 1 on
/// [plateau_start, pi/2 - plateau_start] inside every quadrant and
/// vanishing near the boundaries.
CircleState windowed_eigenfunction(double lambda, int n_points,
                                   double plateau_start = 0.15);

/// Relative L2 residual ||Q xi - lambda xi|| / ||lambda xi|| over samples
/// whose local quadrant offset lies in [interior_start, pi/2 - interior_start].
double eigen_residual(double lambda, int n_points, double interior_start = 0.2);

/// ||[R, Q_x] Phi_m|| / ||Q_x Phi_m|| on an N-point grid.
double commutator_residual(Reflection which, int m, int n_points);

/// <Q_x^2> in Phi_m computed as ||Q_x Phi_m||^2 on the grid.
double posmom_second_moment(int m, int n_points = 4096);

struct Reconstruction {
  CircleState state;
  double l2_residual;
};

/// Trapezoidal synthesis Phi(phi) = sum over sectors of
/// int c_s(lambda) psi^s_lambda(phi) dlambda on a uniform lambda grid,
/// compared against Phi_m on an n_points grid. An empty grid gives the zero
/// state and residual ||Phi_m|| = 1.
Reconstruction reconstruct(int m, std::span<const double> lambda_grid,
                           const QuadratureConfig &cfg = {}, int n_points = 2048);

/// Uniform grid lo, lo + step, ..., up to hi.
std::vector<double> uniform_grid(double lo, double hi, double step);

/// Overlap of the wave packets int g(lambda) psi^{s}_lambda dlambda for two
/// sectors, over the whole circle. g must be supported on |lambda| <= 10
/// and normalized, so the result approximates delta_{s1 s2}.
Complex sector_orthogonality(const std::function<Complex(double)> &window,
                             ParitySector s1, ParitySector s2,
                             const QuadratureConfig &cfg = {}, int n_points = 2048);

} // namespace posmom::oracle
