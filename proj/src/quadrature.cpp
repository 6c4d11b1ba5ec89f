#include "posmom/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace posmom {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("QuadratureConfig: tolerances must be > 0");
  if (!(line_truncation > 10.0))
    throw std::invalid_argument("QuadratureConfig: line_truncation must be > 10");
  if (max_subdivisions < 16)
    throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 16");
  if (!(singularity_margin > 0.0))
    throw std::invalid_argument("QuadratureConfig: singularity_margin must be > 0");
}

std::string QuadratureConfig::fingerprint() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(6);
  os << "abs_tol=" << abs_tol << ";rel_tol=" << rel_tol
     << ";u_max=" << line_truncation << ";max_sub=" << max_subdivisions
     << ";margin=" << singularity_margin;
  return os.str();
}

namespace quadrature {

namespace {

constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Complex value;
  double error;
  bool operator<(const Panel &o) const { return error < o.error; }
};

Panel gauss_kronrod(const LineIntegrand &f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Complex fc = f(center);
  Complex kronrod = fc * kronrod_weights[7];
  Complex gauss = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const Complex pair = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[j] * pair;
    if (j % 2 == 1)
      gauss += gauss_weights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

double target(const QuadratureConfig &cfg, Complex value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

} // namespace

IntegralResult integrate_interval(const LineIntegrand &f, double a, double b,
                                  const QuadratureConfig &cfg,
                                  double frequency_hint) {
  cfg.validate();
  if (!(b > a))
    return {};

  const double periods = std::abs(frequency_hint) * (b - a) /
                         (2.0 * std::numbers::pi);
  const int initial =
      std::max(1, static_cast<int>(std::ceil(std::min(periods, 1e6))));
  const int cap = std::max(cfg.max_subdivisions, 4 * initial);

  std::priority_queue<Panel> heap;
  Complex total = 0.0;
  double error = 0.0;
  const double width = (b - a) / initial;
  for (int i = 0; i < initial; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial) ? b : a + (i + 1) * width;
    Panel p = gauss_kronrod(f, lo, hi);
    total += p.value;
    error += p.error;
    heap.push(p);
  }

  int panels = initial;
  while (error > target(cfg, total) && panels < cap) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b))
      break; // panel cannot be split further in double precision
    heap.pop();
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Re-sum so the result does not carry the drift of the running updates.
  std::vector<Panel> all;
  all.reserve(heap.size());
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel &x, const Panel &y) { return x.a < y.a; });
  total = 0.0;
  error = 0.0;
  for (const Panel &p : all) {
    total += p.value;
    error += p.error;
  }

  IntegralResult result{total, error, 15L * (2L * panels - initial)};
  if (error > target(cfg, total))
    throw QuadratureError("integrate_interval: tolerance not met on [" +
                              std::to_string(a) + ", " + std::to_string(b) +
                              "], achieved error " + std::to_string(error),
                          result);
  return result;
}

double line_tail_bound(double f_left, double f_right) {
  return 2.0 * (f_left + f_right);
}

IntegralResult integrate_line(const LineIntegrand &f,
                              const QuadratureConfig &cfg,
                              double frequency_hint) {
  cfg.validate();
  const double u_max = cfg.line_truncation;
  const double tail = line_tail_bound(std::abs(f(-u_max)), std::abs(f(u_max)));

  QuadratureConfig inner = cfg;
  inner.abs_tol = std::max(cfg.abs_tol - tail, 0.5 * cfg.abs_tol);
  IntegralResult r;
  try {
    r = integrate_interval(f, -u_max, u_max, inner, frequency_hint);
  } catch (QuadratureError &e) {
    e.best_estimate.error_estimate += tail;
    throw;
  }
  r.error_estimate += tail;
  r.evaluations += 2;
  if (r.error_estimate > target(cfg, r.value))
    throw QuadratureError("integrate_line: truncation tail exceeds tolerance", r);
  return r;
}

namespace {

// One tanh-sinh node: distance to the nearer endpoint of (0, pi/2), which
// side that is, and the weight d phi / d t.
struct DeNode {
  double near;
  bool left;
  double weight;
};

DeNode de_node(double t) {
  constexpr double quarter_pi = std::numbers::pi / 4.0;
  const double s = 0.5 * std::numbers::pi * std::sinh(t);
  const double e = std::exp(-2.0 * std::abs(s));
  const double denom = 1.0 + e;
  // phi = pi/4 (1 + tanh s); nearer endpoint distance = pi/2 * e / (1 + e).
  const double near = 2.0 * quarter_pi * e / denom;
  const double sech2 = 4.0 * e / (denom * denom);
  const double weight = quarter_pi * sech2 * 0.5 * std::numbers::pi * std::cosh(t);
  return {near, t < 0.0, weight};
}

QuadrantPoint to_point(const DeNode &n) {
  const double far = 0.5 * std::numbers::pi - n.near;
  return n.left ? QuadrantPoint{n.near, far} : QuadrantPoint{far, n.near};
}

constexpr double de_t_max = 6.1; // beyond this the node distance underflows

} // namespace

IntegralResult integrate_singular_quadrant(const QuadrantIntegrand &f,
                                           const QuadratureConfig &cfg) {
  cfg.validate();
  constexpr int max_level = 12;
  constexpr int min_level = 4;

  long evals = 0;
  auto add = [&](double t) -> Complex {
    const DeNode n = de_node(t);
    if (n.near <= 0.0 || n.weight <= 0.0)
      return 0.0;
    ++evals;
    return f(to_point(n)) * n.weight;
  };

  // Level 0: unit step.
  double h = 1.0;
  Complex sum = add(0.0);
  for (int k = 1; k * h <= de_t_max; ++k)
    sum += add(k * h) + add(-k * h);
  Complex estimate = sum * h;

  double error = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (int k = 1; k * h <= de_t_max; k += 2)
      sum += add(k * h) + add(-k * h);
    const Complex next = sum * h;
    error = std::abs(next - estimate);
    estimate = next;
    if (level >= min_level && error <= target(cfg, estimate))
      return {estimate, error, evals};
  }
  throw QuadratureError("integrate_singular_quadrant: tolerance not met, error " +
                            std::to_string(error),
                        {estimate, error, evals});
}

Complex integrate_circle(const CircleIntegrand &f, int n_points) {
  if (n_points < 8)
    throw std::invalid_argument("integrate_circle: need at least 8 points");
  constexpr double t_max = 4.5;
  const int per_quadrant = n_points / 4;
  const double h = 2.0 * t_max / (per_quadrant + 1);

  // Nodes are shared by all quadrants.
  std::vector<DeNode> nodes;
  nodes.reserve(per_quadrant);
  for (int k = 1; k <= per_quadrant; ++k) {
    const DeNode n = de_node(-t_max + k * h);
    if (n.near > 0.0 && n.weight > 0.0)
      nodes.push_back(n);
  }

  Complex total = 0.0;
  for (int q = 0; q < 4; ++q) {
    Complex part = 0.0;
    const double start = q * 0.5 * std::numbers::pi;
    for (const DeNode &n : nodes) {
      const QuadrantPoint local = to_point(n);
      part += f(CirclePoint{start + local.phi, q, local}) * n.weight;
    }
    total += part * h;
  }
  return total;
}

} // namespace quadrature
} // namespace posmom
