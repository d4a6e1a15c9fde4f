#include "dppln/grating.hpp"
#include "dppln/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace dppln::grating {

using std::numbers::pi;

namespace {
constexpr double wall_coincidence_tol_um = 1e-9;
constexpr double order_match_tol = 1e-9; // rad/um
} // namespace

void PolingDesign::validate() const {
  if (!(period1_um > 0.0) || !(period2_um > period1_um))
    throw Error("poling design: need 0 < period1 < period2");
  if (!(duty1 > 0.0 && duty1 < 1.0 && duty2 > 0.0 && duty2 < 1.0))
    throw Error("poling design: duty cycles must be in (0,1)");
  if (!(length_cm > 0.0))
    throw Error("poling design: length must be positive");
}

int DomainPattern::sign_at(double x_um) const {
  const auto it = std::upper_bound(walls_um.begin(), walls_um.end(), x_um);
  const auto flips = std::distance(walls_um.begin(), it);
  return (flips % 2 == 0) ? starting_sign : -starting_sign;
}

double axis_coefficient(int m, double duty) {
  if (m == 0)
    throw ZeroOrderUnsupported("square-wave DC term requested; only m != 0 orders are expanded");
  return 2.0 / (m * pi) * std::sin(m * pi * duty);
}

double fourier_coefficient(int m, int n, double duty1, double duty2) {
  return axis_coefficient(m, duty1) * axis_coefficient(n, duty2);
}

double reciprocal_vector(int m, int n, double period1_um, double period2_um) {
  if (!(period1_um > 0.0) || !(period2_um > 0.0))
    throw Error("reciprocal_vector: periods must be positive");
  return 2.0 * pi * (m / period1_um + n / period2_um);
}

namespace {

// Walls of sign[cos(2 pi x / period) - cos(pi duty)] in (0, length):
// down-crossing at period*(k + duty/2), up-crossing at period*(k + 1 - duty/2).
void factor_walls(double period, double duty, double length, std::vector<double>& out) {
  for (long k = 0;; ++k) {
    const double down = period * (k + 0.5 * duty);
    const double up = period * (k + 1.0 - 0.5 * duty);
    if (down < length && down > 0.0) out.push_back(down);
    if (up < length && up > 0.0) out.push_back(up);
    if (down >= length && up >= length) break;
  }
}

} // namespace

DomainPattern synthesize_pattern(const PolingDesign& design) {
  design.validate();
  const double length = design.length_um();
  std::vector<double> walls;
  factor_walls(design.period1_um, design.duty1, length, walls);
  factor_walls(design.period2_um, design.duty2, length, walls);
  std::sort(walls.begin(), walls.end());

  // coincident walls flip the sign twice and annihilate
  std::vector<double> merged;
  merged.reserve(walls.size());
  for (std::size_t i = 0; i < walls.size();) {
    if (i + 1 < walls.size() && walls[i + 1] - walls[i] <= wall_coincidence_tol_um) {
      i += 2;
    } else {
      merged.push_back(walls[i]);
      ++i;
    }
  }

  DomainPattern pattern;
  pattern.length_um = length;
  pattern.starting_sign = +1; // both cosine-centered factors start positive
  pattern.walls_um = std::move(merged);
  return pattern;
}

std::complex<double> spectrum_amplitude(const DomainPattern& pattern, double k_rad_per_um) {
  if (k_rad_per_um < 0.0)
    throw Error("spectrum_amplitude: K must be >= 0");
  const double L = pattern.length_um;
  int sign = pattern.starting_sign;
  double a = 0.0;
  std::complex<double> acc = 0.0;
  const std::complex<double> jK(0.0, k_rad_per_um);
  auto segment = [&](double from, double to, int s) -> std::complex<double> {
    if (k_rad_per_um == 0.0) return double(s) * (to - from);
    // integral of exp(-i K x) over [from, to]
    return double(s) * (std::exp(-jK * to) - std::exp(-jK * from)) / (-jK);
  };
  for (double wall : pattern.walls_um) {
    acc += segment(a, wall, sign);
    a = wall;
    sign = -sign;
  }
  acc += segment(a, L, sign);
  return acc / L;
}

namespace {

// Axis coefficient with the DC term included: the m = 0 component of a
// duty-D square wave is 2D - 1 (zero at duty 0.5). Used by the
// coincidence audit, where K_{0,n} orders genuinely collide for rational
// period ratios and asymmetric duties.
double dc_aware_axis_coefficient(int m, double duty) {
  return (m == 0) ? 2.0 * duty - 1.0 : axis_coefficient(m, duty);
}

} // namespace

std::vector<FourierOrder> coincident_orders(double k_target_rad_per_um,
                                            const PolingDesign& design, int cutoff) {
  if (cutoff < 1) throw Error("coincident_orders: cutoff must be >= 1");
  design.validate();
  std::vector<FourierOrder> out;
  for (int m = -cutoff; m <= cutoff; ++m) {
    // K matches only at one integer n per m
    const double n_exact = (k_target_rad_per_um / (2.0 * pi) - double(m) / design.period1_um) *
                           design.period2_um;
    const long n = std::lround(n_exact);
    if (std::abs(n) > cutoff) continue;
    const double k = reciprocal_vector(m, int(n), design.period1_um, design.period2_um);
    if (std::abs(k - k_target_rad_per_um) > order_match_tol) continue;
    const double g = dc_aware_axis_coefficient(m, design.duty1) *
                     dc_aware_axis_coefficient(int(n), design.duty2);
    if (g == 0.0) continue; // vanishing orders carry no efficiency
    FourierOrder order;
    order.m = m;
    order.n = int(n);
    order.g = g;
    order.k_rad_per_um = k;
    out.push_back(order);
  }
  std::sort(out.begin(), out.end(), [](const FourierOrder& a, const FourierOrder& b) {
    if (std::abs(a.g) != std::abs(b.g)) return std::abs(a.g) > std::abs(b.g);
    if (a.m != b.m) return a.m < b.m;
    return a.n < b.n;
  });
  return out;
}

double effective_g(double k_target_rad_per_um, const PolingDesign& design, int cutoff) {
  double sum = 0.0;
  for (const auto& order : coincident_orders(k_target_rad_per_um, design, cutoff))
    sum += order.g;
  return sum;
}

void export_segments(const DomainPattern& pattern, std::ostream& os) {
  int sign = pattern.starting_sign;
  double a = 0.0;
  char line[96];
  auto emit = [&](double from, double to, int s) {
    std::snprintf(line, sizeof line, "%.9g,%.9g,%+d\n", from, to, s);
    os << line;
  };
  for (double wall : pattern.walls_um) {
    emit(a, wall, sign);
    a = wall;
    sign = -sign;
  }
  emit(a, pattern.length_um, sign);
}

} // namespace dppln::grating
