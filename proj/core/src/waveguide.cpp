#include "dppln/waveguide.hpp"
#include "dppln/errors.hpp"
#include "dppln/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dppln::waveguide {

using std::numbers::pi;

void WaveguideGeometry::validate() const {
  if (!(width_um > 0.0) || !(depth_um > 0.0))
    throw Error("waveguide geometry: width and depth must be positive");
  if (!(delta_n_max >= 0.0) || !(delta_n_max < 0.1))
    throw Error("waveguide geometry: delta_n_max must be in [0, 0.1)");
  if (lateral_diffusion_um < 0.0)
    throw Error("waveguide geometry: lateral diffusion length must be >= 0");
}

std::uint64_t WaveguideGeometry::key() const {
  auto mix = [](std::uint64_t h, double v) {
    h ^= std::bit_cast<std::uint64_t>(v);
    h *= 0x100000001b3ull;
    return h;
  };
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = mix(h, width_um);
  h = mix(h, depth_um);
  h = mix(h, delta_n_max);
  h = mix(h, lateral_diffusion());
  return h;
}

namespace detail {

double lateral_moment(const WaveguideGeometry& g, double w_um) {
  const double a = 0.5 * g.width_um;
  const double l = g.lateral_diffusion();
  return std::erf(a / std::sqrt(l * l + w_um * w_um)) / std::erf(a / l);
}

double lateral_sq_moment(const WaveguideGeometry& g, double w_um) {
  const double a = 0.5 * g.width_um;
  const double l = g.lateral_diffusion();
  const double e0 = std::erf(a / l);
  const auto& gh = numerics::gauss_hermite(64);
  double acc = 0.0;
  for (const auto& [t, weight] : gh) {
    const double y = w_um * t;
    const double gy = (std::erf((a - y) / l) + std::erf((a + y) / l)) / (2.0 * e0);
    acc += weight * gy * gy;
  }
  return acc / std::sqrt(pi);
}

double depth_moment(const WaveguideGeometry& g, double w_um) {
  const double d = g.depth_um;
  return d / (2.0 * std::sqrt(d * d + w_um * w_um));
}

double depth_sq_moment(const WaveguideGeometry& g, double w_um) {
  const double d = g.depth_um;
  return d / (2.0 * std::sqrt(d * d + 2.0 * w_um * w_um));
}

double variational_n_eff_sq(const material::SellmeierModel& sellmeier,
                            const WaveguideGeometry& geometry, Polarization pol,
                            double lambda_um, double temp_c, double w_y_um, double w_z_um) {
  const double n_b = sellmeier.index(pol, lambda_um, temp_c);
  const double dn = geometry.delta_n_max;
  const double k0 = 2.0 * pi / lambda_um;
  const double potential = 2.0 * n_b * dn * lateral_moment(geometry, w_y_um) * depth_moment(geometry, w_z_um) +
                           dn * dn * lateral_sq_moment(geometry, w_y_um) * depth_sq_moment(geometry, w_z_um);
  const double kinetic = (1.0 / (w_y_um * w_y_um) + 1.0 / (w_z_um * w_z_um)) / (2.0 * k0 * k0);
  return n_b * n_b + potential - kinetic;
}

} // namespace detail

double propagation_constant(const GuidedMode& mode) {
  return 2.0 * pi * mode.n_eff / mode.lambda_um;
}

namespace {

// 1D profile of one axis, unit power: integral of phi^2 dy = 1.
double axis_profile(double w, double y) {
  return std::exp(-y * y / (2.0 * w * w)) / std::sqrt(std::sqrt(pi) * w);
}

double axis_overlap(std::span<const GuidedMode> modes, bool lateral) {
  double w_max = 0.0;
  for (const auto& m : modes) w_max = std::max(w_max, lateral ? m.w_y_um : m.w_z_um);
  const double window = 6.0 * w_max;
  auto integrand = [&](double y) {
    double p = 1.0;
    for (const auto& m : modes) p *= axis_profile(lateral ? m.w_y_um : m.w_z_um, y);
    return p;
  };
  return numerics::adaptive_simpson(integrand, -window, window, 1e-9, 1e-14);
}

} // namespace

double overlap_integral(std::span<const GuidedMode> modes) {
  if (modes.size() != 2 && modes.size() != 3)
    throw Error("overlap_integral expects 2 or 3 modes");
  for (const auto& m : modes)
    if (m.geometry_key != modes[0].geometry_key)
      throw GeometryMismatch("overlap_integral: modes come from different geometries");
  return axis_overlap(modes, true) * axis_overlap(modes, false);
}

ModeSolver::ModeSolver(material::SellmeierModel sellmeier, WaveguideGeometry geometry,
                       double guidance_cutoff)
    : sellmeier_(std::move(sellmeier)), geometry_(geometry), guidance_cutoff_(guidance_cutoff) {
  geometry_.validate();
}

GuidedMode ModeSolver::solve(Polarization pol, double lambda_um, double temp_c) const {
  const auto key = std::make_tuple(int(pol), std::bit_cast<std::uint64_t>(lambda_um),
                                   std::bit_cast<std::uint64_t>(temp_c));
  {
    std::shared_lock lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  GuidedMode mode = solve_uncached(pol, lambda_um, temp_c);
  {
    std::unique_lock lock(cache_mutex_);
    ++recomputes_;
    cache_.emplace(key, mode); // first writer wins; all writers agree
  }
  return mode;
}

GuidedMode ModeSolver::solve_uncached(Polarization pol, double lambda_um, double temp_c) const {
  const double n_b = sellmeier_.index(pol, lambda_um, temp_c);

  constexpr double w_lo = 0.3, w_hi = 150.0, w_tol = 1e-4;
  double w_y = std::max(geometry_.width_um, geometry_.depth_um);
  double w_z = w_y;
  auto objective = [&](double wy, double wz) {
    return detail::variational_n_eff_sq(sellmeier_, geometry_, pol, lambda_um, temp_c, wy, wz);
  };
  // alternating golden-section sweeps, one trial axis at a time
  for (int sweep = 0; sweep < 80; ++sweep) {
    const auto [wy_new, fy] = numerics::golden_section_max(
        [&](double w) { return objective(w, w_z); }, w_lo, w_hi, w_tol);
    const auto [wz_new, fz] = numerics::golden_section_max(
        [&](double w) { return objective(wy_new, w); }, w_lo, w_hi, w_tol);
    const double move = std::max(std::abs(wy_new - w_y), std::abs(wz_new - w_z));
    w_y = wy_new;
    w_z = wz_new;
    if (move < 2.0 * w_tol) break;
  }

  const double n_eff_sq = objective(w_y, w_z);
  const double floor = n_b + guidance_cutoff_;
  if (!(n_eff_sq > floor * floor)) {
    std::ostringstream os;
    os << "no guided mode: pol " << to_string(pol) << ", lambda " << lambda_um
       << " um, T " << temp_c << " C (best n_eff does not clear the bulk index)";
    throw NoGuidedMode(os.str());
  }

  GuidedMode mode;
  mode.pol = pol;
  mode.lambda_um = lambda_um;
  mode.temp_c = temp_c;
  mode.n_eff = std::sqrt(n_eff_sq);
  mode.n_bulk = n_b;
  mode.w_y_um = w_y;
  mode.w_z_um = w_z;
  mode.norm = 1.0 / std::sqrt(pi * w_y * w_z);
  mode.geometry_key = geometry_.key();
  return mode;
}

double ModeSolver::dispersion_parameter(Polarization pol, double lambda_um, double temp_c) const {
  const double c_um = material::MaterialConstants{}.c_m_per_s * material::microns_per_meter;
  const double omega0 = 2.0 * pi * c_um / lambda_um; // rad/s
  auto beta_of_omega = [&](double omega) {
    const double lam = 2.0 * pi * c_um / omega;
    return propagation_constant(solve(pol, lam, temp_c)); // rad/um
  };
  const double beta_prime_um = numerics::central_diff_step_halving(
      beta_of_omega, omega0, 5e-4 * omega0, 1e-6, 20); // s/um
  return beta_prime_um * material::microns_per_meter;  // s/m
}

void ModeSolver::preload(const GuidedMode& mode) const {
  if (mode.geometry_key != geometry_.key())
    throw GeometryMismatch("preload: mode belongs to a different geometry");
  const auto key = std::make_tuple(int(mode.pol), std::bit_cast<std::uint64_t>(mode.lambda_um),
                                   std::bit_cast<std::uint64_t>(mode.temp_c));
  std::unique_lock lock(cache_mutex_);
  cache_.emplace(key, mode);
}

std::vector<GuidedMode> ModeSolver::cached_modes() const {
  std::shared_lock lock(cache_mutex_);
  std::vector<GuidedMode> out;
  out.reserve(cache_.size());
  for (const auto& [k, v] : cache_) out.push_back(v);
  return out;
}

std::size_t ModeSolver::cache_size() const {
  std::shared_lock lock(cache_mutex_);
  return cache_.size();
}

} // namespace dppln::waveguide
