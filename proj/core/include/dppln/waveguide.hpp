#pragma once

#include "dppln/material.hpp"

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <span>
#include <vector>

namespace dppln::waveguide {

/// Ti-indiffused channel guide. The index contrast is separable,
///   dn(y, z) = delta_n_max * g(y) * f(z),
/// with g a symmetric sum of error functions of the strip width (lateral
/// diffusion length defaults to the depth) and f a half-Gaussian in depth
/// (f = exp(-(z/depth)^2) for z >= 0, zero in the cover). The profile is
/// applied identically to both polarizations.
struct WaveguideGeometry {
  double width_um = 10.0;
  double depth_um = 10.0;
  double delta_n_max = 0.003;
  double lateral_diffusion_um = 0.0; // 0 means "use depth_um"

  double lateral_diffusion() const {
    return lateral_diffusion_um > 0.0 ? lateral_diffusion_um : depth_um;
  }
  void validate() const; // width, depth > 0; 0 <= delta_n_max < 0.1
  std::uint64_t key() const; // bit-level digest of the parameters
};

/// Fundamental (0,0) Hermite-Gauss trial solution,
///   psi(y, z) = norm * exp(-y^2 / (2 w_y^2)) * exp(-z^2 / (2 w_z^2)),
/// with norm fixed so the transverse power integral is 1.
struct GuidedMode {
  Polarization pol = Polarization::O;
  double lambda_um = 0.0;
  double temp_c = 0.0;
  double n_eff = 0.0;
  double n_bulk = 0.0;
  double w_y_um = 0.0;
  double w_z_um = 0.0;
  double norm = 0.0;
  std::uint64_t geometry_key = 0;
};

/// beta = 2 pi n_eff / lambda, in rad/um.
double propagation_constant(const GuidedMode& mode);

/// Transverse integral of the product of unit-power-normalized profiles.
/// Two modes give the EO overlap in (0, 1]; three modes give the SPDC
/// overlap in 1/um. Throws GeometryMismatch if the modes belong to
/// different geometries.
double overlap_integral(std::span<const GuidedMode> modes);

/// Variational effective-index solver with a per-instance memoization
/// cache keyed by (polarization, lambda, T). The cache is safe for
/// concurrent read/insert and never changes results: a hit is bit-identical
/// to recomputation because the solve is deterministic.
class ModeSolver {
public:
  ModeSolver(material::SellmeierModel sellmeier, WaveguideGeometry geometry,
             double guidance_cutoff = 1e-7);

  const WaveguideGeometry& geometry() const { return geometry_; }
  const material::SellmeierModel& sellmeier() const { return sellmeier_; }
  double guidance_cutoff() const { return guidance_cutoff_; }

  /// Fundamental mode maximizing the variational effective index over the
  /// trial widths. Throws NoGuidedMode when no trial function lifts n_eff
  /// above the bulk index by more than the guidance cutoff.
  GuidedMode solve(Polarization pol, double lambda_um, double temp_c) const;

  /// dbeta/domega in s/m, by central finite difference over omega with
  /// step halving until the relative change is below 1e-6.
  double dispersion_parameter(Polarization pol, double lambda_um, double temp_c) const;

  /// Inject a previously solved mode (persisted cache path). The entry is
  /// rejected if it does not belong to this solver's geometry.
  void preload(const GuidedMode& mode) const;

  std::vector<GuidedMode> cached_modes() const;
  std::size_t cache_size() const;
  std::size_t recompute_count() const { return recomputes_; }

private:
  GuidedMode solve_uncached(Polarization pol, double lambda_um, double temp_c) const;

  material::SellmeierModel sellmeier_;
  WaveguideGeometry geometry_;
  double guidance_cutoff_;
  mutable std::map<std::tuple<int, std::uint64_t, std::uint64_t>, GuidedMode> cache_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::size_t recomputes_ = 0;
};

namespace detail {

/// The variational objective n_eff^2(w_y, w_z). Exposed so tests can
/// brute-force the trial-width plane against the optimizer.
double variational_n_eff_sq(const material::SellmeierModel& sellmeier,
                            const WaveguideGeometry& geometry, Polarization pol,
                            double lambda_um, double temp_c, double w_y_um, double w_z_um);

/// psi^2-weighted moments of the profile factors (closed forms except for
/// <g^2>, which uses fixed-order Gauss-Hermite quadrature).
double lateral_moment(const WaveguideGeometry& g, double w_um);
double lateral_sq_moment(const WaveguideGeometry& g, double w_um);
double depth_moment(const WaveguideGeometry& g, double w_um);
double depth_sq_moment(const WaveguideGeometry& g, double w_um);

} // namespace detail

} // namespace dppln::waveguide
