#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace dppln::grating {

/// Dual-periodic poling: the domain sign is the product of two
/// cosine-centered square waves with periods period1 < period2. Duty is
/// the positive fraction of each period.
struct PolingDesign {
  double period1_um = 0.0;
  double period2_um = 0.0;
  double duty1 = 0.5;
  double duty2 = 0.5;
  double length_cm = 0.0;

  double length_um() const { return length_cm * 1e4; }
  void validate() const; // 0 < period1 < period2, duties in (0,1), length > 0
};

struct FourierOrder {
  int m = 0;
  int n = 0;
  double g = 0.0;          // signed Fourier coefficient
  double k_rad_per_um = 0.0;
};

/// Real-space sign pattern: strictly increasing wall positions in
/// [0, length]; the sign alternates at every wall.
struct DomainPattern {
  double length_um = 0.0;
  int starting_sign = +1;
  std::vector<double> walls_um;

  int sign_at(double x_um) const;
};

/// Coefficient of one duty-cycle square-wave axis: (2/(m pi)) sin(m pi D).
/// m = 0 (the DC term) is not part of the expansion handled here and
/// throws ZeroOrderUnsupported.
double axis_coefficient(int m, double duty);

/// G_{m,n} = product of the two axis coefficients; duty 0.5 reduces to
/// (4/(m n pi^2)) sin(m pi/2) sin(n pi/2).
double fourier_coefficient(int m, int n, double duty1, double duty2);

/// K_{m,n} = 2 pi m / period1 + 2 pi n / period2, in rad/um.
double reciprocal_vector(int m, int n, double period1_um, double period2_um);

/// Sign changes of f1(x) * f2(x) over [0, length]; walls present in both
/// factors annihilate.
DomainPattern synthesize_pattern(const PolingDesign& design);

/// (1/L) * integral of f(x) exp(-i K x) dx, evaluated segment by segment
/// in closed form (no sampling error). Verification oracle for the
/// Fourier expansion.
std::complex<double> spectrum_amplitude(const DomainPattern& pattern, double k_rad_per_um);

/// All orders with |m|, |n| <= cutoff whose K matches k_target within
/// 1e-9 rad/um, sorted by |G| descending. Rational period ratios make
/// distinct orders land on one K; their coefficients add.
std::vector<FourierOrder> coincident_orders(double k_target_rad_per_um,
                                            const PolingDesign& design, int cutoff);

/// Sum of the coincident-order coefficients at k_target ("effective G").
/// cutoff = 1 recovers the single-order treatment.
double effective_g(double k_target_rad_per_um, const PolingDesign& design, int cutoff);

/// Plain-text segment list (start_um, end_um, sign), one segment per line,
/// 9 significant digits. Fabrication-toolchain handoff format.
void export_segments(const DomainPattern& pattern, std::ostream& os);

} // namespace dppln::grating
