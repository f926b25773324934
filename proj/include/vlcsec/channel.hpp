#pragma once

// Lambertian line-of-sight gain between the ceiling LED and a receiver on the
// floor plane, with transceiver normals vertical (cos(phi) = cos(psi) = l/d).

#include <optional>

#include "vlcsec/geometry.hpp"

namespace vlcsec {

struct LambertianParams {
  double m = 1.0;   ///< Lambertian order
  double A = 0.0;   ///< photodiode area (m^2)
  double Ts = 1.0;  ///< optical filter gain
  double g = 1.0;   ///< concentrator gain
  std::optional<double> psi_c;  ///< FOV half-angle (rad); only used as a validity check

  void validate() const;
};

/// Support of the gain PDFs and their normalisation constants.
///   v_min = H(D), v_mid = H(rho), v_max = H(0);
///   Bob's gain lives on [v_min, v_max], Eve's on [v_min, v_mid].
struct ChannelBounds {
  double v_min = 0.0;
  double v_mid = 0.0;
  double v_max = 0.0;
  double xi1 = 0.0;  ///< Bob's density prefactor
  double xi2 = 0.0;  ///< Eve's density prefactor
};

/// (m+1) A Ts g l^(m+1) / (2 pi): the gain at unit (r^2 + l^2).
double gain_constant(const LambertianParams& p, const DeploymentGeometry& geom);

double channel_gain(double r, const LambertianParams& p, const DeploymentGeometry& geom);

/// Throws ValidationError when psi_c is set and the room edge falls outside the FOV.
ChannelBounds compute_bounds(const LambertianParams& p, const DeploymentGeometry& geom);

// Gain densities h^(-2/(m+3)-1) scaled by xi1 / xi2. Zero off-support, InputError for h <= 0.
double pdf_gain_bob(double h, const ChannelBounds& b, double m);
double pdf_gain_eve(double h, const ChannelBounds& b, double m);

double cdf_gain_bob(double h, const ChannelBounds& b, double m);
double cdf_gain_eve(double h, const ChannelBounds& b, double m);

/// Estimated gain 10^(eta/10) h. With a bound configured, |eta| > epsilon is rejected.
double apply_csi_uncertainty(double h, double eta_db, std::optional<double> epsilon_db = std::nullopt);

}  // namespace vlcsec
