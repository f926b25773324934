#pragma once

// Uniform receiver placement on the room disc (Bob) and on the annulus outside
// the protected zone (Eve). Only the radial coordinate is ever produced: every
// downstream quantity depends on the horizontal distance to the LED alone.

namespace vlcsec {

/// Room disc of radius D, protected zone of radius rho, LED height l (metres).
struct DeploymentGeometry {
  double D = 0.0;
  double rho = 0.0;
  double l = 0.0;

  /// Throws ValidationError unless D > 0, l > 0 and 0 <= rho < D.
  void validate() const;
};

// Radial densities (1/m). Both supports are closed intervals.
double pdf_radius_bob(double r, const DeploymentGeometry& geom);
double pdf_radius_eve(double r, const DeploymentGeometry& geom);

double cdf_radius_bob(double r, const DeploymentGeometry& geom);
double cdf_radius_eve(double r, const DeploymentGeometry& geom);

// Inverse-CDF samplers; u must lie in [0, 1).
double sample_radius_bob(double u, const DeploymentGeometry& geom);
double sample_radius_eve(double u, const DeploymentGeometry& geom);

}  // namespace vlcsec
