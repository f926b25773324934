#include "vlcsec/geometry.hpp"

#include <cmath>
#include <sstream>

#include "vlcsec/error.hpp"

namespace vlcsec {

void DeploymentGeometry::validate() const {
  std::ostringstream msg;
  if (!std::isfinite(D) || D <= 0.0) {
    msg << "geometry.D must be > 0 (got " << D << ")";
  } else if (!std::isfinite(l) || l <= 0.0) {
    msg << "geometry.l must be > 0 (got " << l << ")";
  } else if (!std::isfinite(rho) || rho < 0.0 || rho >= D) {
    msg << "geometry.rho must satisfy 0 <= rho < D (got rho=" << rho << ", D=" << D << ")";
  } else {
    return;
  }
  throw ValidationError(msg.str());
}

namespace {

void check_unit_interval(double u) {
  if (!std::isfinite(u) || u < 0.0 || u >= 1.0) {
    std::ostringstream msg;
    msg << "uniform variate must lie in [0, 1) (got " << u << ")";
    throw InputError(msg.str());
  }
}

}  // namespace

double pdf_radius_bob(double r, const DeploymentGeometry& geom) {
  detail::require_finite(r, "r");
  if (r < 0.0 || r > geom.D) return 0.0;
  return 2.0 * r / (geom.D * geom.D);
}

double pdf_radius_eve(double r, const DeploymentGeometry& geom) {
  detail::require_finite(r, "r");
  if (r < geom.rho || r > geom.D) return 0.0;
  return 2.0 * r / (geom.D * geom.D - geom.rho * geom.rho);
}

double cdf_radius_bob(double r, const DeploymentGeometry& geom) {
  detail::require_finite(r, "r");
  if (r <= 0.0) return 0.0;
  if (r >= geom.D) return 1.0;
  return (r * r) / (geom.D * geom.D);
}

double cdf_radius_eve(double r, const DeploymentGeometry& geom) {
  detail::require_finite(r, "r");
  if (r <= geom.rho) return 0.0;
  if (r >= geom.D) return 1.0;
  const double rho2 = geom.rho * geom.rho;
  return (r * r - rho2) / (geom.D * geom.D - rho2);
}

double sample_radius_bob(double u, const DeploymentGeometry& geom) {
  check_unit_interval(u);
  return geom.D * std::sqrt(u);
}

double sample_radius_eve(double u, const DeploymentGeometry& geom) {
  check_unit_interval(u);
  if (geom.rho == 0.0) return sample_radius_bob(u, geom);
  const double rho2 = geom.rho * geom.rho;
  return std::sqrt(rho2 + (geom.D * geom.D - rho2) * u);
}

}  // namespace vlcsec
