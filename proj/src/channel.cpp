#include "vlcsec/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vlcsec/error.hpp"

namespace vlcsec {

void LambertianParams::validate() const {
  std::ostringstream msg;
  if (!std::isfinite(m) || m < 1.0) {
    msg << "lambertian.m must be >= 1 (got " << m << ")";
  } else if (!std::isfinite(A) || A <= 0.0) {
    msg << "lambertian.A must be > 0 (got " << A << ")";
  } else if (!std::isfinite(Ts) || Ts <= 0.0) {
    msg << "lambertian.Ts must be > 0 (got " << Ts << ")";
  } else if (!std::isfinite(g) || g <= 0.0) {
    msg << "lambertian.g must be > 0 (got " << g << ")";
  } else if (psi_c && (!std::isfinite(*psi_c) || *psi_c <= 0.0 || *psi_c > std::numbers::pi / 2)) {
    msg << "lambertian.psi_c must lie in (0, pi/2] (got " << *psi_c << ")";
  } else {
    return;
  }
  throw ValidationError(msg.str());
}

double gain_constant(const LambertianParams& p, const DeploymentGeometry& geom) {
  return (p.m + 1.0) * p.A * p.Ts * p.g * std::pow(geom.l, p.m + 1.0) / (2.0 * std::numbers::pi);
}

double channel_gain(double r, const LambertianParams& p, const DeploymentGeometry& geom) {
  detail::require_finite(r, "r");
  if (r < 0.0) throw InputError("channel_gain: r must be >= 0");
  return gain_constant(p, geom) * std::pow(r * r + geom.l * geom.l, -(p.m + 3.0) / 2.0);
}

ChannelBounds compute_bounds(const LambertianParams& p, const DeploymentGeometry& geom) {
  p.validate();
  geom.validate();
  if (p.psi_c) {
    const double edge_angle = std::acos(geom.l / std::hypot(geom.D, geom.l));
    if (edge_angle > *p.psi_c) {
      std::ostringstream msg;
      msg << "lambertian.psi_c: incidence angle at the room edge (" << edge_angle
          << " rad) exceeds the field of view (" << *p.psi_c << " rad)";
      throw ValidationError(msg.str());
    }
  }
  const double k = 2.0 / (p.m + 3.0);
  const double ck = std::pow(gain_constant(p, geom), k);
  ChannelBounds b;
  b.v_min = channel_gain(geom.D, p, geom);
  b.v_mid = channel_gain(geom.rho, p, geom);
  b.v_max = channel_gain(0.0, p, geom);
  b.xi1 = k * ck / (geom.D * geom.D);
  b.xi2 = k * ck / (geom.D * geom.D - geom.rho * geom.rho);
  return b;
}

namespace {

double power_density(double h, double lo, double hi, double prefactor, double m) {
  detail::require_finite(h, "h");
  if (h <= 0.0) throw InputError("gain density: h must be > 0");
  if (h < lo || h > hi) return 0.0;
  return prefactor * std::pow(h, -2.0 / (m + 3.0) - 1.0);
}

double power_cdf(double h, double lo, double hi, double prefactor, double m) {
  detail::require_finite(h, "h");
  if (h <= lo) return 0.0;
  if (h >= hi) return 1.0;
  const double k = 2.0 / (m + 3.0);
  return prefactor / k * (std::pow(lo, -k) - std::pow(h, -k));
}

}  // namespace

double pdf_gain_bob(double h, const ChannelBounds& b, double m) {
  return power_density(h, b.v_min, b.v_max, b.xi1, m);
}

double pdf_gain_eve(double h, const ChannelBounds& b, double m) {
  return power_density(h, b.v_min, b.v_mid, b.xi2, m);
}

double cdf_gain_bob(double h, const ChannelBounds& b, double m) {
  return power_cdf(h, b.v_min, b.v_max, b.xi1, m);
}

double cdf_gain_eve(double h, const ChannelBounds& b, double m) {
  return power_cdf(h, b.v_min, b.v_mid, b.xi2, m);
}

double apply_csi_uncertainty(double h, double eta_db, std::optional<double> epsilon_db) {
  detail::require_finite(h, "h");
  detail::require_finite(eta_db, "eta");
  if (h <= 0.0) throw InputError("apply_csi_uncertainty: h must be > 0");
  if (epsilon_db && std::abs(eta_db) > *epsilon_db) {
    std::ostringstream msg;
    msg << "CSI uncertainty |eta| = " << std::abs(eta_db) << " dB exceeds the bound epsilon = "
        << *epsilon_db << " dB";
    throw ValidationError(msg.str());
  }
  return std::pow(10.0, eta_db / 10.0) * h;
}

}  // namespace vlcsec
