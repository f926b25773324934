#include "vlcsec/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "vlcsec/error.hpp"
#include "vlcsec/quadrature.hpp"

namespace vlcsec {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double x) {
  if (!(x > 0.0)) throw InputError("linear_to_db: value must be > 0");
  return 10.0 * std::log10(x);
}

void SecrecyContext::validate() const {
  std::ostringstream msg;
  if (!std::isfinite(xi) || xi <= 0.0 || xi > 1.0) {
    msg << "secrecy.xi must lie in (0, 1] (got " << xi << ")";
  } else if (!std::isfinite(P) || P <= 0.0) {
    msg << "secrecy.P must be > 0 (got " << P << ")";
  } else if (!std::isfinite(sigma2_b) || sigma2_b <= 0.0) {
    msg << "secrecy.sigma2_b must be > 0 (got " << sigma2_b << ")";
  } else if (!std::isfinite(sigma2_e) || sigma2_e <= 0.0) {
    msg << "secrecy.sigma2_e must be > 0 (got " << sigma2_e << ")";
  } else if (!std::isfinite(eta_b)) {
    msg << "secrecy.eta_b must be finite";
  } else if (!std::isfinite(eta_e)) {
    msg << "secrecy.eta_e must be finite";
  } else if (epsilon && (!std::isfinite(*epsilon) || *epsilon < 0.0)) {
    msg << "secrecy.epsilon must be >= 0 (got " << *epsilon << ")";
  } else if (epsilon && std::abs(eta_b) > *epsilon) {
    msg << "secrecy.eta_b: |eta_b| = " << std::abs(eta_b) << " exceeds epsilon = " << *epsilon;
  } else if (epsilon && std::abs(eta_e) > *epsilon) {
    msg << "secrecy.eta_e: |eta_e| = " << std::abs(eta_e) << " exceeds epsilon = " << *epsilon;
  } else {
    return;
  }
  throw ValidationError(msg.str());
}

LambdaContext SecrecyContext::lambda_context() const { return {xi, P, sigma2_b, sigma2_e}; }

namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;

// d such that alpha = d xi^2 P^2.
double d_bob(const SecrecyContext& ctx) {
  return kE * std::pow(10.0, ctx.eta_b / 5.0) / (2.0 * kPi * ctx.sigma2_b);
}
double d_eve(const SecrecyContext& ctx) { return std::pow(10.0, ctx.eta_e / 5.0) / ctx.sigma2_e; }

}  // namespace

SnrScale snr_scale(const SecrecyContext& ctx) {
  ctx.validate();
  const double xp2 = ctx.xi * ctx.xi * ctx.P * ctx.P;
  return {d_bob(ctx) * xp2, d_eve(ctx) * xp2};
}

double chi(const SecrecyContext& ctx) {
  ctx.validate();
  return std::pow(10.0, (ctx.eta_b - ctx.eta_e) / 10.0) * std::sqrt(kE) * std::sqrt(ctx.sigma2_e) /
         (std::sqrt(2.0 * kPi) * std::sqrt(ctx.sigma2_b));
}

namespace {

// C+ with the scales already resolved; the clamp only absorbs rounding at chi x = y.
double rate(double x, double y, const SnrScale& s) {
  return std::max(0.0, 0.5 * (std::log1p(s.alpha_b * x * x) - std::log1p(s.alpha_e * y * y)));
}

}  // namespace

SecrecyKernel::SecrecyKernel(const SecrecyContext& ctx) : chi_(vlcsec::chi(ctx)), scale_(snr_scale(ctx)) {}

double SecrecyKernel::operator()(double h_b, double h_e) const {
  if (chi_ * h_b < h_e) return 0.0;
  return rate(h_b, h_e, scale_);
}

double instantaneous_sc(double h_b, double h_e, const SecrecyContext& ctx) {
  detail::require_finite(h_b, "h_b");
  detail::require_finite(h_e, "h_e");
  if (h_b <= 0.0 || h_e <= 0.0) throw InputError("instantaneous_sc: gains must be > 0");
  return SecrecyKernel(ctx)(h_b, h_e);
}

// ---------------------------------------------------------------------------
// ASC

std::string_view to_string(AscRegime r) {
  switch (r) {
    case AscRegime::Zero: return "zero";
    case AscRegime::C1: return "C1";
    case AscRegime::C2: return "C2";
    case AscRegime::C3: return "C3";
    case AscRegime::C4: return "C4";
  }
  return "?";
}

AscRegime asc_regime(double chi_value, const ChannelBounds& b) {
  if (chi_value < b.v_min / b.v_max) return AscRegime::Zero;
  if (chi_value < b.v_mid / b.v_max) return AscRegime::C1;
  if (chi_value < 1.0) return AscRegime::C2;
  if (chi_value < b.v_mid / b.v_min) return AscRegime::C3;
  return AscRegime::C4;
}

double asc_prefactor(const ChannelBounds& b, double m) { return (m + 3.0) * b.xi1 * b.xi2 / 4.0; }

std::vector<LambdaTerm> asc_lambda_terms(AscRegime regime, const SecrecyContext& ctx,
                                         const ChannelBounds& b, double m) {
  const double c = chi(ctx);
  const double k = 2.0 / (m + 3.0);
  const double a2 = (m + 3.0) / 2.0;
  const double a4 = (m + 3.0) / 4.0;
  const double dB = d_bob(ctx);
  const double dE = d_eve(ctx);
  const double vmin_k = std::pow(b.v_min, -k);
  const double vmid_k = std::pow(b.v_mid, -k);
  const double vmax_k = std::pow(b.v_max, -k);
  const double chi_k = std::pow(c, k);

  switch (regime) {
    case AscRegime::Zero:
      return {};
    case AscRegime::C1:
      return {
          {vmin_k, a2, b.v_min / c, b.v_max, dB},
          {-1.0 / chi_k, a4, b.v_min / c, b.v_max, dB},
          {-chi_k, a4, b.v_min, c * b.v_max, dE},
          {vmax_k, a2, b.v_min, c * b.v_max, dE},
      };
    case AscRegime::C2:
      return {
          {vmin_k, a2, b.v_min / c, b.v_mid / c, dB},
          {-1.0 / chi_k, a4, b.v_min / c, b.v_mid / c, dB},
          {vmin_k - vmid_k, a2, b.v_mid / c, b.v_max, dB},
          {-chi_k, a4, b.v_min, b.v_mid, dE},
          {vmax_k, a2, b.v_min, b.v_mid, dE},
      };
    case AscRegime::C3: {
      const double edge_k = std::pow(b.v_mid / c, -k);
      return {
          {vmin_k, a2, b.v_min, b.v_mid / c, dB},
          {-1.0 / chi_k, a4, b.v_min, b.v_mid / c, dB},
          {-(vmin_k - edge_k), a2, b.v_min, c * b.v_min, dE},
          {-chi_k, a4, c * b.v_min, b.v_mid, dE},
          {edge_k, a2, c * b.v_min, b.v_mid, dE},
          {vmin_k - vmid_k, a2, b.v_mid / c, b.v_max, dB},
          {-(edge_k - vmax_k), a2, b.v_min, b.v_mid, dE},
      };
    }
    case AscRegime::C4:
      return {
          {vmin_k - vmid_k, a2, b.v_min, b.v_max, dB},
          {-(vmin_k - vmax_k), a2, b.v_min, b.v_mid, dE},
      };
  }
  return {};
}

namespace {

// Meijer-G part of lambda for an oriented interval (b > c flips the sign).
double oriented_g_part(const LambdaTerm& t, const LambdaContext& lctx) {
  if (t.b <= t.c) return lambda_parts(t.a, t.b, t.c, t.d, lctx).g_part;
  return -lambda_parts(t.a, t.c, t.b, t.d, lctx).g_part;
}

}  // namespace

double asc_branch(AscRegime regime, const SecrecyContext& ctx, const ChannelBounds& b, double m) {
  const auto lctx = ctx.lambda_context();
  quad::CompensatedSum sum;
  for (const auto& t : asc_lambda_terms(regime, ctx, b, m)) {
    sum += t.weight * oriented_g_part(t, lctx);
  }
  return asc_prefactor(b, m) * sum.value();
}

double asc_closed_form(const SecrecyContext& ctx, const ChannelBounds& b, double m) {
  const auto regime = asc_regime(chi(ctx), b);
  if (regime == AscRegime::Zero) return 0.0;
  try {
    return std::max(0.0, asc_branch(regime, ctx, b, m));
  } catch (const NumericError& e) {
    throw NumericError(std::string("asc_closed_form (regime ") + std::string(to_string(regime)) +
                       "): " + e.what());
  }
}

namespace {

const quad::Options kInner{.abs_tol = 0.0, .rel_tol = 1e-12, .max_intervals = 2000};
const quad::Options kOuter{.abs_tol = 0.0, .rel_tol = 1e-10, .max_intervals = 2000};

// Running bookkeeping for a nested integral whose inner values are nonnegative:
// the inner error contribution is bounded by (worst inner relative error) * |outer|.
struct NestedError {
  double worst_inner_rel = 0.0;
  void record(const quad::Result& r) {
    if (r.value != 0.0) worst_inner_rel = std::max(worst_inner_rel, r.abs_error / std::abs(r.value));
  }
};

// int_{lo}^{hi} g(t) w(t) dt over a power-law density w(t) = pref t^(-p-1), in log variables.
template <class G>
quad::Result power_law_integral(G&& g, double pref, double p, double lo, double hi,
                                const quad::Options& opt, const char* what) {
  auto f = [&](double u) {
    const double t = std::exp(u);
    return g(t) * pref * std::exp(-p * u);
  };
  return quad::integrate(f, std::log(lo), std::log(hi), opt, what);
}

}  // namespace

QuadratureEstimate asc_quadrature_estimate(const SecrecyContext& ctx, const ChannelBounds& b,
                                           double m) {
  const double c = chi(ctx);
  const auto regime = asc_regime(c, b);
  if (regime == AscRegime::Zero) return {};
  const auto s = snr_scale(ctx);
  const double k = 2.0 / (m + 3.0);
  NestedError nerr;

  // Bob outer on [xlo, xhi], Eve inner on [vmin, ytop(x)].
  auto bob_outer = [&](double xlo, double xhi, auto ytop) {
    auto inner = [&](double x) {
      const double yhi = ytop(x);
      if (yhi <= b.v_min) return 0.0;
      auto r = power_law_integral([&](double y) { return rate(x, y, s); }, b.xi2, k, b.v_min, yhi,
                                  kInner, "asc_quadrature (inner)");
      nerr.record(r);
      return r.value;
    };
    return power_law_integral(inner, b.xi1, k, xlo, xhi, kOuter, "asc_quadrature (outer)");
  };

  quad::Result total;
  switch (regime) {
    case AscRegime::C1:
      total = bob_outer(b.v_min / c, b.v_max, [&](double x) { return c * x; });
      break;
    case AscRegime::C2: {
      auto inner = [&](double y) {
        auto r = power_law_integral([&](double x) { return rate(x, y, s); }, b.xi1, k, y / c,
                                    b.v_max, kInner, "asc_quadrature (inner)");
        nerr.record(r);
        return r.value;
      };
      total = power_law_integral(inner, b.xi2, k, b.v_min, b.v_mid, kOuter, "asc_quadrature (outer)");
      break;
    }
    case AscRegime::C3: {
      const auto lower = bob_outer(b.v_min, b.v_mid / c, [&](double x) { return c * x; });
      const auto upper = bob_outer(b.v_mid / c, b.v_max, [&](double) { return b.v_mid; });
      total.value = lower.value + upper.value;
      total.abs_error = lower.abs_error + upper.abs_error;
      break;
    }
    case AscRegime::C4:
      total = bob_outer(b.v_min, b.v_max, [&](double) { return b.v_mid; });
      break;
    case AscRegime::Zero:
      break;
  }
  return {total.value, total.abs_error + nerr.worst_inner_rel * std::abs(total.value)};
}

double asc_quadrature(const SecrecyContext& ctx, const ChannelBounds& b, double m) {
  const auto est = asc_quadrature_estimate(ctx, b, m);
  if (est.abs_error > 1e-9) {
    std::ostringstream msg;
    msg << "asc_quadrature: error estimate " << est.abs_error << " exceeds 1e-9 (value "
        << est.value << ")";
    throw NumericError(msg.str());
  }
  return est.value;
}

// ---------------------------------------------------------------------------
// SOP

JBounds j_bounds(const SecrecyContext& ctx, const ChannelBounds& b) {
  const auto s = snr_scale(ctx);
  return {s.alpha_b * b.v_min * b.v_min, s.alpha_b * b.v_max * b.v_max,
          s.alpha_e * b.v_min * b.v_min, s.alpha_e * b.v_mid * b.v_mid};
}

namespace {

double j_density(double j, double lo, double hi, double pref, double q) {
  detail::require_finite(j, "j");
  if (j <= 0.0) throw InputError("J density: j must be > 0");
  if (j < lo || j > hi) return 0.0;
  return pref * std::pow(j, -q - 1.0);
}

}  // namespace

double pdf_j_bob(double j, const SecrecyContext& ctx, const ChannelBounds& b, double m) {
  const double q = 1.0 / (m + 3.0);
  const auto jb = j_bounds(ctx, b);
  return j_density(j, jb.jb_min, jb.jb_max, 0.5 * b.xi1 * std::pow(snr_scale(ctx).alpha_b, q), q);
}

double pdf_j_eve(double j, const SecrecyContext& ctx, const ChannelBounds& b, double m) {
  const double q = 1.0 / (m + 3.0);
  const auto jb = j_bounds(ctx, b);
  return j_density(j, jb.je_min, jb.je_max, 0.5 * b.xi2 * std::pow(snr_scale(ctx).alpha_e, q), q);
}

std::string_view to_string(SopRegime r) {
  switch (r) {
    case SopRegime::Zero: return "zero";
    case SopRegime::S1: return "S1";
    case SopRegime::S2: return "S2";
    case SopRegime::S3: return "S3";
    case SopRegime::One: return "one";
  }
  return "?";
}

SopThresholds sop_thresholds(double chi_value, const ChannelBounds& b) {
  const double c2 = chi_value * chi_value;
  const double lo = b.v_min / b.v_mid;
  const double hi = b.v_max / b.v_mid;
  const double span = b.v_max / b.v_min;
  return {c2 * lo * lo, c2, c2 * hi * hi, c2 * span * span};
}

SopRegime sop_regime(double gamma_th, double chi_value, const ChannelBounds& b) {
  detail::require_finite(gamma_th, "gamma_th");
  if (gamma_th < 1.0) throw InputError("sop: gamma_th must be >= 1");
  const auto t = sop_thresholds(chi_value, b);
  if (gamma_th <= t.t1) return SopRegime::Zero;
  if (gamma_th <= t.t2) return SopRegime::S1;
  if (gamma_th <= t.t3) return SopRegime::S2;
  if (gamma_th <= t.t4) return SopRegime::S3;
  return SopRegime::One;
}

double sop_psi(const SecrecyContext& ctx, const ChannelBounds& b, double m) {
  const auto s = snr_scale(ctx);
  return b.xi1 * b.xi2 / 4.0 * std::pow(s.alpha_b * s.alpha_e, 1.0 / (m + 3.0));
}

double sop_branch(SopRegime regime, const SecrecyContext& ctx, const ChannelBounds& b,
                  double gamma_th, double m) {
  const double q = 1.0 / (m + 3.0);
  const double w = sop_psi(ctx, b, m) * (m + 3.0) * (m + 3.0);
  const auto j = j_bounds(ctx, b);
  auto pq = [q](double x) { return std::pow(x, -q); };
  const double gq = pq(gamma_th);
  const double bmin = pq(j.jb_min);

  // Integral of F_B(gamma z) f_E(z) over [z0, z1] in the printed two-term form.
  auto strip = [&](double z0, double z1) {
    const double x0 = pq(z0);
    const double x1 = pq(z1);
    return w * bmin * (x0 - x1) - 0.5 * w * gq * (x0 * x0 - x1 * x1);
  };

  switch (regime) {
    case SopRegime::Zero:
      return 0.0;
    case SopRegime::S1:
      return strip(j.jb_min / gamma_th, j.je_max);
    case SopRegime::S2:
      return strip(j.je_min, j.je_max);
    case SopRegime::S3: {
      const double edge = j.jb_max / gamma_th;
      return strip(j.je_min, edge) + w * (bmin - pq(j.jb_max)) * (pq(edge) - pq(j.je_max));
    }
    case SopRegime::One:
      return 1.0;
  }
  return 0.0;
}

double sop_lower_bound_closed_form(const SecrecyContext& ctx, const ChannelBounds& b,
                                   double gamma_th, double m) {
  const auto regime = sop_regime(gamma_th, chi(ctx), b);
  const double v = sop_branch(regime, ctx, b, gamma_th, m);
  if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "sop_lower_bound_closed_form: regime " << to_string(regime) << " produced " << v
        << ", outside [0, 1]";
    throw ConsistencyError(msg.str());
  }
  return std::clamp(v, 0.0, 1.0);
}

QuadratureEstimate sop_quadrature_estimate(const SecrecyContext& ctx, const ChannelBounds& b,
                                           double gamma_th, double m) {
  const auto regime = sop_regime(gamma_th, chi(ctx), b);
  if (regime == SopRegime::Zero) return {0.0, 0.0};
  if (regime == SopRegime::One) return {1.0, 0.0};

  const double q = 1.0 / (m + 3.0);
  const auto s = snr_scale(ctx);
  const auto j = j_bounds(ctx, b);
  const double pref_b = 0.5 * b.xi1 * std::pow(s.alpha_b, q);
  const double pref_e = 0.5 * b.xi2 * std::pow(s.alpha_e, q);
  NestedError nerr;

  // Eve outer on [z0, z1], Bob inner on [jb_min, top(z)].
  auto eve_outer = [&](double z0, double z1, auto top) {
    auto inner = [&](double z) {
      const double hi = top(z);
      if (hi <= j.jb_min) return 0.0;
      auto r = power_law_integral([](double) { return 1.0; }, pref_b, q, j.jb_min, hi, kInner,
                                  "sop_quadrature (inner)");
      nerr.record(r);
      return r.value;
    };
    return power_law_integral(inner, pref_e, q, z0, z1, kOuter, "sop_quadrature (outer)");
  };
  auto along = [&](double z) { return gamma_th * z; };

  quad::Result total;
  switch (regime) {
    case SopRegime::S1:
      total = eve_outer(j.jb_min / gamma_th, j.je_max, along);
      break;
    case SopRegime::S2:
      total = eve_outer(j.je_min, j.je_max, along);
      break;
    case SopRegime::S3: {
      const double edge = j.jb_max / gamma_th;
      const auto lower = eve_outer(j.je_min, edge, along);
      const auto upper = eve_outer(edge, j.je_max, [&](double) { return j.jb_max; });
      total.value = lower.value + upper.value;
      total.abs_error = lower.abs_error + upper.abs_error;
      break;
    }
    default:
      break;
  }
  return {total.value, total.abs_error + nerr.worst_inner_rel * std::abs(total.value)};
}

double sop_quadrature(const SecrecyContext& ctx, const ChannelBounds& b, double gamma_th,
                      double m) {
  const auto est = sop_quadrature_estimate(ctx, b, gamma_th, m);
  if (est.abs_error > 1e-9) {
    std::ostringstream msg;
    msg << "sop_quadrature: error estimate " << est.abs_error << " exceeds 1e-9 (value "
        << est.value << ")";
    throw NumericError(msg.str());
  }
  return est.value;
}

}  // namespace vlcsec
