#include "vlcsec/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "vlcsec/error.hpp"
#include "vlcsec/quadrature.hpp"

namespace vlcsec {

void LambdaContext::validate() const {
  std::ostringstream msg;
  if (!std::isfinite(xi) || xi <= 0.0 || xi > 1.0) {
    msg << "xi must lie in (0, 1] (got " << xi << ")";
  } else if (!std::isfinite(P) || P <= 0.0) {
    msg << "P must be > 0 (got " << P << ")";
  } else if (!std::isfinite(sigma2_b) || sigma2_b <= 0.0) {
    msg << "sigma2_b must be > 0 (got " << sigma2_b << ")";
  } else if (!std::isfinite(sigma2_e) || sigma2_e <= 0.0) {
    msg << "sigma2_e must be > 0 (got " << sigma2_e << ")";
  } else {
    return;
  }
  throw ValidationError(msg.str());
}

double LambdaContext::log_noise() const {
  return std::log(2.0 * std::numbers::pi * sigma2_b * sigma2_e);
}

namespace {

void check_meijer_args(double z, double a) {
  detail::require_finite(z, "z");
  detail::require_finite(a, "a");
  if (z <= 0.0) throw InputError("meijer_g_1333: z must be > 0");
  if (a <= 0.0) throw InputError("meijer_g_1333: a must be > 0");
  if (1.0 / (2.0 * a) >= 1.0) {
    throw InputError("meijer_g_1333: no vertical contour separates the poles unless a > 1/2");
  }
}

// Bound on (1/pi) int_T^inf |integrand| dt, using |s (s - beta)| >= t^2.
double tail_bound(double T, double zc) {
  const double decay = std::exp(-std::numbers::pi * T);
  return 2.0 * zc * decay / (std::numbers::pi * T * T * (1.0 - decay * decay));
}

}  // namespace

double meijer_g_1333(double z, double a) {
  check_meijer_args(z, a);
  using cplx = std::complex<double>;
  constexpr double pi = std::numbers::pi;

  // Left poles end at s = beta (Gamma(s - beta)) and s = 0 (Gamma(s)^2), right poles
  // start at s = 1 (Gamma(1 - s)). Lean towards the side that keeps z^c close to |G|:
  // G ~ z for small z and G ~ z^beta for large z.
  const double beta = 1.0 / (2.0 * a);
  const double lo = beta;
  const double hi = 1.0;
  const double log_z = std::log(z);
  const double w = 0.5 * std::min(1.0, 1.0 / std::abs(log_z));
  const double c = log_z < 0.0 ? hi - (hi - lo) * w : lo + (hi - lo) * w;
  const double zc = std::exp(c * log_z);

  const cplx phase = std::exp(cplx(0.0, pi * c));
  auto integrand = [&](double t) {
    const cplx s(c, t);
    // pi / sin(pi s) written through e^{i pi s}, which stays bounded for t >= 0.
    const cplx e = phase * std::exp(-pi * t);
    const cplx csc = cplx(0.0, 2.0 * pi) * e / (e * e - 1.0);
    const cplx zs = zc * cplx(std::cos(t * log_z), std::sin(t * log_z));
    return (csc * zs / (s * (s - beta))).real() / pi;
  };

  constexpr double kMaxT = 60.0;
  constexpr double kSegment = 1.0;
  quad::CompensatedSum sum;
  quad::CompensatedSum err;
  double T = 0.0;
  quad::Options first{.abs_tol = 0.0, .rel_tol = 1e-14, .max_intervals = 4000};
  while (true) {
    quad::Options opt = first;
    if (T > 0.0) opt.abs_tol = 1e-16 * std::abs(sum.value());
    const auto seg = quad::try_integrate(integrand, T, T + kSegment, opt);
    sum += seg.value;
    err += seg.abs_error;
    T += kSegment;
    const double tail = tail_bound(T, zc);
    if (tail <= 1e-17 * std::abs(sum.value())) {
      err += tail;
      break;
    }
    if (T >= kMaxT) {
      err += tail;
      break;
    }
  }

  const double value = sum.value();
  if (!std::isfinite(value) || err.value() > 1e-10 * std::abs(value)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "meijer_g_1333: contour quadrature did not converge (z=" << z << ", a=" << a
        << ", Re s=" << c << ", T=" << T << ", estimate=" << value << ", error=" << err.value()
        << ")";
    throw NumericError(msg.str());
  }
  return value;
}

double meijer_g_1333_oracle(double z, double a) {
  check_meijer_args(z, a);
  // int_0^z t^-beta/(1+t) dt with t = w^p, p = 1/(1-beta): p int_0^{z^(1-beta)} dw / (1 + w^p).
  const double beta = 1.0 / (2.0 * a);
  const double p = 1.0 / (1.0 - beta);
  const double upper = std::pow(z, 1.0 - beta);
  const quad::Options opt{.abs_tol = 0.0, .rel_tol = 1e-14, .max_intervals = 4000};

  auto near = [p](double w) { return 1.0 / (1.0 + std::pow(w, p)); };
  double inner = 0.0;
  if (upper <= 1.0) {
    inner = quad::integrate(near, 0.0, upper, opt, "meijer_g_1333_oracle").value;
  } else {
    // Tail on a log scale: w = e^v.
    auto far = [p](double v) {
      const double w = std::exp(v);
      return w / (1.0 + std::pow(w, p));
    };
    inner = quad::integrate(near, 0.0, 1.0, opt, "meijer_g_1333_oracle").value +
            quad::integrate(far, 0.0, std::log(upper), opt, "meijer_g_1333_oracle").value;
  }
  return 2.0 * a * (std::pow(z, beta) * p * inner - std::log1p(z));
}

namespace {

void check_lambda_args(double a, double b, double c, double d, const LambdaContext& ctx) {
  for (auto [v, name] : {std::pair{a, "a"}, {b, "b"}, {c, "c"}, {d, "d"}}) {
    detail::require_finite(v, name);
    if (v <= 0.0) throw InputError(std::string("lambda: ") + name + " must be > 0");
  }
  if (b > c) throw InputError("lambda: lower limit b must not exceed upper limit c");
  ctx.validate();
}

}  // namespace

LambdaParts lambda_parts(double a, double b, double c, double d, const LambdaContext& ctx) {
  check_lambda_args(a, b, c, d, ctx);
  if (b == c) return {};
  const double scale = d * ctx.xi * ctx.xi * ctx.P * ctx.P;
  const double bp = std::pow(b, -1.0 / a);
  const double cp = std::pow(c, -1.0 / a);
  LambdaParts parts;
  parts.log_coefficient = a * (bp - cp);
  parts.g_part = 0.5 * cp * meijer_g_1333(scale * c * c, a) - 0.5 * bp * meijer_g_1333(scale * b * b, a);
  return parts;
}

double lambda_fn(double a, double b, double c, double d, const LambdaContext& ctx) {
  const auto parts = lambda_parts(a, b, c, d, ctx);
  return parts.log_coefficient * ctx.log_noise() + parts.g_part;
}

double lambda_oracle(double a, double b, double c, double d, const LambdaContext& ctx, int sign) {
  check_lambda_args(a, b, c, d, ctx);
  if (b == c) return 0.0;
  const double scale = d * ctx.xi * ctx.xi * ctx.P * ctx.P;
  const double log_noise = ctx.log_noise();
  auto integrand = [&](double u) {
    return std::exp(-u / a) * (log_noise + sign * std::log1p(scale * std::exp(2.0 * u)));
  };
  const quad::Options opt{.abs_tol = 1e-10, .rel_tol = 1e-13, .max_intervals = 4000};
  return quad::integrate(integrand, std::log(b), std::log(c), opt, "lambda_oracle").value;
}

}  // namespace vlcsec
