#pragma once

// Special functions behind the average-secrecy-capacity closed form.
//
// The only Meijer-G instance needed is
//     G(z; a) = G^{1,3}_{3,3}[ z | 1, 1, 1+1/(2a) ; 1, 1/(2a), 0 ],
// whose Mellin–Barnes integrand collapses to
//     pi / sin(pi s) * z^s / (s (s - 1/(2a))).
// The production path integrates that along a vertical line between the pole
// at s = 1/(2a) and the pole at s = 1. The oracle uses the equivalent real form
//     G(z; a) = 2a [ z^beta * int_0^z t^-beta / (1+t) dt - ln(1+z) ],  beta = 1/(2a).

#include <functional>

namespace vlcsec {

/// Noise/intensity context shared by every lambda term.
struct LambdaContext {
  double xi = 1.0;        ///< dimming target in (0, 1]
  double P = 1.0;         ///< nominal optical intensity (linear)
  double sigma2_b = 1.0;  ///< Bob's noise variance
  double sigma2_e = 1.0;  ///< Eve's noise variance

  void validate() const;
  /// ln(2 pi sigma_B^2 sigma_E^2)
  [[nodiscard]] double log_noise() const;
};

/// Contour-quadrature evaluation. Requires z > 0 and a > 1/2 (pole separation).
double meijer_g_1333(double z, double a);

/// Independent evaluation through the real-integral form above.
double meijer_g_1333_oracle(double z, double a);

/// Sign of the log(1 + d xi^2 P^2 x^2) term in the integral represented by lambda.
inline constexpr int kLambdaSign = +1;

/// a (b^-1/a - c^-1/a) ln(2 pi sB^2 sE^2) + 1/2 c^-1/a G(d xi^2 P^2 c^2) - 1/2 b^-1/a G(d xi^2 P^2 b^2)
double lambda_fn(double a, double b, double c, double d, const LambdaContext& ctx);

/// The two pieces of lambda_fn: the ln(2 pi sB^2 sE^2) coefficient and the Meijer-G part.
struct LambdaParts {
  double log_coefficient = 0.0;  ///< a (b^-1/a - c^-1/a)
  double g_part = 0.0;
};
LambdaParts lambda_parts(double a, double b, double c, double d, const LambdaContext& ctx);

/// Adaptive quadrature of int_b^c x^(-1/a-1) [ln(2 pi sB^2 sE^2) + sign ln(1 + d xi^2 P^2 x^2)] dx.
double lambda_oracle(double a, double b, double c, double d, const LambdaContext& ctx,
                     int sign = kLambdaSign);

}  // namespace vlcsec
