#pragma once

// Instantaneous secrecy-capacity lower bound, the average secrecy capacity
// (ASC) and the secrecy-outage-probability (SOP) lower bound for one LED,
// Bob anywhere in the room and Eve outside the protected zone.
//
// Rates are in nats. With alpha_B = e xi^2 P^2 10^(eta_B/5) / (2 pi sB^2) and
// alpha_E = xi^2 P^2 10^(eta_E/5) / sE^2 the instantaneous rate is
//     C+ = 1/2 [ ln(1 + alpha_B hB^2) - ln(1 + alpha_E hE^2) ]   if chi hB >= hE,
// and 0 otherwise, where chi^2 = alpha_B / alpha_E.

#include <optional>
#include <string_view>
#include <vector>

#include "vlcsec/channel.hpp"
#include "vlcsec/specfun.hpp"

namespace vlcsec {

double db_to_linear(double db);  ///< 10^(db/10)
double linear_to_db(double x);

struct SecrecyContext {
  double xi = 1.0;        ///< dimming target in (0, 1]
  double P = 1.0;         ///< nominal optical intensity (linear)
  double sigma2_b = 1.0;
  double sigma2_e = 1.0;
  double eta_b = 0.0;     ///< Bob's CSI uncertainty (dB)
  double eta_e = 0.0;     ///< Eve's CSI uncertainty (dB)
  std::optional<double> epsilon;  ///< bound on |eta| (dB)

  void validate() const;
  [[nodiscard]] LambdaContext lambda_context() const;
};

/// J_B = alpha_b hB^2 and J_E = alpha_e hE^2.
struct SnrScale {
  double alpha_b = 0.0;
  double alpha_e = 0.0;
};
SnrScale snr_scale(const SecrecyContext& ctx);

double chi(const SecrecyContext& ctx);

/// Validated, precomputed form of the instantaneous rate for tight loops.
class SecrecyKernel {
 public:
  explicit SecrecyKernel(const SecrecyContext& ctx);
  [[nodiscard]] double chi() const { return chi_; }
  [[nodiscard]] const SnrScale& scale() const { return scale_; }
  /// C_s for gains h_b, h_e (no argument checks).
  [[nodiscard]] double operator()(double h_b, double h_e) const;

 private:
  double chi_;
  SnrScale scale_;
};

double instantaneous_sc(double h_b, double h_e, const SecrecyContext& ctx);

// ---------------------------------------------------------------------------
// ASC

enum class AscRegime { Zero, C1, C2, C3, C4 };
std::string_view to_string(AscRegime r);

/// Half-open classification: Zero below v_min/v_max, then [v_min/v_max, v_mid/v_max) -> C1,
/// [v_mid/v_max, 1) -> C2, [1, v_mid/v_min) -> C3, the rest -> C4.
AscRegime asc_regime(double chi, const ChannelBounds& bounds);

/// One lambda(a, b, c, d) call of a branch, with its weight inside the bracket.
struct LambdaTerm {
  double weight;
  double a, b, c, d;
};

/// Bracketed lambda terms of a branch; the branch value is prefactor * sum(weight * lambda).
std::vector<LambdaTerm> asc_lambda_terms(AscRegime regime, const SecrecyContext& ctx,
                                         const ChannelBounds& bounds, double m);

/// (m+3) xi1 xi2 / 4
double asc_prefactor(const ChannelBounds& bounds, double m);

/// Evaluates the named branch at the given parameters, whether or not chi falls in it.
/// The ln(2 pi sB^2 sE^2) parts of the lambda terms cancel identically and are not summed.
double asc_branch(AscRegime regime, const SecrecyContext& ctx, const ChannelBounds& bounds,
                  double m);

double asc_closed_form(const SecrecyContext& ctx, const ChannelBounds& bounds, double m);

struct QuadratureEstimate {
  double value = 0.0;
  double abs_error = 0.0;
};

/// Nested adaptive quadrature of the regime's double integral over the gain densities.
QuadratureEstimate asc_quadrature_estimate(const SecrecyContext& ctx, const ChannelBounds& bounds,
                                           double m);
/// As above; throws NumericError if the error estimate exceeds 1e-9.
double asc_quadrature(const SecrecyContext& ctx, const ChannelBounds& bounds, double m);

// ---------------------------------------------------------------------------
// SOP lower bound, Pr(J_B <= gamma_th J_E)

struct JBounds {
  double jb_min = 0.0;
  double jb_max = 0.0;
  double je_min = 0.0;
  double je_max = 0.0;
};
JBounds j_bounds(const SecrecyContext& ctx, const ChannelBounds& bounds);

// Densities of J_B and J_E; zero off-support, InputError for j <= 0.
double pdf_j_bob(double j, const SecrecyContext& ctx, const ChannelBounds& bounds, double m);
double pdf_j_eve(double j, const SecrecyContext& ctx, const ChannelBounds& bounds, double m);

enum class SopRegime { Zero, S1, S2, S3, One };
std::string_view to_string(SopRegime r);

/// Thresholds chi^2 v_min^2/v_mid^2, chi^2, chi^2 v_max^2/v_mid^2, chi^2 v_max^2/v_min^2.
struct SopThresholds {
  double t1, t2, t3, t4;
};
SopThresholds sop_thresholds(double chi, const ChannelBounds& bounds);

/// Intervals are closed on the right: Zero for gamma <= t1, S1 on (t1, t2], ..., One above t4.
/// gamma_th < 1 -> InputError.
SopRegime sop_regime(double gamma_th, double chi, const ChannelBounds& bounds);

/// (xi1 xi2 / 4) (alpha_B alpha_E)^(1/(m+3))
double sop_psi(const SecrecyContext& ctx, const ChannelBounds& bounds, double m);

/// Evaluates the named branch (unclamped), whether or not gamma_th falls in it.
double sop_branch(SopRegime regime, const SecrecyContext& ctx, const ChannelBounds& bounds,
                  double gamma_th, double m);

/// Throws ConsistencyError if the branch value leaves [-1e-9, 1 + 1e-9]; clamps to [0, 1].
double sop_lower_bound_closed_form(const SecrecyContext& ctx, const ChannelBounds& bounds,
                                   double gamma_th, double m);

QuadratureEstimate sop_quadrature_estimate(const SecrecyContext& ctx, const ChannelBounds& bounds,
                                           double gamma_th, double m);
double sop_quadrature(const SecrecyContext& ctx, const ChannelBounds& bounds, double gamma_th,
                      double m);

}  // namespace vlcsec
