#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vlcsec/error.hpp"
#include "vlcsec/secrecy.hpp"

using namespace vlcsec;

namespace {

const LambertianParams kLed{6.0, 1e-4, 1.0, 3.0, std::nullopt};
constexpr double kM = 6.0;

ChannelBounds room(double rho) { return compute_bounds(kLed, {8.0, rho, 4.0}); }

SecrecyContext ctx(double xi, double p_db, double eta_b, double eta_e) {
  return {xi, db_to_linear(p_db), 1.0, 1.0, eta_b, eta_e, std::nullopt};
}

// eta_b placing chi at `target` (eta_e fixed).
double eta_b_at(double target, double eta_e) {
  return eta_e + 10.0 * std::log10(target / chi(ctx(0.5, 60.0, 0.0, 0.0)));
}

}  // namespace

TEST_CASE("chi and SNR scales") {
  const auto c = ctx(0.5, 60.0, 10.0, 1.0);
  const auto s = snr_scale(c);
  const double xp2 = 0.25 * 1e12;
  CHECK(s.alpha_b == doctest::Approx(std::numbers::e * xp2 * 1e2 / (2.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(s.alpha_e == doctest::Approx(xp2 * std::pow(10.0, 0.2)).epsilon(1e-14));
  CHECK(chi(c) == doctest::Approx(std::sqrt(s.alpha_b / s.alpha_e)).epsilon(1e-14));
  CHECK(chi(c) == doctest::Approx(std::pow(10.0, 0.9) * std::sqrt(std::numbers::e / (2.0 * std::numbers::pi)))
                      .epsilon(1e-14));
}

TEST_CASE("instantaneous rate is zero unless Bob's effective SNR is larger") {
  const auto c = ctx(0.5, 60.0, 0.0, 0.0);
  const double x = chi(c);
  CHECK(instantaneous_sc(1e-6, 1e-6 * x * 1.0001, c) == 0.0);
  CHECK(instantaneous_sc(1e-6, 1e-6 * x * 0.5, c) > 0.0);
  const SecrecyKernel k(c);
  CHECK(k(2e-6, 1e-6) == doctest::Approx(instantaneous_sc(2e-6, 1e-6, c)).epsilon(1e-15));
}

TEST_CASE("ASC regimes follow chi across the gain ratios") {
  const auto b = room(4.0);
  CHECK(asc_regime(0.5 * b.v_min / b.v_max, b) == AscRegime::Zero);
  CHECK(asc_regime(b.v_min / b.v_max, b) == AscRegime::C1);
  CHECK(asc_regime(b.v_mid / b.v_max, b) == AscRegime::C2);
  CHECK(asc_regime(1.0, b) == AscRegime::C3);
  CHECK(asc_regime(b.v_mid / b.v_min, b) == AscRegime::C4);
  // Without a protected zone C2 is empty.
  const auto open = room(0.0);
  CHECK(asc_regime(0.999, open) == AscRegime::C1);
}

TEST_CASE("ASC closed form against independent reference integrations") {
  struct Case {
    double xi, p_db, rho, eta_b, eta_e, asc;
    AscRegime regime;
  };
  const Case cases[] = {
      {0.5, 60.0, 4.0, 10.0, 1.0, 0.747680168480526, AscRegime::C3},
      {0.3, 35.0, 2.0, 0.0, 1.0, 2.4844024662137913e-06, AscRegime::C2},
      {0.8, 45.0, 0.0, -10.0, 0.0, 1.249100212393906e-05, AscRegime::C1},
  };
  for (const auto& k : cases) {
    const auto c = ctx(k.xi, k.p_db, k.eta_b, k.eta_e);
    const auto b = room(k.rho);
    CHECK(asc_regime(chi(c), b) == k.regime);
    CHECK(asc_closed_form(c, b, kM) == doctest::Approx(k.asc).epsilon(1e-6));
  }
}

TEST_CASE("log-noise coefficients of every branch cancel") {
  const auto c = ctx(0.5, 50.0, 0.0, 0.0);
  const auto b = room(2.0);
  const auto lc = c.lambda_context();
  for (auto r : {AscRegime::C1, AscRegime::C2, AscRegime::C3, AscRegime::C4}) {
    double sum = 0.0, mag = 0.0;
    for (const auto& t : asc_lambda_terms(r, c, b, kM)) {
      const double lo = std::min(t.b, t.c), hi = std::max(t.b, t.c);
      const double coef = (t.b <= t.c ? 1.0 : -1.0) * lambda_parts(t.a, lo, hi, t.d, lc).log_coefficient;
      sum += t.weight * coef;
      mag += std::abs(t.weight * coef);
    }
    CAPTURE(to_string(r));
    CHECK(std::abs(sum) <= 1e-12 * mag);
  }
}

TEST_CASE("lambda sign: the oracle assembled with +1 reproduces the ASC, -1 does not") {
  const auto c = ctx(0.8, 45.0, -10.0, 0.0);
  const auto b = room(0.0);
  REQUIRE(asc_regime(chi(c), b) == AscRegime::C1);
  const auto lc = c.lambda_context();
  auto assemble = [&](int sign) {
    double s = 0.0;
    for (const auto& t : asc_lambda_terms(AscRegime::C1, c, b, kM)) {
      const double lo = std::min(t.b, t.c), hi = std::max(t.b, t.c);
      s += t.weight * (t.b <= t.c ? 1.0 : -1.0) * lambda_oracle(t.a, lo, hi, t.d, lc, sign);
    }
    return asc_prefactor(b, kM) * s;
  };
  const double q = asc_quadrature(c, b, kM);
  CHECK(assemble(+1) == doctest::Approx(q).epsilon(1e-4));
  CHECK(std::abs(assemble(-1) - q) > 0.5 * std::abs(q));
}

TEST_CASE("ASC closed form matches quadrature in every non-trivial regime") {
  for (double rho : {0.0, 2.0, 4.0}) {
    const auto b = room(rho);
    for (double target : {1.5 * b.v_min / b.v_max, 0.5 * (b.v_mid / b.v_max + 1.0), 2.0, 3.0 * b.v_mid / b.v_min}) {
      const auto c = ctx(0.5, 60.0, eta_b_at(target, 1.0), 1.0);
      CAPTURE(rho);
      CAPTURE(to_string(asc_regime(chi(c), b)));
      const double cf = asc_closed_form(c, b, kM);
      CHECK(cf == doctest::Approx(asc_quadrature(c, b, kM)).epsilon(1e-9));
    }
  }
}

TEST_CASE("ASC is exactly zero below the first boundary and grows with Bob's uncertainty") {
  const auto b = room(4.0);
  CHECK(asc_closed_form(ctx(0.5, 60.0, eta_b_at(0.9 * b.v_min / b.v_max, 1.0), 1.0), b, kM) == 0.0);
  double prev = -1.0;
  for (double eb = -20.0; eb <= 30.0; eb += 5.0) {
    const double v = asc_closed_form(ctx(0.5, 60.0, eb, 1.0), b, kM);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("SOP thresholds and regimes") {
  const auto b = room(4.0);
  const double x = 100.0;
  const auto t = sop_thresholds(x, b);
  REQUIRE(t.t1 >= 1.0);
  CHECK(t.t1 < t.t2);
  CHECK(t.t2 < t.t3);
  CHECK(t.t3 < t.t4);
  CHECK(t.t2 == doctest::Approx(1e4));
  CHECK(sop_regime(t.t1, x, b) == SopRegime::Zero);
  CHECK(sop_regime(t.t2, x, b) == SopRegime::S1);
  CHECK(sop_regime(t.t3, x, b) == SopRegime::S2);
  CHECK(sop_regime(t.t4, x, b) == SopRegime::S3);
  CHECK(sop_regime(t.t4 * 1.0001, x, b) == SopRegime::One);
  CHECK_THROWS_AS(sop_regime(0.9, x, b), InputError);
}

TEST_CASE("SOP lower bound against independent reference integrations") {
  struct Case {
    double gamma, rho, eta_b, eta_e, sop;
  };
  const Case cases[] = {
      {3.0, 4.0, 0.0, 1.0, 0.5795897457043043},
      {1.5, 2.0, -5.0, 10.0, 0.9139898405406114},
      {6.0, 6.0, 10.0, 5.0, 0.2555519213182653},
  };
  for (const auto& k : cases) {
    const auto c = ctx(0.5, 60.0, k.eta_b, k.eta_e);
    CHECK(sop_lower_bound_closed_form(c, room(k.rho), k.gamma, kM) == doctest::Approx(k.sop).epsilon(1e-10));
  }
}

TEST_CASE("SOP closed form matches quadrature in each inner regime") {
  // S1 sits between chi^2 v_min^2/v_mid^2 and chi^2; gamma = 3 with chi^2 between 3 and 3 v_mid^2/v_min^2.
  for (double rho : {2.0, 4.0, 6.0}) {
    const auto b = room(rho);
    const auto unit = sop_thresholds(1.0, b);
    for (double r : {0.5 * (unit.t1 + unit.t2), 0.5 * (unit.t2 + unit.t3), 0.5 * (unit.t3 + unit.t4)}) {
      const auto c = ctx(0.5, 60.0, eta_b_at(std::sqrt(3.0 / r), 1.0), 1.0);
      const auto reg = sop_regime(3.0, chi(c), b);
      CAPTURE(rho);
      CAPTURE(to_string(reg));
      CHECK(reg != SopRegime::Zero);
      CHECK(reg != SopRegime::One);
      CHECK(sop_lower_bound_closed_form(c, b, 3.0, kM) ==
            doctest::Approx(sop_quadrature(c, b, 3.0, kM)).epsilon(1e-10));
    }
  }
}

TEST_CASE("SOP lower bound depends on xi and P only through chi") {
  const auto b = room(4.0);
  const double ref = sop_lower_bound_closed_form(ctx(0.5, 60.0, 0.0, 1.0), b, 3.0, kM);
  for (double xi : {0.2, 0.9}) {
    for (double p : {30.0, 80.0}) {
      CHECK(sop_lower_bound_closed_form(ctx(xi, p, 0.0, 1.0), b, 3.0, kM) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("SOP lower bound is 0 and 1 in the outer regimes") {
  const auto b = room(4.0);
  const auto c = ctx(0.5, 60.0, 30.0, 0.0);
  const auto t = sop_thresholds(chi(c), b);
  if (t.t1 >= 1.0) CHECK(sop_lower_bound_closed_form(c, b, std::max(1.0, 0.5 * t.t1), kM) == 0.0);
  CHECK(sop_lower_bound_closed_form(c, b, 2.0 * t.t4, kM) == 1.0);
}

TEST_CASE("J densities are the pushforward of the gain densities") {
  const auto b = room(4.0);
  const auto c = ctx(0.5, 60.0, 3.0, 1.0);
  const auto s = snr_scale(c);
  const auto j = j_bounds(c, b);
  CHECK(j.jb_min == doctest::Approx(s.alpha_b * b.v_min * b.v_min).epsilon(1e-14));
  CHECK(j.je_max == doctest::Approx(s.alpha_e * b.v_mid * b.v_mid).epsilon(1e-14));
  const double h = std::sqrt(b.v_min * b.v_max);
  const double jb = s.alpha_b * h * h;
  CHECK(pdf_j_bob(jb, c, b, kM) == doctest::Approx(pdf_gain_bob(h, b, kM) / (2.0 * s.alpha_b * h)).epsilon(1e-12));
  CHECK(pdf_j_bob(0.5 * j.jb_min, c, b, kM) == 0.0);
  CHECK_THROWS_AS(pdf_j_eve(0.0, c, b, kM), InputError);
}

TEST_CASE("CSI bound is enforced when given") {
  auto c = ctx(0.5, 60.0, 10.0, 1.0);
  c.epsilon = 5.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.eta_b = 4.0;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("dB conversions") {
  CHECK(db_to_linear(60.0) == doctest::Approx(1e6));
  CHECK(linear_to_db(db_to_linear(-7.5)) == doctest::Approx(-7.5).epsilon(1e-14));
}
