#include <cmath>

#include "doctest.h"
#include "vlcsec/error.hpp"
#include "vlcsec/specfun.hpp"

using namespace vlcsec;

namespace {

struct Frozen {
  double a, z, g;
};

// 30-digit reference values from an independent arbitrary-precision Meijer-G evaluation.
constexpr Frozen kFrozen[] = {
    {2.0, 1e-6, 1.3333330476191688311e-6},  {2.0, 1.0, 1.1273752329551071492},
    {2.0, 100.0, 21.769859224616017573},    {2.0, 1e6, 490.72313545140123726},
    {4.5, 1e-6, 1.1249997352942330316e-6}, {4.5, 1.0, 0.93583283556294429478},
    {4.5, 100.0, 15.44406436592627842},     {4.5, 1e6, 178.37415599321217005},
    {2.25, 1e-6, 1.2857140044644057142e-6}, {2.25, 1.0, 1.0833405349620134379},
    {2.25, 100.0, 20.216871348667378354},   {2.25, 1e6, 391.41638671578989392},
};

}  // namespace

TEST_CASE("Meijer-G against frozen high-precision values") {
  for (const auto& f : kFrozen) {
    CAPTURE(f.a);
    CAPTURE(f.z);
    CHECK(meijer_g_1333(f.z, f.a) == doctest::Approx(f.g).epsilon(1e-12));
    CHECK(meijer_g_1333_oracle(f.z, f.a) == doctest::Approx(f.g).epsilon(1e-12));
  }
}

TEST_CASE("Meijer-G contour agrees with the real-integral form across decades") {
  for (double a : {0.75, 1.0, 2.0, 2.25, 4.5, 10.0}) {
    for (int e = -12; e <= 10; e += 2) {
      const double z = std::pow(10.0, e);
      CAPTURE(a);
      CAPTURE(z);
      CHECK(meijer_g_1333(z, a) == doctest::Approx(meijer_g_1333_oracle(z, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Meijer-G small-argument asymptote 2a z / (2a - 1)") {
  for (double a : {1.0, 2.0, 4.5}) {
    const double z = 1e-10;
    CHECK(meijer_g_1333(z, a) == doctest::Approx(2.0 * a * z / (2.0 * a - 1.0)).epsilon(1e-8));
  }
}

TEST_CASE("Meijer-G is increasing in z") {
  double prev = 0.0;
  for (int e = -8; e <= 8; ++e) {
    const double g = meijer_g_1333(std::pow(10.0, e), 4.5);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("Meijer-G domain") {
  CHECK_THROWS_AS(meijer_g_1333(0.0, 2.0), InputError);
  CHECK_THROWS_AS(meijer_g_1333(1.0, 0.5), InputError);
  CHECK_THROWS_AS(meijer_g_1333(1.0, -1.0), InputError);
}

TEST_CASE("lambda against its quadrature oracle") {
  const LambdaContext ctx{0.5, 1e6, 1.0, 1.0};
  for (double a : {2.0, 4.5, 10.0}) {
    for (double d : {1e-3, 1.0, 40.0}) {
      const double b = 1e-6, c = 3e-5;
      CAPTURE(a);
      CAPTURE(d);
      CHECK(lambda_fn(a, b, c, d, ctx) == doctest::Approx(lambda_oracle(a, b, c, d, ctx)).epsilon(1e-9));
    }
  }
}

TEST_CASE("lambda splits into its log coefficient and Meijer-G part") {
  const LambdaContext ctx{0.3, 3e4, 2.0, 0.5};
  const double a = 4.5, b = 2e-6, c = 9e-6, d = 3.0;
  const auto parts = lambda_parts(a, b, c, d, ctx);
  CHECK(parts.log_coefficient == doctest::Approx(a * (std::pow(b, -1.0 / a) - std::pow(c, -1.0 / a))));
  CHECK(lambda_fn(a, b, c, d, ctx) ==
        doctest::Approx(parts.log_coefficient * ctx.log_noise() + parts.g_part).epsilon(1e-14));
}

TEST_CASE("lambda is additive over adjacent intervals") {
  const LambdaContext ctx{0.8, 1e5, 1.0, 1.0};
  const double a = 4.5, d = 0.7;
  const double whole = lambda_fn(a, 1e-6, 1e-4, d, ctx);
  const double split = lambda_fn(a, 1e-6, 7e-6, d, ctx) + lambda_fn(a, 7e-6, 1e-4, d, ctx);
  CHECK(whole == doctest::Approx(split).epsilon(1e-12));
  CHECK(lambda_fn(a, 5e-6, 5e-6, d, ctx) == 0.0);
}

TEST_CASE("lambda argument checks") {
  const LambdaContext ctx{0.5, 1e6, 1.0, 1.0};
  CHECK_THROWS_AS(lambda_fn(4.5, 2e-6, 1e-6, 1.0, ctx), InputError);
  CHECK_THROWS_AS(lambda_fn(4.5, 0.0, 1e-6, 1.0, ctx), InputError);
  CHECK_THROWS_AS(LambdaContext({1.5, 1e6, 1.0, 1.0}).validate(), ValidationError);
}
