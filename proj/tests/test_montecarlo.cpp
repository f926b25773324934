#include <cmath>
#include <set>

#include "doctest.h"
#include "vlcsec/channel.hpp"
#include "vlcsec/error.hpp"
#include "vlcsec/montecarlo.hpp"

using namespace vlcsec;

namespace {
const LambertianParams kLed{6.0, 1e-4, 1.0, 3.0, std::nullopt};
const DeploymentGeometry kRoom{8.0, 4.0, 4.0};
}  // namespace

TEST_CASE("running statistics match the two-pass formulas and merge exactly") {
  const double xs[] = {1.0, 4.0, 2.5, -3.0, 7.25, 0.5};
  RunningStats all, left, right;
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / 6.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  for (int i = 0; i < 6; ++i) {
    all.add(xs[i]);
    (i < 2 ? left : right).add(xs[i]);
  }
  left.merge(right);
  const auto e = all.estimate();
  CHECK(e.n == 6);
  CHECK(e.mean == doctest::Approx(mean).epsilon(1e-15));
  CHECK(e.std_error == doctest::Approx(std::sqrt(ss / 5.0 / 6.0)).epsilon(1e-14));
  CHECK(left.estimate().mean == doctest::Approx(e.mean).epsilon(1e-15));
  CHECK(left.estimate().std_error == doctest::Approx(e.std_error).epsilon(1e-14));
}

TEST_CASE("block seeds are distinct and depend on the root seed") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(block_seed(42, i));
  CHECK(seen.size() == 1000);
  CHECK(block_seed(42, 0) != block_seed(43, 0));
}

TEST_CASE("placement draws are in (0,1) and identical for any worker count") {
  MCConfig mc;
  mc.n_samples = 200'003;
  mc.batch = 10'000;
  const auto a = draw_placements(mc);
  REQUIRE(a.u_bob.size() == mc.n_samples);
  for (double u : a.u_bob) REQUIRE((u >= 0.0 && u < 1.0));
  mc.n_streams = 4;
  const auto b = draw_placements(mc);
  CHECK(a.u_bob == b.u_bob);
  CHECK(a.u_eve == b.u_eve);
}

TEST_CASE("estimates are bit-identical across worker counts") {
  MCConfig mc;
  mc.n_samples = 150'000;
  mc.batch = 8'192;
  const SecrecyContext ctx{0.5, 1e6, 1.0, 1.0, 10.0, 1.0, std::nullopt};
  const auto one = estimate_asc(kLed, kRoom, ctx, mc);
  const auto s_one = estimate_sop(kLed, kRoom, ctx, 3.0, mc);
  mc.n_streams = 3;
  const auto three = estimate_asc(kLed, kRoom, ctx, mc);
  const auto s_three = estimate_sop(kLed, kRoom, ctx, 3.0, mc);
  CHECK(one.mean == three.mean);
  CHECK(one.std_error == three.std_error);
  CHECK(s_one.lower.mean == s_three.lower.mean);
  CHECK(s_one.exact.mean == s_three.exact.mean);
}

TEST_CASE("seed changes the sample path") {
  MCConfig mc;
  mc.n_samples = 50'000;
  const SecrecyContext ctx{0.5, 1e6, 1.0, 1.0, 10.0, 1.0, std::nullopt};
  const double a = estimate_asc(kLed, kRoom, ctx, mc).mean;
  mc.seed += 1;
  CHECK(estimate_asc(kLed, kRoom, ctx, mc).mean != a);
}

TEST_CASE("exact outage event contains the lower-bound event") {
  MCConfig mc;
  mc.n_samples = 100'000;
  const auto draws = draw_placements(mc);
  const auto gains = gains_for(draws, kLed, kRoom, 1);
  for (double eb : {-10.0, 0.0, 10.0}) {
    for (double g : {1.5, 3.0, 6.0}) {
      const SecrecyContext ctx{0.5, 1e6, 1.0, 1.0, eb, 5.0, std::nullopt};
      const auto e = estimate_sop(gains, ctx, g, 1);
      CHECK(e.exact.mean >= e.lower.mean);
    }
  }
}

TEST_CASE("sampled gains follow the analytic CDF") {
  MCConfig mc;
  mc.n_samples = 200'000;
  const auto gains = gains_for(draw_placements(mc), kLed, kRoom, 1);
  const auto b = compute_bounds(kLed, kRoom);
  // 99.9% critical value for n = 2e5 is about 1.95 / sqrt(n).
  const double crit = 1.95 / std::sqrt(static_cast<double>(mc.n_samples));
  CHECK(ks_statistic(gains.h_bob, [&](double h) { return cdf_gain_bob(h, b, 6.0); }) < crit);
  CHECK(ks_statistic(gains.h_eve, [&](double h) { return cdf_gain_eve(h, b, 6.0); }) < crit);
}

TEST_CASE("KS statistic of a known sample") {
  // Points at (i + 0.5)/n against the uniform CDF: sup gap is exactly 0.5/n.
  std::vector<double> s;
  for (int i = 0; i < 10; ++i) s.push_back((i + 0.5) / 10.0);
  CHECK(ks_statistic(s, [](double x) { return x; }) == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("parallel_for covers every block once and propagates exceptions") {
  std::vector<int> hits(97, 0);
  parallel_for(97, 4, [&](std::uint64_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::uint64_t i) {
                                 if (i == 7) throw NumericError("boom");
                               }),
                  NumericError);
}

TEST_CASE("MC config validation") {
  MCConfig mc;
  mc.n_samples = 1;
  CHECK_THROWS_AS(mc.validate(), ValidationError);
  mc.n_samples = 10;
  mc.n_streams = 0;
  CHECK_THROWS_AS(mc.validate(), ValidationError);
}
