#include "vlcsec/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "vlcsec/error.hpp"

namespace vlcsec {

void MCConfig::validate() const {
  std::ostringstream msg;
  if (n_samples < 2) {
    msg << "mc.samples must be >= 2 (a standard error needs two samples)";
  } else if (n_streams < 1) {
    msg << "mc.workers must be >= 1";
  } else if (batch < 1) {
    msg << "mc.batch must be >= 1";
  } else {
    return;
  }
  throw ValidationError(msg.str());
}

void RunningStats::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double delta = o.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += o.m2_ + delta * delta * na * nb / n;
  n_ += o.n_;
}

MCEstimate RunningStats::estimate() const {
  MCEstimate e;
  e.n = n_;
  e.mean = mean_;
  if (n_ > 1) {
    const double var = std::max(0.0, m2_ / static_cast<double>(n_ - 1));
    e.std_error = std::sqrt(var / static_cast<double>(n_));
  }
  return e;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

void parallel_for(std::uint64_t n_blocks, unsigned workers,
                  const std::function<void(std::uint64_t)>& body) {
  if (n_blocks == 0) return;
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), n_blocks));
  if (n_threads == 1) {
    for (std::uint64_t i = 0; i < n_blocks; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= n_blocks) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads - 1);
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

std::uint64_t block_count(std::uint64_t n, std::uint64_t batch) { return (n + batch - 1) / batch; }

// 53 random mantissa bits -> [0, 1).
double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

template <class F>
MCEstimate reduce_blocks(std::uint64_t n, std::uint64_t batch, unsigned workers, F&& block_stats) {
  const std::uint64_t blocks = block_count(n, batch);
  std::vector<RunningStats> per_block(blocks);
  parallel_for(blocks, workers, [&](std::uint64_t b) {
    const std::uint64_t lo = b * batch;
    const std::uint64_t hi = std::min(n, lo + batch);
    per_block[b] = block_stats(lo, hi);
  });
  RunningStats total;
  for (const auto& s : per_block) total.merge(s);
  return total.estimate();
}

}  // namespace

PlacementDraws draw_placements(const MCConfig& mc) {
  mc.validate();
  PlacementDraws d;
  d.batch = mc.batch;
  d.u_bob.resize(mc.n_samples);
  d.u_eve.resize(mc.n_samples);
  parallel_for(block_count(mc.n_samples, mc.batch), mc.n_streams, [&](std::uint64_t b) {
    std::mt19937_64 rng(block_seed(mc.seed, b));
    const std::uint64_t lo = b * mc.batch;
    const std::uint64_t hi = std::min(mc.n_samples, lo + mc.batch);
    for (std::uint64_t i = lo; i < hi; ++i) {
      d.u_bob[i] = to_unit(rng());
      d.u_eve[i] = to_unit(rng());
    }
  });
  return d;
}

GainSamples gains_for(const PlacementDraws& draws, const LambertianParams& params,
                      const DeploymentGeometry& geom, unsigned workers) {
  compute_bounds(params, geom);  // validates both
  GainSamples g;
  g.batch = draws.batch;
  const std::uint64_t n = draws.u_bob.size();
  g.h_bob.resize(n);
  g.h_eve.resize(n);
  parallel_for(block_count(n, draws.batch), workers, [&](std::uint64_t b) {
    const std::uint64_t lo = b * draws.batch;
    const std::uint64_t hi = std::min(n, lo + draws.batch);
    for (std::uint64_t i = lo; i < hi; ++i) {
      g.h_bob[i] = channel_gain(sample_radius_bob(draws.u_bob[i], geom), params, geom);
      g.h_eve[i] = channel_gain(sample_radius_eve(draws.u_eve[i], geom), params, geom);
    }
  });
  return g;
}

MCEstimate estimate_asc(const GainSamples& gains, const SecrecyContext& ctx, unsigned workers) {
  const SecrecyKernel kernel(ctx);
  return reduce_blocks(gains.h_bob.size(), gains.batch, workers,
                       [&](std::uint64_t lo, std::uint64_t hi) {
                         RunningStats s;
                         for (std::uint64_t i = lo; i < hi; ++i) {
                           s.add(kernel(gains.h_bob[i], gains.h_eve[i]));
                         }
                         return s;
                       });
}

MCEstimate estimate_asc(const LambertianParams& params, const DeploymentGeometry& geom,
                        const SecrecyContext& ctx, const MCConfig& mc) {
  const auto gains = gains_for(draw_placements(mc), params, geom, mc.n_streams);
  return estimate_asc(gains, ctx, mc.n_streams);
}

SopEstimates estimate_sop(const GainSamples& gains, const SecrecyContext& ctx, double gamma_th,
                          unsigned workers) {
  detail::require_finite(gamma_th, "gamma_th");
  if (gamma_th < 1.0) throw InputError("estimate_sop: gamma_th must be >= 1");
  const auto scale = snr_scale(ctx);
  const std::uint64_t n = gains.h_bob.size();
  std::vector<RunningStats> exact_blocks(block_count(n, gains.batch));
  auto lower = reduce_blocks(n, gains.batch, workers, [&](std::uint64_t lo, std::uint64_t hi) {
    RunningStats low;
    RunningStats ex;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const double jb = scale.alpha_b * gains.h_bob[i] * gains.h_bob[i];
      const double je = scale.alpha_e * gains.h_eve[i] * gains.h_eve[i];
      low.add(jb <= gamma_th * je ? 1.0 : 0.0);
      ex.add(jb <= (1.0 + je) * gamma_th - 1.0 ? 1.0 : 0.0);
    }
    exact_blocks[lo / gains.batch] = ex;
    return low;
  });
  RunningStats exact;
  for (const auto& s : exact_blocks) exact.merge(s);
  return {exact.estimate(), lower};
}

SopEstimates estimate_sop(const LambertianParams& params, const DeploymentGeometry& geom,
                          const SecrecyContext& ctx, double gamma_th, const MCConfig& mc) {
  const auto gains = gains_for(draw_placements(mc), params, geom, mc.n_streams);
  return estimate_sop(gains, ctx, gamma_th, mc.n_streams);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InputError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace vlcsec
