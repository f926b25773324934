#pragma once

// Seeded Monte-Carlo estimates over random receiver placements.
//
// The sample plan is a sequence of fixed-size blocks. Block i draws from its own
// mt19937_64 seeded by a splitmix64 hash of (seed, i), so the drawn values and the
// in-order block reduction do not depend on how many workers run the blocks.

#include <cstdint>
#include <functional>
#include <vector>

#include "vlcsec/channel.hpp"
#include "vlcsec/geometry.hpp"
#include "vlcsec/secrecy.hpp"

namespace vlcsec {

struct MCConfig {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 20240611;
  unsigned n_streams = 1;  ///< worker threads
  std::uint64_t batch = 65'536;  ///< samples per reduction block

  void validate() const;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< sample standard deviation / sqrt(n)
  std::uint64_t n = 0;
};

/// Streaming mean/variance with an order-sensitive (hence reproducible) merge.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);
  [[nodiscard]] std::uint64_t count() const { return n_; }
  [[nodiscard]] double mean() const { return mean_; }
  [[nodiscard]] MCEstimate estimate() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);
/// Seed of block `index` in the plan rooted at `seed`.
std::uint64_t block_seed(std::uint64_t seed, std::uint64_t index);

/// Runs body(block) for block in [0, n_blocks) on up to `workers` threads.
/// Exceptions from a body are rethrown on the calling thread.
void parallel_for(std::uint64_t n_blocks, unsigned workers,
                  const std::function<void(std::uint64_t)>& body);

/// Uniform variates for Bob and Eve, reusable across parameter points (common random numbers).
struct PlacementDraws {
  std::vector<double> u_bob;
  std::vector<double> u_eve;
  std::uint64_t batch = 0;
};
PlacementDraws draw_placements(const MCConfig& mc);

/// Channel gains of the drawn placements under one geometry and LED.
struct GainSamples {
  std::vector<double> h_bob;
  std::vector<double> h_eve;
  std::uint64_t batch = 0;
};
GainSamples gains_for(const PlacementDraws& draws, const LambertianParams& params,
                      const DeploymentGeometry& geom, unsigned workers);

MCEstimate estimate_asc(const GainSamples& gains, const SecrecyContext& ctx, unsigned workers);
MCEstimate estimate_asc(const LambertianParams& params, const DeploymentGeometry& geom,
                        const SecrecyContext& ctx, const MCConfig& mc);

struct SopEstimates {
  MCEstimate exact;  ///< Pr(J_B <= (1 + J_E) gamma - 1)
  MCEstimate lower;  ///< Pr(J_B <= gamma J_E)
};
SopEstimates estimate_sop(const GainSamples& gains, const SecrecyContext& ctx, double gamma_th,
                          unsigned workers);
SopEstimates estimate_sop(const LambertianParams& params, const DeploymentGeometry& geom,
                          const SecrecyContext& ctx, double gamma_th, const MCConfig& mc);

/// Kolmogorov-Smirnov statistic sup |F_n - F| of the samples against cdf (samples are copied).
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace vlcsec
