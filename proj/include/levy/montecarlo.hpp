#pragma once

// Exact path simulation for the jump-diffusion family. Between jump epochs
// the path is Brownian motion with drift; its minimum over a segment is
// drawn from the closed-form Brownian-bridge-minimum law given the
// endpoints, so infima and barrier crossings carry no discretisation bias.
//
// Work is split into shards. Shard i uses std::mt19937_64 seeded with
// splitmix64(seed + i * 0x9E3779B97F4A7C15); per-path results are merged
// in shard order, so (seed, shards, n_paths) fixes every estimate bit for
// bit regardless of thread scheduling.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "levy/model.hpp"
#include "levy/put_problem.hpp"

namespace levy {

struct SimConfig {
  std::size_t n_paths = 100000;
  std::uint64_t seed = 20240601;
  unsigned shards = 4;
  /// Bound on the probability that an alpha = 0 run misses an event
  /// after its truncation horizon.
  double r0_horizon_epsilon = 1e-6;
};

/// n_paths >= 100, shards >= 1, epsilon in (0, 1); ValidationError otherwise.
void validate(const SimConfig& cfg);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n = 0;
};

Estimate make_estimate(const std::vector<double>& values);

struct ShardedEstimate {
  Estimate merged;
  std::vector<Estimate> shards;
};

/// Deterministic seed for shard `index`.
std::uint64_t shard_seed(std::uint64_t seed, unsigned index);

struct InfSample {
  double infimum;   // inf_{t <= e_r} X_t (<= 0)
  double endpoint;  // X_{e_r}
};

/// Exact samples of (inf X, X) at an independent Exp(r) time, in shard
/// order. r = 0 (requires E[X_1] > 0) truncates at a horizon after which a
/// new infimum has probability below cfg.r0_horizon_epsilon.
std::vector<InfSample> sample_inf_and_endpoint(const LevyModel& model, double r,
                                               const SimConfig& cfg);

enum class Direction { up, down };

struct PassageQuery;  // passage.hpp

/// E[e^{-alpha tau} e^{-beta X_tau} 1(tau < inf)] for tau = tau_x^+ (up)
/// and E[e^{-alpha tau} e^{beta X_tau} 1(tau < inf)] for tau = tau_{-x}^-
/// (down). Paths run to the barrier or to the killing time e_alpha.
Estimate estimate_passage(const LevyModel& model, const PassageQuery& q, Direction dir,
                          const SimConfig& cfg);

/// Direct estimate of v_y(x) = E_x[e^{-r tau_y^-} (K - e^{X_tau})^+].
Estimate estimate_put_value(const PutProblem& p, double x, double y, const SimConfig& cfg);

/// E_x[e^{-r (t ^ tau)} f(X_{t ^ tau})] with tau the first strict passage
/// below `barrier` (absolute level). Used for the martingale check.
Estimate estimate_stopped(const LevyModel& model, double r, double x, double barrier, double t,
                          const std::function<double(double)>& f, const SimConfig& cfg);

/// E_x[e^{-r t} f(X_t)]. Used for the supermartingale check.
Estimate estimate_discounted(const LevyModel& model, double r, double x, double t,
                             const std::function<double(double)>& f, const SimConfig& cfg);

/// Per-shard and merged estimates of mean(-inf X_{e_r}), P(inf X_{e_r} = 0)
/// and mean(X_{e_r}), in that order.
std::vector<ShardedEstimate> simulate_summary(const LevyModel& model, double r,
                                              const SimConfig& cfg);

/// Kolmogorov-Smirnov distance between the empirical law of `samples`
/// and `cdf` (right-continuous; atoms are handled through left limits).
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Horizon T with P(first passage below `level` happens after T) <= eps,
/// for models with E[X_1] > 0 (Chernoff bound plus the Lundberg bound on
/// the all-time infimum).
double truncation_horizon(const LevyModel& model, double level, double eps);

}  // namespace levy
