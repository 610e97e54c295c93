#include "levy/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <thread>

#include "levy/errors.hpp"
#include "levy/passage.hpp"

namespace levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

// Index of the first cumulative weight exceeding u * total.
std::size_t pick(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
  return std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
}

// Jump sizes by running the underlying Markov chain to absorption.
class PhaseSampler {
 public:
  explicit PhaseSampler(const PhaseType& law) {
    const int n = law.phases();
    const auto& a = law.initial();
    const auto& T = law.subintensity();
    const auto& t = law.exit_rates();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) init_.push_back(acc += a(i));
    for (int i = 0; i < n; ++i) {
      rate_.push_back(-T(i, i));
      std::vector<double> cdf;
      double c = 0.0;
      for (int j = 0; j < n; ++j) cdf.push_back(c += (j == i ? 0.0 : T(i, j)));
      cdf.push_back(c += t(i));  // absorption last
      next_.push_back(std::move(cdf));
    }
  }

  double operator()(Rng& rng) const {
    std::uniform_real_distribution<double> unif;
    std::size_t state = pick(init_, unif(rng));
    double total = 0.0;
    const std::size_t n = rate_.size();
    while (true) {
      total += std::exponential_distribution<double>(rate_[state])(rng);
      const std::size_t next = pick(next_[state], unif(rng));
      if (next == n) return total;
      state = next;
    }
  }

 private:
  std::vector<double> init_;
  std::vector<double> rate_;
  std::vector<std::vector<double>> next_;
};

struct Segment {
  bool crossed;
  double position;  // at the crossing, or at the horizon
  double infimum;
};

class Simulator {
 public:
  Simulator(const LevyModel& m, std::uint64_t seed)
      : rng(seed), drift_(m.drift()), sigma2_(m.gaussian()), sigma_(std::sqrt(m.gaussian())) {
    if (m.up()) {
      up_rate_ = m.up()->rate;
      up_.emplace(m.up()->law);
    }
    if (m.down()) {
      down_rate_ = m.down()->rate;
      down_.emplace(m.down()->law);
    }
  }

  double exponential(double rate) {
    if (rate <= 0.0) return kInf;
    return std::exponential_distribution<double>(rate)(rng);
  }

  double jump() {
    const double total = up_rate_ + down_rate_;
    if (up_ && unif_(rng) * total < up_rate_) return (*up_)(rng);
    return -(*down_)(rng);
  }

  // Run from 0 to `horizon`, stopping at the first strict passage below
  // `barrier` (-inf for none). A diffusive crossing lands on the barrier.
  Segment run(double horizon, double barrier) {
    double pos = 0.0, inf = 0.0, t = 0.0;
    const double jump_rate = up_rate_ + down_rate_;
    while (true) {
      const double gap = exponential(jump_rate);
      const double remaining = horizon - t;
      const bool jumps = gap < remaining;
      const double dt = jumps ? gap : remaining;
      double end = pos + drift_ * dt;
      double low;
      if (sigma_ > 0.0) {
        end += sigma_ * std::sqrt(dt) * normal_(rng);
        const double d = end - pos;
        const double u = 1.0 - unif_(rng);  // (0, 1]
        low = 0.5 * (pos + end - std::sqrt(d * d - 2.0 * sigma2_ * dt * std::log(u)));
      } else {
        low = std::min(pos, end);
      }
      if (low < barrier) return {true, barrier, barrier};
      inf = std::min(inf, low);
      pos = end;
      if (!jumps) return {false, pos, inf};
      t += gap;
      pos += jump();
      if (pos < barrier) return {true, pos, pos};
      inf = std::min(inf, pos);
    }
  }

  double endpoint(double t) {
    double x = drift_ * t;
    if (sigma_ > 0.0) x += sigma_ * std::sqrt(t) * normal_(rng);
    const double rate = (up_rate_ + down_rate_) * t;
    if (rate > 0.0) {
      const long n = std::poisson_distribution<long>(rate)(rng);
      for (long i = 0; i < n; ++i) x += jump();
    }
    return x;
  }

  Rng rng;

 private:
  double drift_, sigma2_, sigma_;
  double up_rate_ = 0.0, down_rate_ = 0.0;
  std::optional<PhaseSampler> up_, down_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> unif_;
};

template <class T, class F>
std::vector<std::vector<T>> run_shards(const LevyModel& model, const SimConfig& cfg, F per_path) {
  validate(cfg);
  const unsigned shards = cfg.shards;
  std::vector<std::vector<T>> out(shards);
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> pool;
  for (unsigned s = 0; s < shards; ++s) {
    const std::size_t n = cfg.n_paths / shards + (s < cfg.n_paths % shards ? 1 : 0);
    pool.emplace_back([&, s, n] {
      try {
        Simulator sim(model, shard_seed(cfg.seed, s));
        out[s].reserve(n);
        for (std::size_t i = 0; i < n; ++i) out[s].push_back(per_path(sim));
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<double> flatten(const std::vector<std::vector<double>>& parts) {
  std::vector<double> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

Estimate constant_estimate(double v, std::size_t n) { return {v, 0.0, n}; }

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.n_paths < 100) throw ValidationError("n_paths", "at least 100 paths are required");
  if (cfg.shards < 1) throw ValidationError("shards", "at least one shard is required");
  if (!(cfg.r0_horizon_epsilon > 0.0 && cfg.r0_horizon_epsilon < 1.0))
    throw ValidationError("r0_horizon_epsilon", "must lie in (0, 1)");
}

Estimate make_estimate(const std::vector<double>& values) {
  Estimate e;
  e.n = values.size();
  if (e.n == 0) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / e.n;
  if (e.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / (e.n - 1) / e.n);
  }
  return e;
}

std::uint64_t shard_seed(std::uint64_t seed, unsigned index) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * index);
}

double truncation_horizon(const LevyModel& model, double level, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("r0_horizon_epsilon", "must lie in (0, 1)");
  if (!model.has_downward_movement()) return 1.0;
  if (!(model.mean() > 0.0))
    throw UnsupportedError("alpha = 0 simulation needs E[X_1] > 0 so that passages are transient");
  auto f = [&](double s) { return model.cumulant(cplx(-s)).real(); };
  // kappa(-s) blows up at the dominant down-jump eigenvalue.
  double s_max = kInf;
  if (model.down()) {
    const auto eig = model.down()->law.eigenvalues();
    double dom = -kInf;
    for (const auto& e : eig) dom = std::max(dom, e.real());
    s_max = -dom;
  }
  double hi = std::isfinite(s_max) ? 0.5 * s_max : 1.0;
  for (int i = 0; i < 400 && !(f(hi) > 0.0); ++i)
    hi = std::isfinite(s_max) ? 0.5 * (hi + s_max) : 2.0 * hi;
  if (!(f(hi) > 0.0)) throw StructureError("could not bracket the adjustment coefficient");
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  const double gamma = hi;
  const double theta = 0.5 * gamma;
  const double decay = -f(theta);
  const double log_term = std::log(2.0 / eps);
  const double y = log_term / gamma;
  // P(X_T < level + y) <= eps/2 by Chernoff, P(inf after T < level) <= e^{-gamma y}.
  return std::max(1.0, (theta * (level + y) + log_term) / decay);
}

std::vector<InfSample> sample_inf_and_endpoint(const LevyModel& model, double r,
                                               const SimConfig& cfg) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("rate", "must be finite and >= 0");
  const double fixed = r > 0.0 ? 0.0 : truncation_horizon(model, 0.0, cfg.r0_horizon_epsilon);
  auto parts = run_shards<InfSample>(model, cfg, [&](Simulator& sim) {
    const double h = r > 0.0 ? sim.exponential(r) : fixed;
    const Segment s = sim.run(h, -kInf);
    return InfSample{s.infimum, s.position};
  });
  std::vector<InfSample> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

Estimate estimate_passage(const LevyModel& model, const PassageQuery& q, Direction dir,
                          const SimConfig& cfg) {
  validate(q);
  // An up-crossing of X is a down-crossing of -X with the same beta weight.
  const LevyModel m = dir == Direction::up ? model.dual() : model;
  const double barrier = -q.level;
  const double fixed =
      q.alpha > 0.0 ? 0.0 : truncation_horizon(m, barrier, cfg.r0_horizon_epsilon);
  auto parts = run_shards<double>(m, cfg, [&](Simulator& sim) {
    const double h = q.alpha > 0.0 ? sim.exponential(q.alpha) : fixed;
    const Segment s = sim.run(h, barrier);
    return s.crossed ? std::exp(q.beta * s.position) : 0.0;
  });
  return make_estimate(flatten(parts));
}

Estimate estimate_put_value(const PutProblem& p, double x, double y, const SimConfig& cfg) {
  validate(p);
  validate(cfg);
  const double K = p.strike;
  if (x < y) return constant_estimate(std::max(K - std::exp(x), 0.0), cfg.n_paths);
  const double barrier = y - x;
  const double fixed =
      p.rate > 0.0 ? 0.0 : truncation_horizon(p.model, barrier, cfg.r0_horizon_epsilon);
  auto parts = run_shards<double>(p.model, cfg, [&](Simulator& sim) {
    const double h = p.rate > 0.0 ? sim.exponential(p.rate) : fixed;
    const Segment s = sim.run(h, barrier);
    return s.crossed ? std::max(K - std::exp(x + s.position), 0.0) : 0.0;
  });
  return make_estimate(flatten(parts));
}

Estimate estimate_stopped(const LevyModel& model, double r, double x, double barrier, double t,
                          const std::function<double(double)>& f, const SimConfig& cfg) {
  if (!(t > 0.0)) throw ValidationError("t", "must be > 0");
  if (!(r >= 0.0)) throw ValidationError("rate", "must be >= 0");
  validate(cfg);
  if (x < barrier) return constant_estimate(f(x), cfg.n_paths);
  auto parts = run_shards<double>(model, cfg, [&](Simulator& sim) {
    const double kill = sim.exponential(r);
    const double h = std::min(t, kill);
    const Segment s = sim.run(h, barrier - x);
    if (s.crossed || kill >= t) return f(x + s.position);
    return 0.0;
  });
  return make_estimate(flatten(parts));
}

Estimate estimate_discounted(const LevyModel& model, double r, double x, double t,
                             const std::function<double(double)>& f, const SimConfig& cfg) {
  if (!(t > 0.0)) throw ValidationError("t", "must be > 0");
  const double disc = std::exp(-r * t);
  auto parts = run_shards<double>(model, cfg, [&](Simulator& sim) {
    return disc * f(x + sim.endpoint(t));
  });
  return make_estimate(flatten(parts));
}

std::vector<ShardedEstimate> simulate_summary(const LevyModel& model, double r,
                                              const SimConfig& cfg) {
  if (!(r >= 0.0)) throw ValidationError("rate", "must be >= 0");
  const double fixed = r > 0.0 ? 0.0 : truncation_horizon(model, 0.0, cfg.r0_horizon_epsilon);
  auto parts = run_shards<InfSample>(model, cfg, [&](Simulator& sim) {
    const double h = r > 0.0 ? sim.exponential(r) : fixed;
    const Segment s = sim.run(h, -kInf);
    return InfSample{s.infimum, s.position};
  });
  std::vector<ShardedEstimate> out(3);
  std::vector<std::vector<double>> all(3);
  for (const auto& shard : parts) {
    std::vector<std::vector<double>> cols(3);
    for (const auto& s : shard) {
      cols[0].push_back(-s.infimum);
      cols[1].push_back(s.infimum == 0.0 ? 1.0 : 0.0);
      cols[2].push_back(s.endpoint);
    }
    for (int k = 0; k < 3; ++k) {
      out[k].shards.push_back(make_estimate(cols[k]));
      all[k].insert(all[k].end(), cols[k].begin(), cols[k].end());
    }
  }
  for (int k = 0; k < 3; ++k) out[k].merged = make_estimate(all[k]);
  return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    const double v = samples[i];
    std::size_t j = i;
    while (j < samples.size() && samples[j] == v) ++j;
    const double left = cdf(std::nextafter(v, -kInf));
    d = std::max({d, std::abs(i / n - left), std::abs(j / n - cdf(v))});
    i = j;
  }
  return d;
}

}  // namespace levy
