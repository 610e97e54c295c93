// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "levy/american.hpp"
#include "levy/fleet.hpp"
#include "levy/montecarlo.hpp"
#include "levy/passage.hpp"
#include "levy/wiener_hopf.hpp"
#include "oracles.hpp"

using namespace levy;

namespace {

SimConfig mc(std::uint64_t seed) {
  SimConfig c;
  c.n_paths = 100000;
  c.seed = seed;
  return c;
}

// Collects failures for one criterion; the first few reasons are printed.
struct Tally {
  std::vector<std::string> failures;
  double worst = 0.0;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void track(double v) { worst = std::max(worst, v); }
};

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

int n_failed = 0;

void report(int n, const std::string& title, const Tally& t, const std::string& detail) {
  const bool ok = t.failures.empty();
  if (!ok) ++n_failed;
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, title.c_str(), detail.c_str());
  for (std::size_t i = 0; i < t.failures.size() && i < 5; ++i)
    std::printf("         - %s\n", t.failures[i].c_str());
}

bool spectrally_negative(const LevyModel& m) {
  return !m.up() && !m.negative_subordinator() && m.has_downward_movement();
}

double zscore(const Estimate& e, double target) {
  if (e.std_error == 0.0) return e.mean == target ? 0.0 : 1e9;
  return std::abs(e.mean - target) / e.std_error;
}

std::vector<double> grid_around(double c, double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = c + lo + (hi - lo) * i / (n - 1);
  return g;
}

void criterion1() {
  Tally t;
  const PutProblem p{2.0, 1.0, LevyModel(2.0, 0.0)};
  const PutSolution s = optimal_threshold(p);
  // -inf X_{e_1} ~ Exp(1) for sigma^2 = 2: E[e^{inf}] = 1/2, x* = log(2/2) = 0.
  t.expect(std::abs(s.x_star) <= 1e-10, "x* = " + fmt(s.x_star));
  t.expect(std::abs(s.discount_factor - 0.5) <= 1e-10, "D = " + fmt(s.discount_factor));
  const double v1 = value_function(s, p, 1.0);
  t.expect(std::abs(v1 - std::exp(-1.0)) <= 1e-10, "v(1) = " + fmt(v1));
  t.expect(s.pasting == Pasting::smooth, "pasting not smooth");
  t.expect(std::abs(s.right_derivative + 1.0) <= 1e-10, "v'(0+) = " + fmt(s.right_derivative));
  const Estimate e = estimate_put_value(p, 1.0, s.x_star, mc(101));
  const double z = zscore(e, std::exp(-1.0));
  t.expect(z < 3.0, "MC z = " + fmt(z));
  report(1, "Black-Scholes put reference", t,
         "v(1)=" + fmt(v1) + ", MC " + fmt(e.mean) + "+-" + fmt(e.std_error) + ", z=" + fmt(z));
}

void criterion2() {
  Tally t;
  const PutProblem p = {2.0, 2.0, fleet_entry("sn_bv_up_drift").model};
  const double expect = 2.0 / (1.0 + std::sqrt(3.0));
  const double phi = phi_of_alpha(p.model, 2.0);
  t.expect(std::abs(phi - (1.0 + std::sqrt(3.0))) <= 1e-12, "Phi(2) = " + fmt(phi));
  const double via_scale = inf_law_spectrally_negative(p.model, 2.0).atom0;
  const double via_factor = atom_at_zero(wiener_hopf_minus(p.model, 2.0));
  t.expect(std::abs(via_scale - expect) <= 1e-9, "scale-function atom " + fmt(via_scale));
  t.expect(std::abs(via_factor - expect) <= 1e-9, "rational-factor atom " + fmt(via_factor));
  const auto sim = simulate_summary(p.model, 2.0, mc(102));
  const double z = zscore(sim[1].merged, expect);
  t.expect(z < 3.0, "MC frequency z = " + fmt(z));

  const PutSolution s = optimal_threshold(p);
  t.expect(s.pasting == Pasting::continuous, "pasting not continuous");
  const double kink = s.right_derivative + std::exp(s.x_star) - p.strike * s.atom0;
  t.expect(std::abs(kink) <= 1e-10, "kink residual " + fmt(kink));
  const auto d = pasting_diagnosis(s, p, 1e-4, 1e-3);
  const double num = std::abs(d.numeric_right_derivative - d.right_derivative);
  t.expect(num <= 1e-3, "numeric derivative off by " + fmt(num));
  report(2, "irregular reference: atom at zero and continuous pasting", t,
         "atom " + fmt(via_factor) + ", MC " + fmt(sim[1].merged.mean) + "+-" +
             fmt(sim[1].merged.std_error) + ", numeric derivative gap " + fmt(num));
}

void criterion3() {
  Tally t;
  for (const auto& e : reference_fleet())
    for (double th : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
      const double r = wh_factorization_check(e.model, e.rate, th);
      t.track(r);
      t.expect(r < 1e-8, e.name + " theta=" + fmt(th) + " residual " + fmt(r));
    }
  report(3, "factorization residual on the fleet", t, "max residual " + fmt(t.worst));
}

void criterion4() {
  Tally t;
  int n = 0;
  for (const auto& e : reference_fleet()) {
    if (!spectrally_negative(e.model)) continue;
    ++n;
    const double phi = phi_of_alpha(e.model, e.rate);
    for (auto [q, b] : {std::pair{1.0, 0.0}, {2.0, 0.5}, {3.0, 1.0}}) {
      const auto r = pecherskii_rogozin_check(e.model, e.rate, b, q);
      // Left side has the closed form 1/(q + Phi(alpha)).
      const double closed = 1.0 / (q + phi);
      const double err = std::max(r.residual, std::abs(r.lhs - closed));
      t.track(err);
      t.expect(err <= 1e-10, e.name + " (q,beta)=(" + fmt(q) + "," + fmt(b) + ") err " + fmt(err));
    }
  }
  report(4, "first-passage transform identity", t,
         std::to_string(n) + " models, max error " + fmt(t.worst));
}

void criterion5() {
  Tally t;
  for (const auto& e : reference_fleet()) {
    if (!spectrally_negative(e.model)) continue;
    const ScaleFunction W = scale_function(e.model, e.rate);
    const double phi = phi_of_alpha(e.model, e.rate);
    for (double dl : {1.0, 2.0, 5.0}) {
      const double lam = phi + dl;
      const double target = 1.0 / (e.model.cumulant(lam).real() - e.rate);
      // e^{(Phi - lambda) B} < 1e-12.
      const double B = std::log(1e12) / dl + 1.0;
      const double quad = oracle::integrate([&](double x) { return std::exp(-lam * x) * W(x); }, 0.0, B);
      const double rel = std::abs(quad - target) / std::abs(target);
      const double rel_closed = std::abs(W.laplace(lam).real() - target) / std::abs(target);
      t.track(std::max(rel, rel_closed));
      t.expect(rel <= 1e-8 && rel_closed <= 1e-8, e.name + " lambda=" + fmt(lam) + " rel " + fmt(rel));
    }
  }
  double closed = 0.0;
  const ScaleFunction sinh_w = scale_function(LevyModel(2.0, 0.0), 1.0);
  const ScaleFunction lin_w = scale_function(fleet_entry("sn_bv_up_drift").model, 0.0);
  for (int i = 0; i <= 40; ++i) {
    const double x = 0.1 * i;
    closed = std::max(closed, std::abs(sinh_w(x) - std::sinh(x)));
    closed = std::max(closed, std::abs(lin_w(x) - (1.0 + x)));
  }
  t.expect(closed <= 1e-12, "closed-form scale functions off by " + fmt(closed));
  report(5, "scale-function transform and closed forms", t,
         "max relative transform error " + fmt(t.worst) + ", closed-form error " + fmt(closed));
}

void criterion6() {
  Tally t;
  double worst_ks = 0.0;
  const double crit = 1.63 / std::sqrt(1e5);
  std::uint64_t seed = 600;
  for (const auto& e : reference_fleet()) {
    const ExpMixture mix = inf_law(e.model, e.rate);
    const double mass = mix.atom0 + oracle::integrate_to_inf([&](double y) { return mix.density(y); }, 0.0);
    t.track(std::abs(mass - 1.0));
    t.expect(std::abs(mass - 1.0) <= 1e-8, e.name + " mass " + fmt(mass));
    const auto s = sample_inf_and_endpoint(e.model, e.rate, mc(++seed));
    std::vector<double> neg;
    neg.reserve(s.size());
    for (const auto& v : s) neg.push_back(-v.infimum);
    const double d = ks_statistic(neg, [&](double y) { return mix.cdf(y); });
    worst_ks = std::max(worst_ks, d);
    t.expect(d < crit, e.name + " KS " + fmt(d));
  }
  report(6, "infimum law normalization and KS vs simulation", t,
         "max mass error " + fmt(t.worst) + ", max KS " + fmt(worst_ks) + " < " + fmt(crit));
}

void criterion7() {
  Tally t;
  for (const auto& e : reference_fleet()) {
    const PutProblem p{e.strike, e.rate, e.model};
    const PutSolution s = optimal_threshold(p);
    for (double x : grid_around(s.x_star, -2.0, 3.0, 50)) {
      const double a = value_function(s, p, x), b = value_function_passage(s, p, x);
      t.track(std::abs(a - b));
      t.expect(std::abs(a - b) <= 1e-9, e.name + " paths differ at x=" + fmt(x));
      t.expect(a >= std::max(p.strike - std::exp(x), 0.0) - 1e-12, e.name + " below payoff at " + fmt(x));
      t.expect(a <= p.strike, e.name + " above K at " + fmt(x));
    }
    const double jump = std::abs(value_function(s, p, s.x_star + 1e-12) - (p.strike - std::exp(s.x_star)));
    t.expect(jump <= 1e-9, e.name + " discontinuous at x*: " + fmt(jump));
  }
  report(7, "two value-function paths and bounds", t, "max path gap " + fmt(t.worst));
}

void criterion8() {
  Tally t;
  for (const char* name : {"brownian", "two_sided_pt"}) {
    const auto e = fleet_entry(name);
    const PutProblem p{e.strike, e.rate, e.model};
    const PutSolution s = optimal_threshold(p);
    for (double l : {0.5, 1.0, 2.0}) {
      const double r = std::abs(fourier_check(s, p, l));
      t.track(r);
      t.expect(r < 1e-4, e.name + " lambda=" + fmt(l) + " residual " + fmt(r));
    }
  }
  report(8, "Fourier identity", t, "max residual " + fmt(t.worst));
}

void criterion9() {
  Tally t;
  std::uint64_t seed = 900;
  int n_checks = 0;
  for (const auto& e : reference_fleet()) {
    const PutProblem p{e.strike, e.rate, e.model};
    const PutSolution s = optimal_threshold(p);
    const auto grid = grid_around(s.x_star, -1.0, 2.0, 61);
    const std::vector<double> mc_points = {s.x_star + 0.3, s.x_star + 1.0};
    const auto rep = verify_optimality(s, p, grid, mc(++seed), mc_points, {0.5, 1.0});
    for (const auto& c : rep.checks) {
      ++n_checks;
      t.expect(c.passed, e.name + " " + c.condition + " x=" + fmt(c.x) + " t=" + fmt(c.t) +
                             " lhs " + fmt(c.lhs) + " rhs " + fmt(c.rhs));
    }
    if (!e.model.has_downward_movement()) continue;  // no passage below: y only moves the payoff
    const auto scan = grid_around(s.x_star, -1.0, 1.0, 801);
    for (double d : {-0.2, 0.2}) {
      const auto r = threshold_perturbation(s, p, s.x_star + d, scan);
      if (s.atom0 > 0.0) {
        const bool sign_ok = d < 0 ? r.jump_at_y < 0.0 : r.jump_at_y > 0.0;
        t.expect(std::abs(r.jump_at_y - r.predicted_jump) <= 1e-9 && sign_ok,
                 e.name + " y=x*" + fmt(d) + " jump " + fmt(r.jump_at_y) + " vs " + fmt(r.predicted_jump));
      } else if (d < 0) {
        t.expect(r.min_excess < 0.0, e.name + " y=x*-0.2 lower bound holds (" + fmt(r.min_excess) + ")");
      } else {
        t.expect(r.threshold_condition > 0.0,
                 e.name + " y=x*+0.2 condition holds (" + fmt(r.threshold_condition) + ")");
      }
    }
  }
  report(9, "optimality conditions and perturbed thresholds", t,
         std::to_string(n_checks) + " checks");
}

void criterion10() {
  Tally t;
  for (const auto& e : reference_fleet()) {
    const PutProblem p{e.strike, e.rate, e.model};
    const PutSolution s = optimal_threshold(p);
    const bool regular = classify_regularity(e.model).regular_downward == Regularity::regular;
    const bool no_atom = s.atom0 == 0.0;
    const bool smooth = s.pasting == Pasting::smooth;
    t.expect(regular == no_atom && no_atom == smooth,
             e.name + " regular=" + std::to_string(regular) + " atom0=" + fmt(s.atom0) +
                 " pasting=" + to_string(s.pasting));
  }
  report(10, "regularity, atom and pasting agree", t, "6 models");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::function<void()>> all = {criterion1, criterion2, criterion3, criterion4,
                                                  criterion5, criterion6, criterion7, criterion8,
                                                  criterion9, criterion10};
  for (std::size_t i = 0; i < all.size(); ++i) {
    try {
      all[i]();
    } catch (const std::exception& ex) {
      ++n_failed;
      std::printf("[FAIL] criterion %zu: exception: %s\n", i + 1, ex.what());
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria failed, %.1f s\n", n_failed, all.size(), secs);
  return n_failed == 0 ? 0 : 1;
}
