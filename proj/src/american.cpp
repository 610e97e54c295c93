#include "levy/american.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "levy/errors.hpp"
#include "levy/passage.hpp"

namespace levy {

namespace {

const cplx I{0.0, 1.0};

double payoff(double K, double x) { return std::max(K - std::exp(x), 0.0); }

}  // namespace

void validate(const PutProblem& p) {
  if (!std::isfinite(p.strike) || !(p.strike > 0.0))
    throw ValidationError("strike", "must be finite and > 0");
  if (!std::isfinite(p.rate) || !(p.rate >= 0.0))
    throw ValidationError("rate", "must be finite and >= 0");
  if (p.rate == 0.0 && !(p.model.mean() > 0.0))
    throw UnsupportedError(
        "rate = 0 with E[X_1] <= 0: waiting always improves the payoff, so no finite stopping "
        "rule is optimal");
}

const char* to_string(Pasting p) { return p == Pasting::smooth ? "Smooth" : "Continuous"; }

PutSolution optimal_threshold(const PutProblem& p) {
  validate(p);
  PutSolution s;
  s.inf_law = inf_law(p.model, p.rate);
  s.discount_factor = s.inf_law.transform(1.0).real();
  s.x_star = std::log(p.strike * s.discount_factor);
  s.atom0 = s.inf_law.atom0;
  s.pasting = s.atom0 == 0.0 ? Pasting::smooth : Pasting::continuous;
  s.right_derivative = -std::exp(s.x_star) + p.strike * s.atom0;
  return s;
}

double candidate_value(const PutSolution& s, const PutProblem& p, double y, double x) {
  // Negative arguments give the full mass and the full transform, so this
  // reduces to K - e^x below y.
  const double u = x - y;
  return p.strike * s.inf_law.tail(u) -
         std::exp(y) / s.discount_factor * s.inf_law.overshoot_transform(1.0, u);
}

double candidate_value(const PutProblem& p, double y, double x) {
  return candidate_value(optimal_threshold(p), p, y, x);
}

double value_function(const PutSolution& s, const PutProblem& p, double x) {
  if (x <= s.x_star) return p.strike - std::exp(x);
  return candidate_value(s, p, s.x_star, x);
}

double value_function_passage(const PutSolution& s, const PutProblem& p, double x) {
  if (x <= s.x_star) return p.strike - std::exp(x);
  const double u = x - s.x_star;
  const double plain = down_passage_transform(p.model, {p.rate, 0.0, u}).value;
  const double tilted = down_passage_transform(p.model, {p.rate, 1.0, u}).value;
  return p.strike * plain - std::exp(x) * tilted;
}

PastingDiagnosis pasting_diagnosis(const PutSolution& s, const PutProblem& p, double step,
                                   double tol) {
  if (!(step > 0.0)) throw ValidationError("step", "must be > 0");
  if (!(tol > 0.0)) throw ValidationError("tol", "must be > 0");
  PastingDiagnosis d;
  d.pasting = s.pasting;
  d.left_derivative = -std::exp(s.x_star);
  d.right_derivative = s.right_derivative;
  d.numeric_right_derivative =
      (value_function(s, p, s.x_star + step) - value_function(s, p, s.x_star)) / step;
  d.numeric_agrees = std::abs(d.numeric_right_derivative - d.right_derivative) <= tol;
  return d;
}

cplx fourier_left_piece(double strike, double x_star, double lambda) {
  if (lambda == 0.0) throw ValidationError("lambda", "must be nonzero");
  const cplx il = I * lambda;
  return (strike / il - std::exp(x_star) / (il + 1.0)) * std::exp(il * x_star);
}

cplx fourier_check(const PutSolution& s, const PutProblem& p, double lambda) {
  const cplx left = fourier_left_piece(p.strike, s.x_star, lambda);
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double inf = std::numeric_limits<double>::infinity();
  auto v = [&](double u) { return value_function(s, p, s.x_star + u); };
  const double re =
      GK::integrate([&](double u) { return std::cos(lambda * u) * v(u); }, 0.0, inf, 20, 1e-13);
  const double im =
      GK::integrate([&](double u) { return std::sin(lambda * u) * v(u); }, 0.0, inf, 20, 1e-13);
  const cplx phase = std::exp(I * lambda * s.x_star);
  const cplx right = phase * cplx(re, im);
  const cplx il = I * lambda;
  const cplx target = p.strike * phase * s.inf_law.transform(-il) / (il * (il + 1.0));
  return left + right - target;
}

bool OptimalityReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

OptimalityReport verify_optimality(const PutSolution& s, const PutProblem& p,
                                   const std::vector<double>& grid, const SimConfig& cfg,
                                   const std::vector<double>& mc_points,
                                   const std::vector<double>& times) {
  validate(p);
  OptimalityReport rep;
  auto v = [&](double x) { return value_function(s, p, x); };
  for (double x : mc_points) {
    for (double t : times) {
      const Estimate st = estimate_stopped(p.model, p.rate, x, s.x_star, t, v, cfg);
      ConditionCheck c{"martingale", x, t, st.mean, v(x), st.std_error, false};
      c.passed = std::abs(c.lhs - c.rhs) <= 3.0 * c.std_error + 1e-12;
      rep.checks.push_back(c);

      const Estimate dc = estimate_discounted(p.model, p.rate, x, t, v, cfg);
      ConditionCheck d{"supermartingale", x, t, dc.mean, v(x), dc.std_error, false};
      d.passed = d.lhs <= d.rhs + 3.0 * d.std_error + 1e-12;
      rep.checks.push_back(d);
    }
  }
  for (double x : grid) {
    ConditionCheck c{"dominates_payoff", x, 0.0, v(x), payoff(p.strike, x), 0.0, false};
    c.passed = c.lhs >= c.rhs - 1e-10;
    rep.checks.push_back(c);
    if (x <= s.x_star) {
      // Through the mixture formula, not the explicit branch.
      ConditionCheck e{"stopping_region", x, 0.0, candidate_value(s, p, s.x_star, x),
                       p.strike - std::exp(x), 0.0, false};
      e.passed = std::abs(e.lhs - e.rhs) <= 1e-9 * std::max(1.0, p.strike);
      rep.checks.push_back(e);
    }
  }
  return rep;
}

PerturbationReport threshold_perturbation(const PutSolution& s, const PutProblem& p, double y,
                                          const std::vector<double>& grid) {
  PerturbationReport r;
  r.y = y;
  r.min_excess = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    const double vy = x < y ? p.strike - std::exp(x) : candidate_value(s, p, y, x);
    const double e = vy - payoff(p.strike, x);
    if (e < r.min_excess) {
      r.min_excess = e;
      r.argmin = x;
    }
  }
  const double kd = p.strike * s.discount_factor;
  r.threshold_condition = std::exp(y) - kd;
  r.jump_at_y = candidate_value(s, p, y, y) - (p.strike - std::exp(y));
  r.predicted_jump = s.atom0 * (std::exp(y) - kd) / s.discount_factor;
  return r;
}

}  // namespace levy
