#pragma once

// Perpetual American put on e^{X} for the phase-type jump-diffusion family.
// The optimal rule stops at the first strict passage of X below
// x* = log(K E[e^{inf X_{e_r}}]); the value function and the pasting
// behaviour at x* follow from the law of inf X_{e_r}.

#include <string>
#include <vector>

#include "levy/montecarlo.hpp"
#include "levy/put_problem.hpp"
#include "levy/wiener_hopf.hpp"

namespace levy {

enum class Pasting { smooth, continuous };

const char* to_string(Pasting p);

struct PutSolution {
  double x_star = 0.0;
  double discount_factor = 0.0;  // E[e^{inf X_{e_r}}]
  ExpMixture inf_law;            // law of -inf X_{e_r}
  Pasting pasting = Pasting::smooth;
  double atom0 = 0.0;             // P(inf X_{e_r} = 0)
  double right_derivative = 0.0;  // v'(x*+) = -e^{x*} + K atom0
};

PutSolution optimal_threshold(const PutProblem& p);

/// v(x) = K P(-inf > x - x*) - (e^x/D) E[e^{inf}; -inf > x - x*] for x > x*,
/// K - e^x for x <= x*.
double value_function(const PutSolution& s, const PutProblem& p, double x);

/// v(x) = E_x[e^{-r tau} (K - e^{X_tau})] with tau the passage below x*,
/// assembled from the downward passage transforms.
double value_function_passage(const PutSolution& s, const PutProblem& p, double x);

/// Value of stopping at the first strict passage below an arbitrary
/// threshold y (equal to value_function when y = x*).
double candidate_value(const PutSolution& s, const PutProblem& p, double y, double x);
double candidate_value(const PutProblem& p, double y, double x);

struct PastingDiagnosis {
  Pasting pasting = Pasting::smooth;
  double left_derivative = 0.0;           // -e^{x*}
  double right_derivative = 0.0;          // closed form
  double numeric_right_derivative = 0.0;  // forward difference of v
  bool numeric_agrees = false;
};

PastingDiagnosis pasting_diagnosis(const PutSolution& s, const PutProblem& p, double step = 1e-4,
                                   double tol = 1e-3);

/// Closed-form transform of K - e^x on (-inf, x*] (regularised at lambda).
cplx fourier_left_piece(double strike, double x_star, double lambda);

/// L(lambda) + R(lambda) - K e^{i lambda x*} Psi^-(-i lambda) / (i lambda (i lambda + 1)),
/// with R the transform of v over [x*, inf) by quadrature.
cplx fourier_check(const PutSolution& s, const PutProblem& p, double lambda);

struct ConditionCheck {
  std::string condition;
  double x = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double std_error = 0.0;
  bool passed = false;
};

struct OptimalityReport {
  std::vector<ConditionCheck> checks;
  bool all_passed() const;
};

/// (i) martingale up to the passage below x* and (ii) supermartingale
/// property, both by simulation at `mc_points` (3 standard errors);
/// (iii) v >= (K - e^x)^+ and (iv) v = K - e^x on x <= x*, both on `grid`.
OptimalityReport verify_optimality(const PutSolution& s, const PutProblem& p,
                                   const std::vector<double>& grid, const SimConfig& cfg,
                                   const std::vector<double>& mc_points,
                                   const std::vector<double>& times = {0.5, 1.0});

struct PerturbationReport {
  double y = 0.0;
  /// Smallest v_y(x) - (K - e^x)^+ over the grid (lower-bound condition).
  double min_excess = 0.0;
  double argmin = 0.0;
  /// e^y - K D: positive means the value does not vanish where it should
  /// above the threshold.
  double threshold_condition = 0.0;
  /// v_y(y) - (K - e^y): the jump at y for irregular models.
  double jump_at_y = 0.0;
  double predicted_jump = 0.0;  // atom0 (e^y - K D) / D
};

PerturbationReport threshold_perturbation(const PutSolution& s, const PutProblem& p, double y,
                                          const std::vector<double>& grid);

}  // namespace levy
