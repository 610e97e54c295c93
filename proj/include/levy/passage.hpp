#pragma once

// First-passage transforms. With tau_x^+ = inf{t > 0 : X_t > x} and
// tau_{-x}^- = inf{t > 0 : X_t < -x} (both strict, started at 0):
//
//   up   = E[e^{-alpha tau_x^+ - beta X_{tau_x^+}} 1(tau_x^+ < inf)]
//   down = E[e^{-alpha tau_{-x}^- + beta X_{tau_{-x}^-}} 1(tau_{-x}^- < inf)]

#include "levy/model.hpp"
#include "levy/montecarlo.hpp"
#include "levy/wiener_hopf.hpp"

namespace levy {

struct PassageQuery {
  double alpha = 0.0;
  double beta = 0.0;
  double level = 0.0;  // x >= 0
};

/// alpha, beta, level >= 0 and finite; ValidationError otherwise.
void validate(const PassageQuery& q);

/// Up-crossing transform. Spectrally negative models: e^{-(Phi(alpha)+beta) x}.
/// Subordinators: (alpha + phi(beta)) times the beta-tilted resolvent mass on
/// (x, inf) for x = 0 and [x, inf) for x > 0. Other models: the down-crossing
/// transform of the dual model.
double up_passage_transform(const LevyModel& model, const PassageQuery& q);

struct PassageValue {
  double value = 0.0;
  /// The model never moves below its start, so the passage never happens.
  bool degenerate = false;
};

/// Down-crossing transform from the law of -inf X_{e_alpha}:
/// E[e^{-beta Y} 1(Y > x)] / E[e^{-beta Y}]. At x = 0 a regular model
/// gives exactly 1. alpha = 0 needs E[X_1] > 0 (UnsupportedError).
PassageValue down_passage_transform(const LevyModel& model, const PassageQuery& q);

/// Where the scale-function expression for the downward transform lands.
enum class LevelConvention {
  level_minus_x_from_zero,  // agrees with down_passage_transform
  start_x_level_zero,       // agrees with e^{beta x} down_passage_transform
  neither,
  undetermined,             // comparison unavailable (alpha = 0 off its domain)
};

const char* to_string(LevelConvention c);

struct PrintedFormulaReport {
  double value = 0.0;
  double corollary_value = 0.0;  // down_passage_transform
  double shifted_value = 0.0;    // e^{beta x} down_passage_transform
  LevelConvention matches = LevelConvention::undetermined;
};

/// Spectrally negative downward transform written with the scale function:
///   (psi(beta) - alpha) int_x^inf e^{-beta y} W(y) dy
///     - (alpha - psi(beta)) / (Phi(alpha) - beta) e^{-beta x} W(x),
/// evaluated for beta > Phi(alpha) and as its limit at beta = Phi(alpha).
/// beta < Phi(alpha) throws ValidationError. The report also says which
/// level convention the value matches.
PrintedFormulaReport down_passage_sn_printed(const LevyModel& model, const PassageQuery& q);

struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

/// int_0^inf e^{-q x} E[e^{-alpha tau_x^+ - beta (X_tau - x)}] dx against
/// (1/(q - beta)) (1 - Psi^+(-q)/Psi^+(-beta)) for spectrally negative
/// models, where the left side is 1/(q + Phi(alpha)). q = beta uses the
/// log-derivative limit.
IdentityResidual pecherskii_rogozin_check(const LevyModel& model, double alpha, double beta,
                                          double q);

/// The same identity for a subordinator: left side by quadrature of the
/// up-crossing transform, right side (phi(q) - phi(beta)) / ((q - beta)(alpha + phi(q))).
IdentityResidual pecherskii_rogozin_subordinator_check(const LevyModel& model, double alpha,
                                                       double beta, double q);

/// h(x) = E_x[e^{-alpha tau_0^- + beta X_{tau_0^-}} 1(tau_0^- < inf)]. For
/// x < 0 this is e^{beta x}; at x = 0 it is 1 for regular models and the
/// strict-passage value otherwise.
double h_alpha_beta(const LevyModel& model, double alpha, double beta, double x);

struct FluctuationCheck {
  Estimate lhs;  // E[e^{-alpha tau_x^+ - beta X_tau}] by simulation
  Estimate rhs;  // E[e^{-beta S} 1(S > x)] / E[e^{-beta S}], S = sup X_{e_alpha}
  double z_score = 0.0;
};

/// Both sides of the first-passage/supremum identity estimated on
/// independent seed streams.
FluctuationCheck fluctuation_identity_check(const LevyModel& model, const PassageQuery& q,
                                            const SimConfig& cfg);

}  // namespace levy
