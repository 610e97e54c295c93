#pragma once

// Wiener-Hopf factors for the phase-type jump-diffusion family.
//
// Sign conventions: kappa(s) = log E[e^{s X_1}]. The minus factor is
// Psi^-_alpha(s) = E[e^{s inf_{t <= e_alpha} X_t}], analytic for Re s >= 0,
// and the plus factor is Psi^+_alpha(s) = E[e^{s sup_{t <= e_alpha} X_t}],
// analytic for Re s <= 0. Both are rational here.

#include <complex>
#include <vector>

#include "levy/model.hpp"
#include "levy/polynomial.hpp"

namespace levy {

/// Roots of kappa(s) = alpha and poles of 1/(kappa(s) - alpha) in the open
/// left half-plane, clustered with multiplicity.
struct RootSet {
  std::vector<Root> roots;
  std::vector<Root> poles;

  int root_count() const noexcept;
  int pole_count() const noexcept;
};

/// Build a RootSet from raw (unclustered) values: entries closer than
/// `merge_tol` merge into one root with multiplicity. Throws StructureError
/// if any value has real part >= -1e-9 or non-real values are not paired
/// with their conjugates.
RootSet make_root_set(const std::vector<cplx>& roots, const std::vector<cplx>& poles,
                      double merge_tol = 1e-7);

/// Left half-plane roots/poles for the minus factor of `model` at
/// discount `alpha`. alpha = 0 is the limit for models drifting to +inf
/// (the root at the origin is dropped); other alpha = 0 queries throw
/// UnsupportedError. Models without downward movement give an empty set.
RootSet phase_type_roots(const LevyModel& model, double alpha, double axis_tol = 1e-9);

/// Psi^-(s) = prod(-rho)/prod(-eta) * prod(s - eta)/prod(s - rho).
class RationalFactor {
 public:
  explicit RationalFactor(RootSet roots);

  const RootSet& root_set() const noexcept { return rs_; }
  /// Throws PoleError at a root.
  cplx operator()(cplx s) const;
  /// d/ds log Psi^-(s)
  cplx log_derivative(cplx s) const;
  /// lim_{s -> inf} Psi^-(s): zero when there are more roots than poles.
  double limit_at_infinity() const;

 private:
  RootSet rs_;
};

RationalFactor minus_factor(const RootSet& rs);

/// Convenience: minus factor of `model` at `alpha`.
RationalFactor wiener_hopf_minus(const LevyModel& model, double alpha);
/// Plus factor evaluated through the dual model: Psi^+(s) = Psi^-_dual(-s).
cplx wiener_hopf_plus(const LevyModel& model, double alpha, cplx s);

/// A * (-rho x)^{k-1}/(k-1)! * e^{rho x}
struct MixtureTerm {
  cplx rho;
  int k = 1;
  cplx A;
};

/// Law of a nonnegative variable (here -inf X at an exponential time):
/// an atom at 0 plus a density sum of Erlang-type terms. Also used for the
/// subordinator resolvent measure, whose mass is 1/alpha instead of 1.
struct ExpMixture {
  double atom0 = 0.0;
  std::vector<MixtureTerm> terms;

  double density(double x) const;
  /// P(Y <= x) (atom included for x >= 0).
  double cdf(double x) const;
  /// P(Y > x); for x < 0 the whole mass.
  double tail(double x) const { return tilted_tail(0.0, x); }
  /// E[e^{-beta Y} 1(Y > x)]. For x < 0 this is transform(beta).
  double tilted_tail(double beta, double x) const;
  /// E[e^{-beta (Y - x)} 1(Y > x)] = e^{beta x} tilted_tail(beta, x),
  /// evaluated without forming e^{beta x}.
  double overshoot_transform(double beta, double x) const;
  /// E[e^{-s Y}] = atom0 + int e^{-s y} density(y) dy, Re s > max Re rho.
  cplx transform(cplx s) const;
  double total_mass() const;
};

/// Partial-fraction expansion of the minus factor into the law of
/// -inf X_{e_alpha}. Re-evaluates the expansion against the product form on
/// ten points and throws StructureError on a mismatch above 1e-8.
ExpMixture partial_fractions(const RationalFactor& factor);

/// P(inf X_{e_alpha} = 0) from the s -> infinity limit of the factor.
double atom_at_zero(const RationalFactor& factor);

/// Law of -inf X_{e_alpha} for any model in the family (alpha = 0 under the
/// drift-to-+inf limit).
ExpMixture inf_law(const LevyModel& model, double alpha);

/// |Psi^+(i theta) Psi^-(i theta) - alpha / (alpha + Psi(theta))|
double wh_factorization_check(const LevyModel& model, double alpha, double theta);

// ---- spectrally negative models ------------------------------------------

/// c * x^{k-1}/(k-1)! * e^{zeta x}
struct ScaleTerm {
  cplx zeta;
  int k = 1;
  cplx c;
};

/// W^{(alpha)} as an exponential sum; W(x) = 0 for x < 0.
struct ScaleFunction {
  double alpha = 0.0;
  std::vector<ScaleTerm> terms;

  double operator()(double x) const;
  double derivative(double x) const;
  /// int_0^inf e^{-lambda x} W(x) dx for Re lambda > Phi(alpha).
  cplx laplace(cplx lambda) const;
  /// int_x^inf e^{-beta y} W(y) dy for beta > Phi(alpha), x >= 0.
  double tail_integral(double beta, double x) const;
};

/// Largest real root of psi(lambda) = alpha, by Newton iteration from
/// above (psi is convex on [0, inf)).
double phi_of_alpha(const LevyModel& model, double alpha);

ScaleFunction scale_function(const LevyModel& model, double alpha);

/// sup X_{e_alpha} ~ Exp(Phi(alpha)); returns the rate Phi(alpha).
double sup_law_spectrally_negative(const LevyModel& model, double alpha);

/// Law of -inf X_{e_alpha} from the scale function:
/// (alpha/Phi) dW(x) - alpha W(x) dx, atom (alpha/Phi) W(0).
ExpMixture inf_law_spectrally_negative(const LevyModel& model, double alpha);

// ---- subordinators ------------------------------------------------------

/// alpha-resolvent U^{(alpha)} with transform 1/(alpha + phi(lambda)),
/// phi(lambda) = drift lambda + rate (1 - F(lambda)). Atom at 0 when the
/// drift is zero; total mass 1/alpha.
ExpMixture subordinator_resolvent(const LevyModel& model, double alpha);

}  // namespace levy
