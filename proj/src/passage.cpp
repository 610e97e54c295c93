#include "levy/passage.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

#include "levy/errors.hpp"

namespace levy {

namespace {

void require_finite_nonneg(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0) throw ValidationError(field, "must be finite and >= 0");
}

// phi(lambda) = -kappa(-lambda), the Laplace exponent of a subordinator.
double sub_exponent(const LevyModel& m, double lambda) { return -m.cumulant(-lambda).real(); }

}  // namespace

void validate(const PassageQuery& q) {
  require_finite_nonneg(q.alpha, "alpha");
  require_finite_nonneg(q.beta, "beta");
  require_finite_nonneg(q.level, "level");
}

double up_passage_transform(const LevyModel& model, const PassageQuery& q) {
  validate(q);
  if (model.negative_subordinator()) return 0.0;
  if (model.spectrally_negative()) {
    const double phi = phi_of_alpha(model, q.alpha);
    return std::exp(-(phi + q.beta) * q.level);
  }
  if (model.subordinator()) {
    if (!(q.alpha > 0.0))
      throw UnsupportedError("subordinator up-crossing transform needs alpha > 0");
    const ExpMixture u = subordinator_resolvent(model, q.alpha);
    return (q.alpha + sub_exponent(model, q.beta)) * u.tilted_tail(q.beta, q.level);
  }
  // Up-crossings of X are down-crossings of -X.
  return down_passage_transform(model.dual(), q).value;
}

PassageValue down_passage_transform(const LevyModel& model, const PassageQuery& q) {
  validate(q);
  if (!model.has_downward_movement()) return {0.0, true};
  const ExpMixture mix = inf_law(model, q.alpha);
  if (q.level == 0.0 && mix.atom0 == 0.0) return {1.0, false};
  return {mix.tilted_tail(q.beta, q.level) / mix.transform(q.beta).real(), false};
}

const char* to_string(LevelConvention c) {
  switch (c) {
    case LevelConvention::level_minus_x_from_zero: return "level_minus_x_from_zero";
    case LevelConvention::start_x_level_zero: return "start_x_level_zero";
    case LevelConvention::neither: return "neither";
    case LevelConvention::undetermined: return "undetermined";
  }
  return "?";
}

PrintedFormulaReport down_passage_sn_printed(const LevyModel& model, const PassageQuery& q) {
  validate(q);
  if (!model.spectrally_negative())
    throw ModelClassError("scale-function passage formula needs a spectrally negative model");
  const double phi = phi_of_alpha(model, q.alpha);
  const double a = q.alpha, b = q.beta, x = q.level;
  const double tol = 1e-10 * std::max(1.0, phi);
  if (b < phi - tol)
    throw ValidationError("beta", "must be >= Phi(alpha) = " + std::to_string(phi));
  const ScaleFunction w = scale_function(model, a);

  PrintedFormulaReport rep;
  if (std::abs(b - phi) <= tol) {
    // Only the e^{Phi y} term of W survives the (psi(beta) - alpha) factor.
    cplx c_phi{};
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : w.terms)
      if (t.k == 1 && std::abs(t.zeta - phi) < best) {
        best = std::abs(t.zeta - phi);
        c_phi = t.c;
      }
    const double dpsi = model.cumulant_derivative(phi).real();
    rep.value = dpsi * (c_phi.real() - std::exp(-phi * x) * w(x));
  } else {
    const double gap = model.cumulant(b).real() - a;  // psi(beta) - alpha
    rep.value = gap * w.tail_integral(b, x) - (-gap) / (phi - b) * std::exp(-b * x) * w(x);
  }

  try {
    rep.corollary_value = down_passage_transform(model, q).value;
  } catch (const UnsupportedError&) {
    rep.corollary_value = rep.shifted_value = std::numeric_limits<double>::quiet_NaN();
    rep.matches = LevelConvention::undetermined;
    return rep;
  }
  rep.shifted_value = std::exp(b * x) * rep.corollary_value;
  auto close = [&](double v) { return std::abs(rep.value - v) <= 1e-8 * std::max(1.0, std::abs(v)); };
  if (close(rep.corollary_value))
    rep.matches = LevelConvention::level_minus_x_from_zero;
  else if (close(rep.shifted_value))
    rep.matches = LevelConvention::start_x_level_zero;
  else
    rep.matches = LevelConvention::neither;
  return rep;
}

IdentityResidual pecherskii_rogozin_check(const LevyModel& model, double alpha, double beta,
                                          double q) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha", "must be > 0");
  require_finite_nonneg(beta, "beta");
  if (!(q > 0.0) || !std::isfinite(q)) throw ValidationError("q", "must be > 0");
  if (!model.spectrally_negative())
    throw ModelClassError("this form of the identity needs a spectrally negative model");
  IdentityResidual r;
  r.lhs = 1.0 / (q + phi_of_alpha(model, alpha));
  // Psi^+(-z) is the dual model's minus factor at z.
  const RationalFactor g = wiener_hopf_minus(model.dual(), alpha);
  if (std::abs(q - beta) <= 1e-9 * std::max(1.0, q))
    r.rhs = -g.log_derivative(beta).real();
  else
    r.rhs = (1.0 - (g(q) / g(beta)).real()) / (q - beta);
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

IdentityResidual pecherskii_rogozin_subordinator_check(const LevyModel& model, double alpha,
                                                       double beta, double q) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha", "must be > 0");
  require_finite_nonneg(beta, "beta");
  if (!(q > 0.0) || !std::isfinite(q)) throw ValidationError("q", "must be > 0");
  if (!model.subordinator()) throw ModelClassError("identity check needs a subordinator");
  const ExpMixture u = subordinator_resolvent(model, alpha);
  const double scale = alpha + sub_exponent(model, beta);
  auto integrand = [&](double x) {
    return std::exp((beta - q) * x) * scale * u.tilted_tail(beta, x);
  };
  IdentityResidual r;
  r.lhs = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13);
  const double phi_q = sub_exponent(model, q);
  if (std::abs(q - beta) <= 1e-9 * std::max(1.0, q))
    r.rhs = model.cumulant_derivative(-beta).real() / (alpha + phi_q);
  else
    r.rhs = (phi_q - sub_exponent(model, beta)) / ((q - beta) * (alpha + phi_q));
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

double h_alpha_beta(const LevyModel& model, double alpha, double beta, double x) {
  if (!std::isfinite(x)) throw ValidationError("x", "must be finite");
  if (x < 0.0) return std::exp(beta * x);
  const PassageValue v = down_passage_transform(model, {alpha, beta, x});
  return std::exp(beta * x) * v.value;
}

FluctuationCheck fluctuation_identity_check(const LevyModel& model, const PassageQuery& q,
                                            const SimConfig& cfg) {
  validate(q);
  FluctuationCheck out;
  out.lhs = estimate_passage(model, q, Direction::up, cfg);

  SimConfig other = cfg;
  other.seed = shard_seed(cfg.seed ^ 0x5DEECE66DULL, 0xFFFF);
  const auto samples = sample_inf_and_endpoint(model.dual(), q.alpha, other);
  const std::size_t n = samples.size();
  std::vector<double> num(n), den(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = -samples[i].infimum;
    den[i] = std::exp(-q.beta * s);
    num[i] = s > q.level ? den[i] : 0.0;
  }
  const Estimate en = make_estimate(num), ed = make_estimate(den);
  const double ratio = en.mean / ed.mean;
  std::vector<double> lin(n);
  for (std::size_t i = 0; i < n; ++i) lin[i] = (num[i] - ratio * den[i]) / ed.mean;
  out.rhs = {ratio, make_estimate(lin).std_error, n};

  const double se = std::hypot(out.lhs.std_error, out.rhs.std_error);
  const double diff = std::abs(out.lhs.mean - out.rhs.mean);
  out.z_score = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return out;
}

}  // namespace levy
