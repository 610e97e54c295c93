#include "levy/model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <sstream>

#include "levy/errors.hpp"

namespace levy {

namespace {

const cplx I{0.0, 1.0};

void check_component(const std::optional<JumpComponent>& c, const char* name) {
  if (c && !(std::isfinite(c->rate) && c->rate > 0.0))
    throw ValidationError(std::string(name) + ".rate", "jump rate must be > 0");
}

}  // namespace

LevyModel::LevyModel(double gaussian, double drift, std::optional<JumpComponent> up,
                     std::optional<JumpComponent> down)
    : sigma2_(gaussian), drift_(drift), up_(std::move(up)), down_(std::move(down)) {
  if (!std::isfinite(sigma2_) || sigma2_ < 0.0)
    throw ValidationError("gaussian", "variance coefficient must be finite and >= 0");
  if (!std::isfinite(drift_)) throw ValidationError("drift", "drift must be finite");
  check_component(up_, "up");
  check_component(down_, "down");
  if (sigma2_ == 0.0 && drift_ == 0.0 && !up_ && !down_)
    throw ValidationError("", "degenerate model: no Gaussian part, drift or jumps");
}

double LevyModel::mean() const {
  double m = drift_;
  if (up_) m += up_->rate * up_->law.mean();
  if (down_) m -= down_->rate * down_->law.mean();
  return m;
}

LevyModel LevyModel::dual() const { return LevyModel(sigma2_, -drift_, down_, up_); }

cplx LevyModel::cumulant(cplx s) const {
  cplx k = drift_ * s + 0.5 * sigma2_ * s * s;
  if (up_) k += up_->rate * (up_->law.laplace(-s) - 1.0);
  if (down_) k += down_->rate * (down_->law.laplace(s) - 1.0);
  return k;
}

cplx LevyModel::cumulant_derivative(cplx s) const {
  cplx k = drift_ + sigma2_ * s;
  if (up_) k -= up_->rate * up_->law.laplace_derivative(-s);
  if (down_) k += down_->rate * down_->law.laplace_derivative(s);
  return k;
}

LevyModel::Rational LevyModel::shifted_cumulant(double alpha) const {
  const double lam_u = up_ ? up_->rate : 0.0;
  const double lam_d = down_ ? down_->rate : 0.0;
  const Polynomial base{cplx(-lam_u - lam_d - alpha), cplx(drift_), cplx(0.5 * sigma2_)};
  const Polynomial one = Polynomial::constant(1.0);
  // E[e^{sU}] for up jumps is the phase-type transform at -s.
  const Polynomial pu = up_ ? up_->law.laplace_numerator().reflected() : Polynomial{};
  const Polynomial qu = up_ ? up_->law.laplace_denominator().reflected() : one;
  const Polynomial pd = down_ ? down_->law.laplace_numerator() : Polynomial{};
  const Polynomial qd = down_ ? down_->law.laplace_denominator() : one;

  Rational r;
  r.numerator = base * qu * qd + cplx(lam_u) * pu * qd + cplx(lam_d) * pd * qu;
  r.denominator = qu * qd;
  return r;
}

cplx char_exponent(const LevyModel& model, cplx theta) { return -model.cumulant(I * theta); }

cplx laplace_exponent(const LevyModel& model, cplx z) {
  if (!model.spectrally_negative())
    throw ModelClassError("laplace exponent requires a spectrally negative model (no up jumps)");
  return -char_exponent(model, -I * z);
}

RegularityReport classify_regularity(const LevyModel& model) {
  RegularityReport rep;
  rep.bounded_variation = model.bounded_variation();
  const double d = model.drift();
  rep.drift_sign = d < 0.0 ? DriftSign::negative : (d > 0.0 ? DriftSign::positive : DriftSign::zero);
  if (!rep.bounded_variation) {
    rep.regular_downward = Regularity::regular;
    rep.clause = RegularityClause::unbounded_variation;
    rep.diagnostic = "Gaussian component present";
  } else if (d < 0.0) {
    rep.regular_downward = Regularity::regular;
    rep.clause = RegularityClause::negative_drift;
    rep.diagnostic = "bounded variation with negative drift";
  } else {
    rep.regular_downward = Regularity::irregular;
    rep.clause = RegularityClause::path_structure;
    rep.diagnostic =
        "finite activity with nonnegative drift: paths leave 0 upward or stay flat until the "
        "first jump";
  }
  return rep;
}

RegularityReport integral_test(const SmallJumpDensity& dens) {
  const double a = dens.a_index;
  if (!std::isfinite(a) || a <= 0.0) throw ValidationError("a_index", "must lie in (0, 2)");
  if (a >= 2.0) throw ValidationError("a_index", "must lie in (0, 2)");
  if (a >= 1.0)
    throw ModelClassError("integral test needs bounded variation (a_index < 1)");
  if (!(dens.c_minus >= 0.0)) throw ValidationError("c_minus", "must be >= 0");
  if (!(dens.c_plus >= 0.0)) throw ValidationError("c_plus", "must be >= 0");
  if (!(dens.c_minus + dens.c_plus > 0.0))
    throw ValidationError("c_minus", "c_minus + c_plus must be > 0");
  if (!(dens.cutoff > 0.0)) throw ValidationError("cutoff", "must be > 0");

  RegularityReport rep;
  rep.bounded_variation = true;
  rep.drift_sign = DriftSign::zero;
  rep.clause = RegularityClause::integral_test;

  if (dens.c_plus == 0.0) {
    rep.regular_downward = Regularity::inconclusive;
    rep.diagnostic =
        "no positive jumps: denominator integral vanishes identically; the test is undefined";
    return rep;
  }
  if (dens.c_minus == 0.0) {
    rep.regular_downward = Regularity::irregular;
    rep.diagnostic = "no negative jumps: the integral is zero (finite)";
    return rep;
  }

  const double upper = std::min(1.0, dens.cutoff);
  const double cut_pow = std::pow(dens.cutoff, -a);
  // int_0^u Pi(y, inf) dy for u <= cutoff.
  auto denom = [&](double u) {
    return dens.c_plus / a * (std::pow(u, 1.0 - a) / (1.0 - a) - u * cut_pow);
  };
  // Integrate in t = log u so every decade has equal weight.
  auto integrand = [&](double t) {
    const double u = std::exp(t);
    return dens.c_minus * std::pow(u, -a) / denom(u) * u;
  };
  std::array<double, 7> partial{};
  for (int k = 2; k <= 8; ++k) {
    const double lo = std::log(std::pow(10.0, -k));
    partial[k - 2] = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, lo, std::log(upper), 15, 1e-12);
  }
  std::array<double, 6> inc{};
  for (int k = 0; k < 6; ++k) inc[k] = partial[k + 1] - partial[k];

  const double ratio = inc[5] / inc[4];
  const double slope = a * (1.0 - a) * dens.c_minus / dens.c_plus * std::log(10.0);
  std::ostringstream os;
  os.precision(6);
  os << "per-decade increment " << inc[5] << " (asymptotic " << slope << "), ratio " << ratio;
  rep.diagnostic = os.str();
  const bool numeric_divergent = inc[5] > 0.0 && std::abs(ratio - 1.0) < 0.05 &&
                                 std::abs(inc[5] - slope) < 0.05 * slope;
  // With c_- > 0 and c_+ > 0 the integrand behaves like const/u near 0, so
  // the integral diverges logarithmically.
  rep.regular_downward = numeric_divergent ? Regularity::regular : Regularity::inconclusive;
  return rep;
}

const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::regular: return "regular";
    case Regularity::irregular: return "irregular";
    case Regularity::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(RegularityClause c) {
  switch (c) {
    case RegularityClause::negative_drift: return "bounded_variation_negative_drift";
    case RegularityClause::integral_test: return "integral_test";
    case RegularityClause::unbounded_variation: return "unbounded_variation";
    case RegularityClause::path_structure: return "path_structure";
  }
  return "?";
}

const char* to_string(DriftSign d) {
  switch (d) {
    case DriftSign::negative: return "negative";
    case DriftSign::zero: return "zero";
    case DriftSign::positive: return "positive";
  }
  return "?";
}

}  // namespace levy
