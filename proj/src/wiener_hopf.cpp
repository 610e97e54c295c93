#include "levy/wiener_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levy/errors.hpp"

namespace levy {

namespace {

const cplx I{0.0, 1.0};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// e^{shift x} int_x^inf y^{k-1}/(k-1)! e^{(rho - beta) y} dy, Re(rho - beta) < 0.
// The shift is folded into the exponent so large x cannot overflow.
cplx erlang_tail(cplx rho, int k, cplx beta, double x, double shift = 0.0) {
  const cplx gap = beta - rho;
  cplx sum{};
  cplx gap_pow = gap;
  for (int i = 0; i < k; ++i) {
    const int p = k - 1 - i;
    sum += std::pow(x, p) / factorial(p) / gap_pow;
    gap_pow *= gap;
  }
  return std::exp((shift - gap) * x) * sum;
}

std::string describe(cplx z) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

void check_conjugate_pairs(const std::vector<Root>& rs, const char* what) {
  for (const Root& r : rs) {
    const double scale = std::max(1.0, std::abs(r.value));
    if (std::abs(r.value.imag()) <= 1e-12 * scale) continue;
    const bool paired = std::any_of(rs.begin(), rs.end(), [&](const Root& o) {
      return o.multiplicity == r.multiplicity && std::abs(o.value - std::conj(r.value)) < 1e-7 * scale;
    });
    if (!paired)
      throw StructureError(std::string(what) + " " + describe(r.value) +
                           " has no conjugate partner");
  }
}

bool is_negative_subordinator_only(const LevyModel& m) { return m.negative_subordinator(); }

void require_spectrally_negative(const LevyModel& model, const char* op) {
  if (!model.spectrally_negative())
    throw ModelClassError(std::string(op) + " requires a spectrally negative model (no up jumps)");
  if (is_negative_subordinator_only(model))
    throw ModelClassError(std::string(op) +
                          " is undefined for a negative subordinator (psi has no positive root)");
}

}  // namespace

int RootSet::root_count() const noexcept {
  int n = 0;
  for (const Root& r : roots) n += r.multiplicity;
  return n;
}

int RootSet::pole_count() const noexcept {
  int n = 0;
  for (const Root& r : poles) n += r.multiplicity;
  return n;
}

RootSet make_root_set(const std::vector<cplx>& roots, const std::vector<cplx>& poles,
                      double merge_tol) {
  for (const cplx z : roots)
    if (!(z.real() < -1e-9)) throw StructureError("root " + describe(z) + " is not in Re s < 0");
  for (const cplx z : poles)
    if (!(z.real() < -1e-9)) throw StructureError("pole " + describe(z) + " is not in Re s < 0");
  RootSet rs{cluster_roots(roots, merge_tol), cluster_roots(poles, merge_tol)};
  check_conjugate_pairs(rs.roots, "root");
  check_conjugate_pairs(rs.poles, "pole");
  return rs;
}

RootSet phase_type_roots(const LevyModel& model, double alpha, double axis_tol) {
  if (!(alpha >= 0.0)) throw ValidationError("alpha", "discount rate must be >= 0");
  if (!model.has_downward_movement()) return {};
  if (alpha == 0.0 && !(model.mean() > 0.0))
    throw UnsupportedError(
        "alpha = 0 needs a model drifting to +infinity (E[X_1] > 0); the infimum is -infinity");

  const auto rat = model.shifted_cumulant(alpha);
  std::vector<cplx> all = polynomial_roots(rat.numerator);
  if (alpha == 0.0) {
    // kappa(0) = 0: drop the root at the origin.
    auto it = std::min_element(all.begin(), all.end(),
                               [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    if (it == all.end() || std::abs(*it) > 1e-6)
      throw StructureError("alpha = 0: no root at the origin found");
    all.erase(it);
  }
  std::vector<cplx> left;
  for (const cplx z : all) {
    if (std::abs(z.real()) <= axis_tol)
      throw StructureError("root " + describe(z) +
                           " lies within tolerance of the imaginary axis (ill-conditioned)");
    if (z.real() < 0.0) left.push_back(z);
  }
  std::vector<cplx> poles;
  if (model.down()) poles = model.down()->law.eigenvalues();

  RootSet rs = make_root_set(left, poles);
  const int extra = (model.gaussian() > 0.0 || model.drift() < 0.0) ? 1 : 0;
  if (rs.root_count() != rs.pole_count() + extra) {
    std::ostringstream os;
    os << "root/pole count mismatch: " << rs.root_count() << " roots, " << rs.pole_count()
       << " poles, expected roots = poles + " << extra;
    throw StructureError(os.str());
  }
  return rs;
}

RationalFactor::RationalFactor(RootSet roots) : rs_(std::move(roots)) {}

cplx RationalFactor::operator()(cplx s) const {
  cplx v = 1.0;
  for (const Root& r : rs_.roots) {
    if (std::abs(s - r.value) <= 1e-14 * std::max(1.0, std::abs(r.value)))
      throw PoleError("minus factor evaluated at its pole " + describe(r.value), r.value);
    v *= std::pow(-r.value / (s - r.value), r.multiplicity);
  }
  for (const Root& p : rs_.poles) v *= std::pow((s - p.value) / (-p.value), p.multiplicity);
  return v;
}

cplx RationalFactor::log_derivative(cplx s) const {
  cplx d{};
  for (const Root& r : rs_.roots) d -= static_cast<double>(r.multiplicity) / (s - r.value);
  for (const Root& p : rs_.poles) d += static_cast<double>(p.multiplicity) / (s - p.value);
  return d;
}

double RationalFactor::limit_at_infinity() const {
  if (rs_.root_count() > rs_.pole_count()) return 0.0;
  cplx v = 1.0;
  for (const Root& r : rs_.roots) v *= std::pow(-r.value, r.multiplicity);
  for (const Root& p : rs_.poles) v /= std::pow(-p.value, p.multiplicity);
  return v.real();
}

RationalFactor minus_factor(const RootSet& rs) { return RationalFactor(rs); }

RationalFactor wiener_hopf_minus(const LevyModel& model, double alpha) {
  return RationalFactor(phase_type_roots(model, alpha));
}

cplx wiener_hopf_plus(const LevyModel& model, double alpha, cplx s) {
  return wiener_hopf_minus(model.dual(), alpha)(-s);
}

double atom_at_zero(const RationalFactor& factor) { return factor.limit_at_infinity(); }

// ---- ExpMixture ------------------------------------------------------------

double ExpMixture::density(double x) const {
  if (x < 0.0) return 0.0;
  cplx d{};
  for (const auto& t : terms)
    d += t.A * std::pow(-t.rho * x, t.k - 1) / factorial(t.k - 1) * std::exp(t.rho * x);
  return d.real();
}

double ExpMixture::tilted_tail(double beta, double x) const {
  if (x < 0.0) return transform(beta).real();
  cplx v{};
  for (const auto& t : terms) v += t.A * std::pow(-t.rho, t.k - 1) * erlang_tail(t.rho, t.k, beta, x);
  return v.real();
}

double ExpMixture::overshoot_transform(double beta, double x) const {
  if (x < 0.0) return std::exp(beta * x) * transform(beta).real();
  cplx v{};
  for (const auto& t : terms)
    v += t.A * std::pow(-t.rho, t.k - 1) * erlang_tail(t.rho, t.k, beta, x, beta);
  return v.real();
}

double ExpMixture::cdf(double x) const {
  if (x < 0.0) return 0.0;
  cplx head{};
  for (const auto& t : terms)
    head += t.A * std::pow(-t.rho, t.k - 1) *
            (erlang_tail(t.rho, t.k, 0.0, 0.0) - erlang_tail(t.rho, t.k, 0.0, x));
  return atom0 + head.real();
}

cplx ExpMixture::transform(cplx s) const {
  cplx v = atom0;
  for (const auto& t : terms) v += t.A * std::pow(-t.rho, t.k - 1) / std::pow(s - t.rho, t.k);
  return v;
}

double ExpMixture::total_mass() const {
  cplx v = atom0;
  for (const auto& t : terms) v += t.A / (-t.rho);
  return v.real();
}

ExpMixture partial_fractions(const RationalFactor& factor) {
  const RootSet& rs = factor.root_set();
  cplx scale = 1.0;
  for (const Root& r : rs.roots) scale *= std::pow(-r.value, r.multiplicity);
  for (const Root& p : rs.poles) scale /= std::pow(-p.value, p.multiplicity);
  const auto pole_values = expand_roots(rs.poles);
  const Polynomial numer = Polynomial::from_roots(pole_values, scale);
  const PartialFractions pf = partial_fractions(numer, 1.0, rs.roots);

  ExpMixture mix;
  mix.atom0 = rs.root_count() > rs.pole_count() ? 0.0 : pf.constant.real();
  for (const auto& t : pf.terms)
    mix.terms.push_back({t.pole, t.power, t.coeff / std::pow(-t.pole, t.power - 1)});

  for (int i = 0; i < 10; ++i) {
    const double s = 0.5 * i;
    const double err = std::abs(mix.transform(s) - factor(s));
    if (!(err <= 1e-8)) {
      std::ostringstream os;
      os << "partial fractions do not reproduce the factor at s = " << s << " (error " << err
         << ")";
      throw StructureError(os.str());
    }
  }
  return mix;
}

ExpMixture inf_law(const LevyModel& model, double alpha) {
  if (!model.has_downward_movement()) return ExpMixture{1.0, {}};
  return partial_fractions(wiener_hopf_minus(model, alpha));
}

double wh_factorization_check(const LevyModel& model, double alpha, double theta) {
  if (!(alpha > 0.0)) throw ValidationError("alpha", "factorization check needs alpha > 0");
  const cplx lhs = wiener_hopf_plus(model, alpha, I * theta) * wiener_hopf_minus(model, alpha)(I * theta);
  const cplx rhs = alpha / (alpha + char_exponent(model, theta));
  return std::abs(lhs - rhs);
}

// ---- scale functions --------------------------------------------------------

double ScaleFunction::operator()(double x) const {
  if (x < 0.0) return 0.0;
  cplx w{};
  for (const auto& t : terms) w += t.c * std::pow(x, t.k - 1) / factorial(t.k - 1) * std::exp(t.zeta * x);
  return w.real();
}

double ScaleFunction::derivative(double x) const {
  if (x < 0.0) return 0.0;
  cplx w{};
  for (const auto& t : terms) {
    cplx d = t.zeta * std::pow(x, t.k - 1) / factorial(t.k - 1);
    if (t.k >= 2) d += std::pow(x, t.k - 2) / factorial(t.k - 2);
    w += t.c * d * std::exp(t.zeta * x);
  }
  return w.real();
}

cplx ScaleFunction::laplace(cplx lambda) const {
  cplx v{};
  for (const auto& t : terms) v += t.c / std::pow(lambda - t.zeta, t.k);
  return v;
}

double ScaleFunction::tail_integral(double beta, double x) const {
  cplx v{};
  for (const auto& t : terms) v += t.c * erlang_tail(t.zeta, t.k, beta, std::max(x, 0.0));
  return v.real();
}

double phi_of_alpha(const LevyModel& model, double alpha) {
  require_spectrally_negative(model, "phi_of_alpha");
  if (!(alpha >= 0.0)) throw ValidationError("alpha", "must be >= 0");
  auto psi = [&](double l) { return model.cumulant(l).real(); };
  if (alpha == 0.0 && model.mean() >= 0.0) return 0.0;

  double lam = 1.0;
  while (psi(lam) <= alpha) {
    lam *= 2.0;
    if (lam > 1e300) throw StructureError("phi_of_alpha: psi does not exceed alpha");
  }
  for (int it = 0; it < 500; ++it) {
    const double step = (psi(lam) - alpha) / model.cumulant_derivative(lam).real();
    const double next = lam - step;
    if (!(next < lam) || lam - next <= 1e-16 * lam) {
      lam = std::min(lam, next);
      break;
    }
    lam = next;
  }
  if (alpha == 0.0 && lam < 0.0) lam = 0.0;
  return lam;
}

ScaleFunction scale_function(const LevyModel& model, double alpha) {
  require_spectrally_negative(model, "scale_function");
  if (!(alpha >= 0.0)) throw ValidationError("alpha", "must be >= 0");
  const auto rat = model.shifted_cumulant(alpha);
  const auto roots = cluster_roots(polynomial_roots(rat.numerator));
  // 1/(psi - alpha) = denominator / numerator.
  const PartialFractions pf = partial_fractions(rat.denominator, rat.numerator.leading(), roots);
  if (std::abs(pf.constant) != 0.0)
    throw StructureError("scale function: 1/(psi - alpha) is not strictly proper");
  ScaleFunction w;
  w.alpha = alpha;
  for (const auto& t : pf.terms) w.terms.push_back({t.pole, t.power, t.coeff});
  return w;
}

double sup_law_spectrally_negative(const LevyModel& model, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("alpha", "must be > 0");
  return phi_of_alpha(model, alpha);
}

ExpMixture inf_law_spectrally_negative(const LevyModel& model, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("alpha", "must be > 0");
  const double phi = phi_of_alpha(model, alpha);
  const ScaleFunction w = scale_function(model, alpha);

  // The growing exponential e^{Phi x} cancels exactly in
  // (alpha/Phi) W' - alpha W; identify and drop it.
  cplx zeta_max = w.terms.front().zeta;
  for (const auto& t : w.terms)
    if (t.zeta.real() > zeta_max.real()) zeta_max = t.zeta;
  if (std::abs(zeta_max - phi) > 1e-8 * std::max(1.0, phi))
    throw StructureError("scale function dominant root " + describe(zeta_max) +
                         " disagrees with Phi(alpha) = " + std::to_string(phi));

  ExpMixture mix;
  // W(0) = lim lambda / (psi(lambda) - alpha): zero when psi has a
  // Gaussian (quadratic) part.
  double w0 = 0.0;
  if (model.bounded_variation())
    for (const auto& t : w.terms)
      if (t.k == 1) w0 += t.c.real();
  mix.atom0 = alpha / phi * w0;

  for (std::size_t i = 0; i < w.terms.size(); ++i) {
    const auto& t = w.terms[i];
    if (t.zeta == zeta_max) continue;
    cplx next{};
    for (const auto& u : w.terms)
      if (u.zeta == t.zeta && u.k == t.k + 1) next = u.c;
    const cplx b = alpha / phi * (t.zeta * t.c + next) - alpha * t.c;
    mix.terms.push_back({t.zeta, t.k, b / std::pow(-t.zeta, t.k - 1)});
  }
  return mix;
}

// ---- subordinators --------------------------------------------------------

ExpMixture subordinator_resolvent(const LevyModel& model, double alpha) {
  if (!model.subordinator())
    throw ModelClassError("subordinator_resolvent requires a subordinator (no Gaussian part, "
                          "drift >= 0, no down jumps)");
  if (!(alpha > 0.0)) throw ValidationError("alpha", "must be > 0");
  // alpha + phi(lambda) = -(kappa(-lambda) - alpha).
  const auto rat = model.shifted_cumulant(alpha);
  const Polynomial denom = rat.numerator.reflected();
  const Polynomial numer = cplx(-1.0) * rat.denominator.reflected();
  const auto roots = cluster_roots(polynomial_roots(denom));
  for (const Root& r : roots)
    if (!(r.value.real() < 0.0))
      throw StructureError("resolvent root " + describe(r.value) + " not in Re < 0");
  const PartialFractions pf = partial_fractions(numer, denom.leading(), roots);
  ExpMixture mix;
  mix.atom0 = pf.constant.real();
  for (const auto& t : pf.terms)
    mix.terms.push_back({t.pole, t.power, t.coeff / std::pow(-t.pole, t.power - 1)});
  return mix;
}

}  // namespace levy
