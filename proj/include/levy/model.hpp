#pragma once

// Jump-diffusion Levy models with phase-type jumps:
//
//   X_t = drift t + sigma B_t + (up jumps) - (down jumps),
//
// where each jump component is compound Poisson with a phase-type size law.
// Every exponent of this family is rational, which the factorisation code
// relies on.

#include <complex>
#include <optional>
#include <string>

#include "levy/phase_type.hpp"
#include "levy/polynomial.hpp"

namespace levy {

struct JumpComponent {
  double rate;    // Poisson intensity
  PhaseType law;  // jump magnitude

  friend bool operator==(const JumpComponent&, const JumpComponent&) = default;
};

class LevyModel {
 public:
  /// `gaussian` is sigma^2. Throws ValidationError ("gaussian", "drift",
  /// "up.rate", ...) on invalid or degenerate input.
  LevyModel(double gaussian, double drift, std::optional<JumpComponent> up = std::nullopt,
            std::optional<JumpComponent> down = std::nullopt);

  double gaussian() const noexcept { return sigma2_; }
  double drift() const noexcept { return drift_; }
  const std::optional<JumpComponent>& up() const noexcept { return up_; }
  const std::optional<JumpComponent>& down() const noexcept { return down_; }

  bool bounded_variation() const noexcept { return sigma2_ == 0.0; }
  /// No upward jumps.
  bool spectrally_negative() const noexcept { return !up_; }
  /// Nondecreasing paths.
  bool subordinator() const noexcept { return sigma2_ == 0.0 && drift_ >= 0.0 && !down_; }
  /// Nonincreasing paths.
  bool negative_subordinator() const noexcept { return sigma2_ == 0.0 && drift_ <= 0.0 && !up_; }
  /// The process can enter (-inf, 0) at all.
  bool has_downward_movement() const noexcept { return sigma2_ > 0.0 || drift_ < 0.0 || down_; }

  /// E[X_1].
  double mean() const;

  /// The law of -X: negated drift, jump components swapped.
  LevyModel dual() const;

  /// kappa(s) = log E[e^{s X_1}], continued to the complex plane off the
  /// jump-law poles.
  cplx cumulant(cplx s) const;
  cplx cumulant_derivative(cplx s) const;

  /// kappa(s) - alpha written as numerator(s) / denominator(s) with all
  /// jump-law denominators cleared.
  struct Rational {
    Polynomial numerator;
    Polynomial denominator;
  };
  Rational shifted_cumulant(double alpha) const;

  friend bool operator==(const LevyModel&, const LevyModel&) = default;

 private:
  double sigma2_;
  double drift_;
  std::optional<JumpComponent> up_;
  std::optional<JumpComponent> down_;
};

/// Psi(theta) with E[e^{i theta X_1}] = exp(-Psi(theta)).
cplx char_exponent(const LevyModel& model, cplx theta);

/// psi(z) = -Psi(-i z) with E[e^{z X_1}] = e^{psi(z)}; spectrally negative
/// models only (ModelClassError otherwise).
cplx laplace_exponent(const LevyModel& model, cplx z);

enum class DriftSign { negative, zero, positive };
enum class Regularity { regular, irregular, inconclusive };

/// Which criterion decided regularity of 0 for (-inf, 0).
enum class RegularityClause {
  negative_drift,        // bounded variation with d < 0
  integral_test,         // bounded variation, d = 0, small-jump integral test
  unbounded_variation,   // Gaussian part present
  path_structure,        // finite activity with d >= 0: paths start upward/flat
};

struct RegularityReport {
  bool bounded_variation = false;
  DriftSign drift_sign = DriftSign::zero;
  Regularity regular_downward = Regularity::inconclusive;
  RegularityClause clause = RegularityClause::path_structure;
  std::string diagnostic;
};

RegularityReport classify_regularity(const LevyModel& model);

/// Power-law Levy density c_-|x|^{-1-a} on (-cutoff, 0) and c_+ x^{-1-a}
/// on (0, cutoff).
struct SmallJumpDensity {
  double c_minus = 0.0;
  double c_plus = 0.0;
  double a_index = 0.5;
  double cutoff = 1.0;
};

/// Small-jump integral test for bounded variation, zero drift. Partial
/// integrals over [10^-k, min(1, cutoff)], k = 2..8, decide divergence;
/// the analytic asymptotics must agree or the result is inconclusive.
RegularityReport integral_test(const SmallJumpDensity& density);

const char* to_string(Regularity r);
const char* to_string(RegularityClause c);
const char* to_string(DriftSign d);

}  // namespace levy
