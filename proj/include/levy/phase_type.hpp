#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "levy/polynomial.hpp"

namespace levy {

/// Matrix exponential by scaling and squaring with a truncated Taylor
/// series. Intended for the small (m <= 8) subintensity matrices used here.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

/// Phase-type law: absorption time of a Markov chain on m transient
/// phases with initial row vector `a` and subintensity matrix `T`.
/// The exit vector t = -T 1 is derived, never supplied.
class PhaseType {
 public:
  /// Throws ValidationError with field paths "a[i]" / "T[i][j]".
  PhaseType(Eigen::VectorXd a, Eigen::MatrixXd T);

  static PhaseType exponential(double rate);
  static PhaseType erlang(int shape, double rate);
  static PhaseType hyperexponential(const std::vector<double>& probs,
                                    const std::vector<double>& rates);

  int phases() const noexcept { return static_cast<int>(a_.size()); }
  const Eigen::VectorXd& initial() const noexcept { return a_; }
  const Eigen::MatrixXd& subintensity() const noexcept { return T_; }
  const Eigen::VectorXd& exit_rates() const noexcept { return t_; }
  /// Eigenvalues of T (all with negative real part).
  const std::vector<cplx>& eigenvalues() const noexcept { return eig_; }

  double mean() const;

  /// E[e^{-sU}] = a (sI - T)^{-1} t, analytically continued off the
  /// spectrum of T. Throws PoleError within 1e-12 of an eigenvalue.
  cplx laplace(cplx s) const;
  /// d/ds of laplace(s) = -a (sI - T)^{-2} t.
  cplx laplace_derivative(cplx s) const;

  /// a e^{Tx} t for x >= 0.
  double density(double x) const;

  /// laplace(s) == numerator(s) / denominator(s) with denominator =
  /// det(sI - T) (monic, degree m) and deg numerator < m. Built with the
  /// Faddeev-LeVerrier recursion.
  const Polynomial& laplace_numerator() const noexcept { return num_; }
  const Polynomial& laplace_denominator() const noexcept { return den_; }

  friend bool operator==(const PhaseType& x, const PhaseType& y) {
    return x.a_ == y.a_ && x.T_ == y.T_;
  }

 private:
  void check_pole(cplx s) const;

  Eigen::VectorXd a_;
  Eigen::MatrixXd T_;
  Eigen::VectorXd t_;
  std::vector<cplx> eig_;
  Polynomial num_;
  Polynomial den_;
};

cplx pt_laplace(const PhaseType& pt, cplx s);
double pt_density(const PhaseType& pt, double x);

}  // namespace levy
