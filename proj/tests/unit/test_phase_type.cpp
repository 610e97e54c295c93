#include <doctest.h>

#include <cmath>

#include "levy/errors.hpp"
#include "levy/phase_type.hpp"
#include "oracles.hpp"

using namespace levy;
using doctest::Approx;

namespace {

std::string field_of(const Eigen::VectorXd& a, const Eigen::MatrixXd& T) {
  try {
    PhaseType pt(a, T);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<none>";
}

// Non-trivial 3-phase law with feedback between phases.
PhaseType coxian3() {
  Eigen::VectorXd a(3);
  a << 0.5, 0.3, 0.2;
  Eigen::MatrixXd T(3, 3);
  T << -3.0, 1.0, 0.5,
        0.5, -2.0, 1.0,
        0.0, 0.2, -1.5;
  return PhaseType(a, T);
}

}  // namespace

TEST_CASE("exponential transform and density") {
  const auto e = PhaseType::exponential(2.0);
  CHECK(pt_laplace(e, 0.0).real() == Approx(1.0).epsilon(1e-15));
  CHECK(pt_laplace(e, 2.0).real() == Approx(0.5).epsilon(1e-15));
  CHECK(pt_density(e, 0.0) == Approx(2.0).epsilon(1e-14));
  CHECK(pt_density(e, 1.0) == Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
  CHECK(e.mean() == Approx(0.5));
}

TEST_CASE("hyperexponential transform by hand") {
  const auto h = PhaseType::hyperexponential({0.3, 0.7}, {1.0, 3.0});
  CHECK(pt_laplace(h, 1.0).real() == Approx(0.3 * 0.5 + 0.7 * 0.75).epsilon(1e-14));
  CHECK(pt_laplace(h, 1.0).imag() == Approx(0.0));
}

TEST_CASE("Erlang density and transform") {
  const auto e = PhaseType::erlang(2, 1.0);
  CHECK(pt_density(e, 1.0) == Approx(std::exp(-1.0)).epsilon(1e-13));
  const auto e4 = PhaseType::erlang(2, 4.0);
  const cplx s(0.7, 1.3);
  const cplx expect = std::pow(4.0 / (4.0 + s), 2);
  CHECK(std::abs(e4.laplace(s) - expect) < 1e-14);
  CHECK(e4.mean() == Approx(0.5));
}

TEST_CASE("density integrates to one and transform matches quadrature") {
  for (const auto& pt : {coxian3(), PhaseType::erlang(3, 2.0),
                         PhaseType::hyperexponential({0.3, 0.7}, {1.0, 3.0})}) {
    const double upper = 40.0 * pt.mean();
    CHECK(oracle::integrate([&](double x) { return pt_density(pt, x); }, 0.0, upper) ==
          Approx(1.0).epsilon(1e-8));
    CHECK(oracle::integrate([&](double x) { return x * pt_density(pt, x); }, 0.0, upper) ==
          Approx(pt.mean()).epsilon(1e-8));
    for (double s : {0.5, 1.0, 2.0}) {
      const double q = oracle::integrate_to_inf(
          [&](double x) { return std::exp(-s * x) * pt_density(pt, x); }, 0.0);
      CHECK(std::abs(pt_laplace(pt, s).real() - q) < 1e-6);
    }
  }
}

TEST_CASE("numerator/denominator form equals the resolvent form") {
  const auto pt = coxian3();
  for (const cplx s : {cplx(0.0), cplx(1.0, 2.0), cplx(-0.5, 0.1), cplx(7.0, -3.0)}) {
    const cplx rational = pt.laplace_numerator()(s) / pt.laplace_denominator()(s);
    CHECK(std::abs(rational - pt.laplace(s)) < 1e-12);
  }
  CHECK(pt.laplace_denominator().degree() == 3);
  CHECK(std::abs(pt.laplace_denominator().leading() - 1.0) < 1e-15);
  CHECK(pt.laplace_numerator().degree() < 3);
}

TEST_CASE("transform derivative by central differences") {
  const auto pt = coxian3();
  const cplx s(0.8, 0.4);
  const double h = 1e-5;
  const cplx fd = (pt.laplace(s + h) - pt.laplace(s - h)) / (2.0 * h);
  CHECK(std::abs(fd - pt.laplace_derivative(s)) < 1e-8);
}

TEST_CASE("matrix exponential against a closed form") {
  // Upper-triangular with distinct diagonal: e^{Tx} entries are explicit.
  Eigen::MatrixXd T(2, 2);
  T << -1.0, 1.0, 0.0, -2.0;
  const double x = 3.0;
  const Eigen::MatrixXd E = expm(T * x);
  CHECK(E(0, 0) == Approx(std::exp(-x)).epsilon(1e-13));
  CHECK(E(1, 1) == Approx(std::exp(-2 * x)).epsilon(1e-13));
  CHECK(E(0, 1) == Approx(std::exp(-x) - std::exp(-2 * x)).epsilon(1e-13));
  CHECK(E(1, 0) == 0.0);
}

TEST_CASE("evaluation at an eigenvalue raises a pole error") {
  const auto e = PhaseType::exponential(2.0);
  CHECK_THROWS_AS(e.laplace(-2.0), PoleError);
  try {
    e.laplace(-2.0);
  } catch (const PoleError& p) {
    CHECK(std::abs(p.pole() - cplx(-2.0)) < 1e-12);
  }
}

TEST_CASE("validation names the offending entry") {
  Eigen::VectorXd a1(1);
  a1 << 1.0;
  Eigen::MatrixXd T1(1, 1);
  T1 << 2.0;
  CHECK(field_of(a1, T1) == "T[0][0]");

  Eigen::VectorXd a2(2);
  a2 << 0.5, 0.6;
  Eigen::MatrixXd T2(2, 2);
  T2 << -1.0, 0.0, 0.0, -1.0;
  CHECK(field_of(a2, T2) == "a");

  a2 << 0.5, 0.5;
  T2 << -1.0, -0.1, 0.0, -1.0;
  CHECK(field_of(a2, T2) == "T[0][1]");

  T2 << -1.0, 2.0, 0.0, -1.0;
  CHECK(field_of(a2, T2) == "T[0]");

  a2 << -0.1, 1.1;
  T2 << -1.0, 0.0, 0.0, -1.0;
  CHECK(field_of(a2, T2) == "a[0]");
}
