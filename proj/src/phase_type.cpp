#include "levy/phase_type.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <string>

#include "levy/errors.hpp"

namespace levy {

namespace {

std::string idx(const char* name, int i) { return std::string(name) + "[" + std::to_string(i) + "]"; }
std::string idx(const char* name, int i, int j) {
  return idx(name, i) + "[" + std::to_string(j) + "]";
}

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  const double norm = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd B = A / std::ldexp(1.0, squarings);

  // ||B|| <= 1/2: 20 terms put the truncation error far below 1e-16.
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = (term * B) / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

PhaseType::PhaseType(Eigen::VectorXd a, Eigen::MatrixXd T) : a_(std::move(a)), T_(std::move(T)) {
  const int m = static_cast<int>(a_.size());
  if (m < 1) throw ValidationError("a", "phase-type law needs at least one phase");
  if (T_.rows() != m) throw ValidationError("T", "expected " + std::to_string(m) + " rows");
  if (T_.cols() != m) throw ValidationError("T", "expected " + std::to_string(m) + " columns");

  for (int i = 0; i < m; ++i) {
    if (!std::isfinite(a_(i)) || a_(i) < 0.0)
      throw ValidationError(idx("a", i), "initial probabilities must be finite and >= 0");
  }
  if (std::abs(a_.sum() - 1.0) > 1e-12)
    throw ValidationError("a", "initial probabilities must sum to 1");

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double v = T_(i, j);
      if (!std::isfinite(v)) throw ValidationError(idx("T", i, j), "entry must be finite");
      if (i == j && !(v < 0.0))
        throw ValidationError(idx("T", i, j), "diagonal entries must be strictly negative");
      if (i != j && v < 0.0)
        throw ValidationError(idx("T", i, j), "off-diagonal entries must be >= 0");
    }
  }
  t_ = -(T_ * Eigen::VectorXd::Ones(m));
  for (int i = 0; i < m; ++i) {
    if (t_(i) < -1e-12 * std::abs(T_(i, i)))
      throw ValidationError(idx("T", i), "row sums must be <= 0");
    if (t_(i) < 0.0) t_(i) = 0.0;
  }
  if (!(t_.maxCoeff() > 0.0))
    throw ValidationError("T", "no exit to absorption: some row sum must be < 0");

  Eigen::EigenSolver<Eigen::MatrixXd> es(T_, false);
  for (int i = 0; i < m; ++i) {
    const cplx e = es.eigenvalues()(i);
    if (!(e.real() < 0.0))
      throw ValidationError("T", "subintensity eigenvalues must have negative real part");
    eig_.push_back(e);
  }

  // Faddeev-LeVerrier: det(sI - T) = sum c_k s^k and
  // adj(sI - T) = sum_{k=1}^m M_k s^{m-k}.
  std::vector<cplx> charpoly(static_cast<std::size_t>(m + 1), cplx{});
  std::vector<cplx> numer(static_cast<std::size_t>(m), cplx{});
  charpoly[m] = 1.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
  for (int k = 1; k <= m; ++k) {
    M = T_ * M + charpoly[m - k + 1].real() * I;
    numer[m - k] = a_.dot(M * t_);
    charpoly[m - k] = -(T_ * M).trace() / k;
  }
  num_ = Polynomial(std::move(numer));
  den_ = Polynomial(std::move(charpoly));
}

PhaseType PhaseType::exponential(double rate) {
  if (!(rate > 0.0)) throw ValidationError("rate", "exponential rate must be > 0");
  return PhaseType(Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Constant(1, 1, -rate));
}

PhaseType PhaseType::erlang(int shape, double rate) {
  if (shape < 1) throw ValidationError("shape", "Erlang shape must be >= 1");
  if (!(rate > 0.0)) throw ValidationError("rate", "Erlang rate must be > 0");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(shape);
  a(0) = 1.0;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(shape, shape);
  for (int i = 0; i < shape; ++i) {
    T(i, i) = -rate;
    if (i + 1 < shape) T(i, i + 1) = rate;
  }
  return PhaseType(std::move(a), std::move(T));
}

PhaseType PhaseType::hyperexponential(const std::vector<double>& probs,
                                      const std::vector<double>& rates) {
  if (probs.size() != rates.size())
    throw ValidationError("rates", "probabilities and rates differ in length");
  const int m = static_cast<int>(probs.size());
  Eigen::VectorXd a(m);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    a(i) = probs[static_cast<std::size_t>(i)];
    T(i, i) = -rates[static_cast<std::size_t>(i)];
  }
  return PhaseType(std::move(a), std::move(T));
}

double PhaseType::mean() const {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a_.size());
  return a_.dot((-T_).partialPivLu().solve(ones));
}

void PhaseType::check_pole(cplx s) const {
  for (const cplx e : eig_) {
    if (std::abs(s - e) <= 1e-12) {
      std::ostringstream os;
      os << "phase-type transform evaluated at eigenvalue (" << e.real() << ", " << e.imag()
         << ") of T";
      throw PoleError(os.str(), e);
    }
  }
}

cplx PhaseType::laplace(cplx s) const {
  check_pole(s);
  const Eigen::Index m = a_.size();
  Eigen::MatrixXcd A = s * Eigen::MatrixXcd::Identity(m, m) - T_.cast<cplx>();
  const Eigen::VectorXcd y = A.partialPivLu().solve(t_.cast<cplx>());
  return a_.cast<cplx>().dot(y);
}

cplx PhaseType::laplace_derivative(cplx s) const {
  check_pole(s);
  const Eigen::Index m = a_.size();
  Eigen::MatrixXcd A = s * Eigen::MatrixXcd::Identity(m, m) - T_.cast<cplx>();
  const auto lu = A.partialPivLu();
  const Eigen::VectorXcd y = lu.solve(lu.solve(t_.cast<cplx>()));
  return -a_.cast<cplx>().dot(y);
}

double PhaseType::density(double x) const {
  if (x < 0.0) return 0.0;
  return a_.dot(expm(T_ * x) * t_);
}

cplx pt_laplace(const PhaseType& pt, cplx s) { return pt.laplace(s); }
double pt_density(const PhaseType& pt, double x) { return pt.density(x); }

}  // namespace levy
