#include "levy/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "levy/errors.hpp"

namespace levy {

Polynomial::Polynomial(std::vector<cplx> ascending) : c_(std::move(ascending)) {
  trim();
}

Polynomial::Polynomial(std::initializer_list<cplx> ascending) : c_(ascending) {
  trim();
}

Polynomial Polynomial::constant(cplx c) { return Polynomial({c}); }

Polynomial Polynomial::from_roots(std::span<const cplx> roots, cplx lead) {
  std::vector<cplx> c{lead};
  for (const cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, cplx{});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

cplx Polynomial::coeff(int i) const noexcept {
  return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : cplx{};
}

cplx Polynomial::operator()(cplx s) const noexcept {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::reflected() const {
  std::vector<cplx> r = c_;
  for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::deflate(cplx root, cplx* remainder) const {
  if (c_.empty()) {
    if (remainder) *remainder = cplx{};
    return {};
  }
  const std::size_t n = c_.size() - 1;
  std::vector<cplx> q(n);
  cplx carry = c_[n];
  for (std::size_t i = n; i-- > 0;) {
    q[i] = carry;
    carry = c_[i] + carry * root;
  }
  if (remainder) *remainder = carry;
  return Polynomial(std::move(q));
}

std::vector<cplx> Polynomial::taylor_at(cplx center) const {
  std::vector<cplx> out;
  out.reserve(c_.size());
  Polynomial work = *this;
  while (!work.is_zero()) {
    cplx rem;
    work = work.deflate(center, &rem);
    out.push_back(rem);
  }
  return out;
}

bool Polynomial::has_real_coefficients() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](cplx z) { return z.imag() == 0.0; });
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), cplx{});
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + cplx(-1.0) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(cplx k, const Polynomial& p) {
  std::vector<cplx> c = p.c_;
  for (auto& z : c) z *= k;
  return Polynomial(std::move(c));
}

namespace {

// Pair roots of a real polynomial into exact conjugates.
void make_conjugate_symmetric(std::vector<cplx>& roots) {
  const std::size_t n = roots.size();
  std::vector<bool> used(n, false);
  std::vector<cplx> out;
  out.reserve(n);
  // Numerically real roots first, so they never serve as a partner.
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z = roots[i];
    if (std::abs(z.imag()) <= 1e-13 * std::max(1.0, std::abs(z))) {
      used[i] = true;
      out.emplace_back(z.real(), 0.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    const cplx z = roots[i];
    std::size_t best = n;
    double best_d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(roots[j] - std::conj(z));
      if (best == n || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    // A genuine partner sits much closer to conj(z) than z sits to the real
    // axis. Anything else (e.g. the odd member of a split multiple real
    // root) is projected onto the axis.
    if (best == n || !(best_d < std::abs(z.imag()))) {
      out.emplace_back(z.real(), 0.0);
      continue;
    }
    used[best] = true;
    const cplx m = 0.5 * (z + std::conj(roots[best]));
    out.push_back(m);
    out.push_back(std::conj(m));
  }
  roots = std::move(out);
}

}  // namespace

std::vector<cplx> polynomial_roots(const Polynomial& p) {
  if (p.degree() < 1) return {};
  const auto& all = p.coefficients();
  std::size_t zeros = 0;
  while (zeros < all.size() && all[zeros] == cplx{}) ++zeros;
  std::vector<cplx> roots(zeros, cplx{});
  Polynomial q(std::vector<cplx>(all.begin() + static_cast<std::ptrdiff_t>(zeros), all.end()));
  const int n = q.degree();
  if (n == 1) {
    roots.push_back(-q.coeff(0) / q.coeff(1));
  } else if (n > 1) {
    const cplx lead = q.leading();
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -q.coeff(i) / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success)
      throw StructureError("companion eigenvalue iteration did not converge");
    const Polynomial dq = q.derivative();
    for (int i = 0; i < n; ++i) {
      cplx z = solver.eigenvalues()(i);
      double fz = std::abs(q(z));
      for (int it = 0; it < 8 && fz > 0.0; ++it) {
        const cplx d = dq(z);
        if (d == cplx{}) break;
        const cplx cand = z - q(z) / d;
        const double fc = std::abs(q(cand));
        if (!(fc < fz)) break;
        z = cand;
        fz = fc;
      }
      roots.push_back(z);
    }
  }
  if (p.has_real_coefficients()) make_conjugate_symmetric(roots);
  return roots;
}

std::vector<Root> cluster_roots(std::span<const cplx> roots, double tol) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) < tol) parent[find(i)] = find(j);

  std::vector<Root> out;
  std::vector<std::size_t> slot(n, n);
  std::vector<cplx> sums;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.push_back({cplx{}, 0});
      sums.push_back(cplx{});
    }
    out[slot[r]].multiplicity += 1;
    sums[slot[r]] += roots[i];
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k].value = sums[k] / static_cast<double>(out[k].multiplicity);
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

std::vector<cplx> expand_roots(std::span<const Root> roots) {
  std::vector<cplx> out;
  for (const Root& r : roots) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.value);
  return out;
}

cplx PartialFractions::operator()(cplx s) const {
  cplx acc = constant;
  for (const auto& t : terms) acc += t.coeff / std::pow(s - t.pole, t.power);
  return acc;
}

PartialFractions partial_fractions(const Polynomial& numerator, cplx lead,
                                   std::span<const Root> denominator_roots) {
  int total = 0;
  for (const Root& r : denominator_roots) total += r.multiplicity;
  if (numerator.degree() > total)
    throw StructureError("partial fractions: improper rational function (numerator degree " +
                         std::to_string(numerator.degree()) + " > denominator degree " +
                         std::to_string(total) + ")");

  PartialFractions pf;
  if (numerator.degree() == total) pf.constant = numerator.leading() / lead;

  for (std::size_t j = 0; j < denominator_roots.size(); ++j) {
    const Root& rj = denominator_roots[j];
    std::vector<cplx> others;
    for (std::size_t i = 0; i < denominator_roots.size(); ++i)
      if (i != j)
        others.insert(others.end(), static_cast<std::size_t>(denominator_roots[i].multiplicity),
                      denominator_roots[i].value);
    const Polynomial rest = Polynomial::from_roots(others, lead);

    const int m = rj.multiplicity;
    auto num = numerator.taylor_at(rj.value);
    auto den = rest.taylor_at(rj.value);
    num.resize(static_cast<std::size_t>(m), cplx{});
    den.resize(static_cast<std::size_t>(m), cplx{});
    if (den[0] == cplx{})
      throw StructureError("partial fractions: coincident denominator roots");
    // Power series division num/den about the root.
    std::vector<cplx> g(static_cast<std::size_t>(m));
    for (int n = 0; n < m; ++n) {
      cplx acc = num[n];
      for (int i = 1; i <= n; ++i) acc -= den[i] * g[n - i];
      g[n] = acc / den[0];
    }
    for (int k = 1; k <= m; ++k) {
      const cplx c = g[m - k];
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw StructureError("partial fractions: non-finite residue (ill-conditioned roots)");
      pf.terms.push_back({rj.value, k, c});
    }
  }
  return pf;
}

}  // namespace levy
