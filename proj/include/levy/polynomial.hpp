#pragma once

// Dense complex polynomials, companion-matrix root finding and partial
// fractions of rational functions with known denominator roots.

#include <complex>
#include <span>
#include <vector>

namespace levy {

using cplx = std::complex<double>;

/// Polynomial with complex coefficients stored in ascending order
/// (c[0] + c[1] s + ... ). The zero polynomial has degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> ascending);
  Polynomial(std::initializer_list<cplx> ascending);

  static Polynomial constant(cplx c);
  /// lead * prod (s - r_i)
  static Polynomial from_roots(std::span<const cplx> roots, cplx lead = 1.0);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  cplx coeff(int i) const noexcept;
  cplx leading() const noexcept { return c_.empty() ? cplx{} : c_.back(); }
  const std::vector<cplx>& coefficients() const noexcept { return c_; }

  /// Horner evaluation.
  cplx operator()(cplx s) const noexcept;
  Polynomial derivative() const;

  /// p(-s)
  Polynomial reflected() const;

  /// Synthetic division by (s - root). The remainder p(root) is written to
  /// `remainder` when non-null.
  Polynomial deflate(cplx root, cplx* remainder = nullptr) const;

  /// Coefficients of h -> p(center + h), obtained by repeated synthetic
  /// division (exact up to rounding, no differentiation).
  std::vector<cplx> taylor_at(cplx center) const;

  /// True when every imaginary part is exactly zero.
  bool has_real_coefficients() const noexcept;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx k, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<cplx> c_;
};

/// A (possibly repeated) root.
struct Root {
  cplx value;
  int multiplicity = 1;
};

/// All complex roots of `p`, counted with multiplicity. Exact zero
/// low-order coefficients yield exact roots at 0; the remaining roots are
/// eigenvalues of the companion matrix, refined by guarded Newton steps.
/// For real-coefficient input the output is made exactly conjugate
/// symmetric.
std::vector<cplx> polynomial_roots(const Polynomial& p);

/// Merge roots whose distance is below `tol` (transitively) into a single
/// root at the cluster centroid with the cluster size as multiplicity.
std::vector<Root> cluster_roots(std::span<const cplx> roots, double tol = 1e-7);

/// Expand clustered roots back to a flat list.
std::vector<cplx> expand_roots(std::span<const Root> roots);

/// coeff / (s - pole)^power
struct PartialFractionTerm {
  cplx pole;
  int power = 1;
  cplx coeff;
};

struct PartialFractions {
  cplx constant{};  // value of the rational function at s -> infinity
  std::vector<PartialFractionTerm> terms;

  cplx operator()(cplx s) const;
};

/// Partial fractions of numerator(s) / (lead * prod_j (s - r_j)^{m_j}).
/// Coefficients come from Taylor expansion of numerator and of the
/// complementary denominator product about each root followed by power
/// series division. Requires deg(numerator) <= sum of multiplicities.
PartialFractions partial_fractions(const Polynomial& numerator, cplx lead,
                                   std::span<const Root> denominator_roots);

}  // namespace levy
