#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rharmonic {

using Complex = std::complex<double>;

/// Exponent vector of a partial derivative, one entry per chart variable.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& alpha);

namespace detail {
struct JetLayout;
}

/// Truncated multivariate Taylor expansion of a complex-valued function at a
/// base point. Coefficients are stored in Taylor normalization
/// (partial derivative divided by alpha!), dense up to the truncation order.
///
/// Jets are immutable values; all operations are pure and safe to use from
/// multiple threads.
class Jet {
 public:
  Jet(int dim, int order);  // the zero jet

  static Jet constant(int dim, int order, Complex value);

  /// Jet of the coordinate function x_index at a base point.
  static Jet variable(int dim, int order, int index, Complex base_value);

  int dim() const { return dim_; }
  int order() const { return order_; }

  /// Value of the underlying function at the base point (degree-0 coefficient).
  Complex value() const { return c_[0]; }

  /// Taylor coefficient for the multi-index alpha.
  Complex coeff(const MultiIndex& alpha) const;

  /// Partial derivative at the base point: coeff(alpha) * alpha!.
  Complex partial(const MultiIndex& alpha) const;

  /// Same jet truncated to a lower order.
  Jet truncated(int new_order) const;

  /// Jet of the partial derivative with respect to variable `var`;
  /// the result has order reduced by one.
  Jet derivative(int var) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(Complex s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, Complex s);
  friend Jet operator-(Jet a, Complex s);

  std::span<const Complex> coefficients() const { return c_; }

  /// Largest coefficient magnitude; used for relative tolerances.
  double max_abs_coeff() const;

 private:
  friend Jet jet_recip(const Jet&);
  friend Jet jet_log(const Jet&);
  friend Jet jet_exp(const Jet&);
  friend Jet jet_pow(const Jet&, double);
  friend Jet compose_univariate(const Jet&, std::span<const Complex>);

  const detail::JetLayout* layout_;
  int dim_ = 0;
  int order_ = 0;
  std::vector<Complex> c_;
};

/// 1/a. Requires a nonzero constant term.
Jet jet_recip(const Jet& a);

/// Principal-branch log; the constant term must lie off the closed
/// non-positive real axis.
Jet jet_log(const Jet& a);

Jet jet_exp(const Jet& a);

/// Principal-branch power a^s for real s; same branch precondition as log.
Jet jet_pow(const Jet& a, double exponent);

Jet jet_sqrt(const Jet& a);

}  // namespace rharmonic
