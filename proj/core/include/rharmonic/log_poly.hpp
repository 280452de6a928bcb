#pragma once

#include <map>
#include <string>

#include "rharmonic/jet.hpp"

namespace rharmonic {

/// Finite combination sum c_{k,m} t^k (log t)^m with complex coefficients,
/// k any integer, m >= 0. Closed under d/dt, the radial tension operator and
/// the integral operator inverting it. Zero coefficients are never stored.
class LogPolynomial {
 public:
  // (power of t, power of log t) -> coefficient
  using TermMap = std::map<std::pair<int, int>, Complex>;

  LogPolynomial() = default;

  static LogPolynomial term(int k, int m, Complex coeff);
  static LogPolynomial constant(Complex c) { return term(0, 0, c); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// True when every coefficient is at most `tol` times the largest
  /// coefficient magnitude that appeared (or `tol` absolutely if empty).
  bool is_zero_within(double tol) const;

  double max_abs_coeff() const;

  void add_term(int k, int m, Complex coeff);

  LogPolynomial operator+(const LogPolynomial& rhs) const;
  LogPolynomial operator-(const LogPolynomial& rhs) const;
  LogPolynomial operator*(Complex s) const;

  bool operator==(const LogPolynomial& rhs) const { return terms_ == rhs.terms_; }

  /// Value at complex t, principal branch of log. t must be off the closed
  /// non-positive real axis.
  Complex evaluate(Complex t) const;

  /// Evaluation on a jet of t (same branch rules as evaluate).
  Jet evaluate_jet(const Jet& t) const;

  /// Canonical rendering, terms sorted by (k, m), e.g. "(1+2i)*t^3*log(t)^2".
  std::string render() const;

 private:
  TermMap terms_;
};

/// Exact d/dt.
LogPolynomial differentiate(const LogPolynomial& p);

/// Radial tension operator on H^n: tau(p) = t^2 p'' - (n-2) t p'.
LogPolynomial tension_1d(const LogPolynomial& p, int n);

/// Integral operator I_n(p) = int t^{n-2} ( int t^{-n} p dt + alpha ) dt + beta,
/// the right inverse of tension_1d with free constants alpha, beta.
LogPolynomial integral_operator(const LogPolynomial& p, int n, Complex alpha,
                                Complex beta);

/// Radial factor p_r(t) = (a + b t^{n-1}) (log t)^{r-1}.
LogPolynomial build_pr(int n, int r, Complex a, Complex b);

}  // namespace rharmonic
