#include "rharmonic/log_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rharmonic {

LogPolynomial LogPolynomial::term(int k, int m, Complex coeff) {
  if (m < 0) throw std::invalid_argument("LogPolynomial: negative log power");
  LogPolynomial p;
  p.add_term(k, m, coeff);
  return p;
}

void LogPolynomial::add_term(int k, int m, Complex coeff) {
  if (m < 0) throw std::invalid_argument("LogPolynomial: negative log power");
  auto key = std::make_pair(k, m);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (coeff != 0.0) terms_.emplace(key, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0.0) terms_.erase(it);
}

bool LogPolynomial::is_zero_within(double tol) const {
  const double scale = std::max(max_abs_coeff(), 1.0);
  for (const auto& [key, c] : terms_)
    if (std::abs(c) > tol * scale) return false;
  return true;
}

double LogPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

LogPolynomial LogPolynomial::operator+(const LogPolynomial& rhs) const {
  LogPolynomial out = *this;
  for (const auto& [key, c] : rhs.terms_) out.add_term(key.first, key.second, c);
  return out;
}

LogPolynomial LogPolynomial::operator-(const LogPolynomial& rhs) const {
  LogPolynomial out = *this;
  for (const auto& [key, c] : rhs.terms_)
    out.add_term(key.first, key.second, -c);
  return out;
}

LogPolynomial LogPolynomial::operator*(Complex s) const {
  LogPolynomial out;
  if (s == 0.0) return out;
  for (const auto& [key, c] : terms_) out.add_term(key.first, key.second, c * s);
  return out;
}

Complex LogPolynomial::evaluate(Complex t) const {
  if (t == 0.0 || (t.imag() == 0.0 && t.real() <= 0.0))
    throw std::domain_error("LogPolynomial::evaluate: t on the branch cut");
  const Complex lg = std::log(t);
  Complex sum = 0.0;
  for (const auto& [key, c] : terms_) {
    const auto [k, m] = key;
    Complex v = c * std::pow(t, static_cast<double>(k));
    for (int j = 0; j < m; ++j) v *= lg;
    sum += v;
  }
  return sum;
}

Jet LogPolynomial::evaluate_jet(const Jet& t) const {
  Jet sum(t.dim(), t.order());
  if (terms_.empty()) return sum;
  bool needs_log = false;
  for (const auto& [key, c] : terms_)
    if (key.second > 0) needs_log = true;

  // Terms are sorted by (k, m); reuse t^k across equal k and build log powers
  // incrementally.
  const Jet lg = needs_log ? jet_log(t) : Jet(t.dim(), t.order());
  bool have_tk = false;
  int cur_k = 0;
  Jet tk(t.dim(), t.order());
  for (const auto& [key, c] : terms_) {
    const auto [k, m] = key;
    if (!have_tk || k != cur_k) {
      tk = (k == 0) ? Jet::constant(t.dim(), t.order(), 1.0)
                    : jet_pow(t, static_cast<double>(k));
      cur_k = k;
      have_tk = true;
    }
    Jet v = tk * c;
    for (int j = 0; j < m; ++j) v = v * lg;
    sum += v;
  }
  return sum;
}

namespace {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string format_coeff(Complex c) {
  if (c.imag() == 0.0) return format_real(c.real());
  char buf[160];
  std::snprintf(buf, sizeof(buf), "(%s%s%si)", format_real(c.real()).c_str(),
                c.imag() < 0 ? "-" : "+",
                format_real(std::abs(c.imag())).c_str());
  return buf;
}

}  // namespace

std::string LogPolynomial::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    const auto [k, m] = key;
    if (!out.empty()) out += " + ";
    out += format_coeff(c);
    if (k != 0) out += "*t^" + std::to_string(k);
    if (m == 1) out += "*log(t)";
    if (m > 1) out += "*log(t)^" + std::to_string(m);
  }
  return out;
}

LogPolynomial differentiate(const LogPolynomial& p) {
  // d/dt [ t^k (log t)^m ] = k t^{k-1} (log t)^m + m t^{k-1} (log t)^{m-1}
  LogPolynomial out;
  for (const auto& [key, c] : p.terms()) {
    const auto [k, m] = key;
    if (k != 0) out.add_term(k - 1, m, c * static_cast<double>(k));
    if (m != 0) out.add_term(k - 1, m - 1, c * static_cast<double>(m));
  }
  return out;
}

LogPolynomial tension_1d(const LogPolynomial& p, int n) {
  if (n < 2) throw std::invalid_argument("tension_1d: n must be >= 2");
  const LogPolynomial dp = differentiate(p);
  const LogPolynomial ddp = differentiate(dp);
  LogPolynomial out;
  for (const auto& [key, c] : ddp.terms())
    out.add_term(key.first + 2, key.second, c);
  for (const auto& [key, c] : dp.terms())
    out.add_term(key.first + 1, key.second, -c * static_cast<double>(n - 2));
  return out;
}

namespace {

/// Exact antiderivative of c * t^k (log t)^m, by the finite recursion
/// lowering the log power; int t^{-1} (log t)^m dt raises it instead.
void antiderivative_term(int k, int m, Complex c, LogPolynomial& out) {
  if (k == -1) {
    out.add_term(0, m + 1, c / static_cast<double>(m + 1));
    return;
  }
  const double kp1 = static_cast<double>(k + 1);
  out.add_term(k + 1, m, c / kp1);
  if (m > 0) antiderivative_term(k, m - 1, -c * static_cast<double>(m) / kp1, out);
}

LogPolynomial antiderivative(const LogPolynomial& p) {
  LogPolynomial out;
  for (const auto& [key, c] : p.terms())
    antiderivative_term(key.first, key.second, c, out);
  return out;
}

LogPolynomial shift_power(const LogPolynomial& p, int dk) {
  LogPolynomial out;
  for (const auto& [key, c] : p.terms())
    out.add_term(key.first + dk, key.second, c);
  return out;
}

}  // namespace

LogPolynomial integral_operator(const LogPolynomial& p, int n, Complex alpha,
                                Complex beta) {
  if (n < 2) throw std::invalid_argument("integral_operator: n must be >= 2");
  LogPolynomial inner = antiderivative(shift_power(p, -n));
  inner.add_term(0, 0, alpha);
  LogPolynomial outer = antiderivative(shift_power(inner, n - 2));
  outer.add_term(0, 0, beta);
  return outer;
}

LogPolynomial build_pr(int n, int r, Complex a, Complex b) {
  if (n < 2) throw std::invalid_argument("build_pr: n must be >= 2");
  if (r < 1) throw std::invalid_argument("build_pr: r must be >= 1");
  if (a == 0.0 && b == 0.0)
    throw std::invalid_argument("build_pr: (a, b) must be nonzero");
  LogPolynomial p;
  p.add_term(0, r - 1, a);
  p.add_term(n - 1, r - 1, b);
  return p;
}

}  // namespace rharmonic
