#include "rharmonic/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace rharmonic {

int total_degree(const MultiIndex& alpha) {
  int d = 0;
  for (int e : alpha) d += e;
  return d;
}

namespace detail {

// Shared per-(dim, order) index tables: the graded-lex enumeration of all
// multi-indices with total degree <= order, a rank lookup, and the list of
// index pairs whose product stays below the truncation order. The graded
// ordering makes every lower-order layout a prefix of the higher ones, so
// truncation is a plain copy of leading coefficients.
struct JetLayout {
  int dim;
  int order;
  std::vector<MultiIndex> indices;
  std::map<MultiIndex, int> rank;

  struct ProductEntry {
    std::int32_t a, b, out;
  };
  std::vector<ProductEntry> products;

  // shift[v][p] = rank of indices[p] + e_v, or -1 if that exceeds the order.
  std::vector<std::vector<std::int32_t>> shift;

  JetLayout(int dim_, int order_) : dim(dim_), order(order_) {
    MultiIndex cur(dim, 0);
    for (int deg = 0; deg <= order; ++deg) emit(cur, 0, deg);
    for (int p = 0; p < static_cast<int>(indices.size()); ++p)
      rank.emplace(indices[p], p);

    const int n = static_cast<int>(indices.size());
    for (int a = 0; a < n; ++a) {
      const int da = total_degree(indices[a]);
      for (int b = a; b < n; ++b) {
        if (da + total_degree(indices[b]) > order) continue;
        MultiIndex sum(dim);
        for (int v = 0; v < dim; ++v) sum[v] = indices[a][v] + indices[b][v];
        products.push_back({a, b, rank.at(sum)});
      }
    }

    shift.assign(dim, std::vector<std::int32_t>(n, -1));
    for (int v = 0; v < dim; ++v) {
      for (int p = 0; p < n; ++p) {
        if (total_degree(indices[p]) >= order) continue;
        MultiIndex up = indices[p];
        ++up[v];
        shift[v][p] = rank.at(up);
      }
    }
  }

  // Lexicographic enumeration of multi-indices with total degree `left`,
  // filling positions from `var` on.
  void emit(MultiIndex& cur, int var, int left) {
    if (var == dim - 1) {
      cur[var] = left;
      indices.push_back(cur);
      cur[var] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[var] = e;
      emit(cur, var + 1, left - e);
    }
    cur[var] = 0;
  }

  static const JetLayout* get(int dim, int order) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{dim, order}];
    if (!slot) slot = std::make_unique<JetLayout>(dim, order);
    return slot.get();
  }
};

}  // namespace detail

namespace {

void require_finite(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::invalid_argument("jet: non-finite scalar");
}

void require_compatible(const Jet& a, const Jet& b) {
  if (a.dim() != b.dim() || a.order() != b.order())
    throw std::invalid_argument("jet: dimension/order mismatch");
}

bool on_log_branch_cut(Complex v) {
  return v.imag() == 0.0 && v.real() <= 0.0;
}

}  // namespace

Jet::Jet(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || order < 0) throw std::invalid_argument("jet: bad dim/order");
  layout_ = detail::JetLayout::get(dim, order);
  c_.assign(layout_->indices.size(), Complex{0.0, 0.0});
}

Jet Jet::constant(int dim, int order, Complex value) {
  require_finite(value);
  Jet j(dim, order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(int dim, int order, int index, Complex base_value) {
  require_finite(base_value);
  if (index < 0 || index >= dim)
    throw std::invalid_argument("jet_variable: index out of range");
  Jet j(dim, order);
  j.c_[0] = base_value;
  if (order >= 1) {
    MultiIndex e(dim, 0);
    e[index] = 1;
    j.c_[j.layout_->rank.at(e)] = 1.0;
  }
  return j;
}

Complex Jet::coeff(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != dim_)
    throw std::invalid_argument("jet: multi-index length mismatch");
  if (total_degree(alpha) > order_)
    throw std::invalid_argument("jet: multi-index degree exceeds order");
  return c_[layout_->rank.at(alpha)];
}

Complex Jet::partial(const MultiIndex& alpha) const {
  double factorial = 1.0;
  for (int e : alpha)
    for (int k = 2; k <= e; ++k) factorial *= k;
  return coeff(alpha) * factorial;
}

Jet Jet::truncated(int new_order) const {
  if (new_order > order_)
    throw std::invalid_argument("jet: cannot truncate upward");
  if (new_order == order_) return *this;
  Jet out(dim_, new_order);
  std::copy_n(c_.begin(), out.c_.size(), out.c_.begin());
  return out;
}

Jet Jet::derivative(int var) const {
  if (var < 0 || var >= dim_)
    throw std::invalid_argument("jet: derivative variable out of range");
  if (order_ < 1) throw std::invalid_argument("jet: order too small to differentiate");
  Jet out(dim_, order_ - 1);
  for (std::size_t p = 0; p < out.c_.size(); ++p) {
    const int up = layout_->shift[var][p];
    out.c_[p] = c_[up] * static_cast<double>(layout_->indices[p][var] + 1);
  }
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

Jet& Jet::operator*=(Complex s) {
  require_finite(s);
  for (auto& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  Jet out(a.dim_, a.order_);
  for (const auto& e : a.layout_->products) {
    if (e.a == e.b) {
      out.c_[e.out] += a.c_[e.a] * b.c_[e.a];
    } else {
      out.c_[e.out] += a.c_[e.a] * b.c_[e.b] + a.c_[e.b] * b.c_[e.a];
    }
  }
  return out;
}

Jet operator+(Jet a, Complex s) {
  require_finite(s);
  a.c_[0] += s;
  return a;
}

Jet operator-(Jet a, Complex s) {
  require_finite(s);
  a.c_[0] -= s;
  return a;
}

double Jet::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

/// Sum_k d[k] * (a - a0)^k, where d holds Taylor coefficients of the outer
/// function at the constant term a0. The nilpotent part terminates the sum
/// at the truncation order exactly.
Jet compose_univariate(const Jet& a, std::span<const Complex> d) {
  Jet w = a;
  w.c_[0] = 0.0;
  Jet result = Jet::constant(a.dim(), a.order(), d[0]);
  Jet wk = Jet::constant(a.dim(), a.order(), 1.0);
  for (int k = 1; k <= a.order() && k < static_cast<int>(d.size()); ++k) {
    wk = wk * w;
    result += wk * d[k];
  }
  return result;
}

Jet jet_recip(const Jet& a) {
  const Complex c0 = a.value();
  if (c0 == 0.0)
    throw std::domain_error("jet_recip: zero constant term");
  std::vector<Complex> d(a.order() + 1);
  d[0] = 1.0 / c0;
  for (int k = 1; k <= a.order(); ++k) d[k] = -d[k - 1] / c0;
  return compose_univariate(a, d);
}

Jet jet_log(const Jet& a) {
  const Complex c0 = a.value();
  if (c0 == 0.0 || on_log_branch_cut(c0))
    throw std::domain_error("jet_log: constant term on the branch cut");
  std::vector<Complex> d(a.order() + 1);
  d[0] = std::log(c0);
  Complex pw = 1.0;  // c0^k
  for (int k = 1; k <= a.order(); ++k) {
    pw *= c0;
    d[k] = (k % 2 == 1 ? 1.0 : -1.0) / (static_cast<double>(k) * pw);
  }
  return compose_univariate(a, d);
}

Jet jet_exp(const Jet& a) {
  std::vector<Complex> d(a.order() + 1);
  d[0] = std::exp(a.value());
  for (int k = 1; k <= a.order(); ++k) d[k] = d[k - 1] / static_cast<double>(k);
  return compose_univariate(a, d);
}

Jet jet_pow(const Jet& a, double exponent) {
  const Complex c0 = a.value();
  if (c0 == 0.0 || on_log_branch_cut(c0))
    throw std::domain_error("jet_pow: constant term on the branch cut");
  std::vector<Complex> d(a.order() + 1);
  d[0] = std::exp(exponent * std::log(c0));
  for (int k = 1; k <= a.order(); ++k)
    d[k] = d[k - 1] * (exponent - (k - 1)) / (static_cast<double>(k) * c0);
  return compose_univariate(a, d);
}

Jet jet_sqrt(const Jet& a) { return jet_pow(a, 0.5); }

}  // namespace rharmonic
