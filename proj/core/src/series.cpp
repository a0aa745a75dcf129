#include "hbloch/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hbloch/errors.hpp"

namespace hbloch {

AnalyticSeries::AnalyticSeries() : coefficients_{Complex{}} {}

AnalyticSeries::AnalyticSeries(std::vector<Complex> coefficients,
                               std::optional<double> tail_bound)
    : coefficients_(std::move(coefficients)), tail_bound_(tail_bound) {
  if (coefficients_.empty()) coefficients_.push_back(Complex{});
  if (tail_bound_ && !(*tail_bound_ >= 0.0)) {
    throw DomainError("tail bound must be a nonnegative number");
  }
}

AnalyticSeries AnalyticSeries::constant(Complex c) {
  return AnalyticSeries({c});
}

AnalyticSeries AnalyticSeries::monomial(Complex c, std::size_t power) {
  std::vector<Complex> coefficients(power + 1);
  coefficients[power] = c;
  return AnalyticSeries(std::move(coefficients));
}

std::size_t AnalyticSeries::degree() const {
  for (std::size_t k = coefficients_.size(); k-- > 0;) {
    if (coefficients_[k] != Complex{}) return k;
  }
  return 0;
}

bool AnalyticSeries::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(),
                     [](Complex c) { return c == Complex{}; });
}

Complex eval_polynomial(std::span<const Complex> coefficients, Complex z) {
  Complex acc{};
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

Complex eval_series(const AnalyticSeries& s, Complex z) {
  if (!(std::abs(z) < 1.0)) {
    throw DomainError("eval_series: point " + std::to_string(z.real()) + "+" +
                      std::to_string(z.imag()) + "i is outside the open unit disk");
  }
  return eval_polynomial(s.coefficients(), z);
}

AnalyticSeries differentiate(const AnalyticSeries& s) {
  const auto c = s.coefficients();
  if (c.size() <= 1) return AnalyticSeries({Complex{}}, s.tail_bound());
  std::vector<Complex> out(c.size() - 1);
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    out[k] = static_cast<double>(k + 1) * c[k + 1];
  }
  return AnalyticSeries(std::move(out), s.tail_bound());
}

AnalyticSeries dilate(const AnalyticSeries& s, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw DomainError("dilate: epsilon must lie in (0, 1]");
  }
  const double factor = 1.0 - epsilon;
  std::vector<Complex> out(s.coefficients().begin(), s.coefficients().end());
  double scale = 1.0;
  for (auto& c : out) {
    c *= scale;
    scale *= factor;
  }
  // |(1-eps)^k a_k| r^k <= |a_k| r^k, so the declared tail stays valid.
  return AnalyticSeries(std::move(out), s.tail_bound());
}

AnalyticSeries sqrt_nonvanishing(const AnalyticSeries& s) {
  if (s[0] != Complex{1.0, 0.0}) {
    throw PreconditionError("sqrt_nonvanishing: constant coefficient must be exactly 1");
  }
  const auto c = s.coefficients();
  const std::size_t n = c.size();
  std::vector<Complex> psi(n);
  psi[0] = 1.0;
  // psi^2 = s:  2 psi_0 psi_m + sum_{k=1}^{m-1} psi_k psi_{m-k} = s_m.
  for (std::size_t m = 1; m < n; ++m) {
    Complex cross{};
    for (std::size_t k = 1; k < m; ++k) cross += psi[k] * psi[m - k];
    psi[m] = 0.5 * (c[m] - cross);
  }
  return AnalyticSeries(std::move(psi), s.tail_bound());
}

AnalyticSeries linear_combination(Complex alpha, const AnalyticSeries& s,
                                  Complex beta, const AnalyticSeries& t) {
  constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
  const std::size_t cut_s = s.is_exact() ? kUnbounded : s.order();
  const std::size_t cut_t = t.is_exact() ? kUnbounded : t.order();
  const std::size_t full = std::max(s.order(), t.order());
  const std::size_t order = std::min({cut_s, cut_t, full});

  std::vector<Complex> out(order + 1);
  for (std::size_t k = 0; k <= order; ++k) out[k] = alpha * s[k] + beta * t[k];

  if (s.is_exact() && t.is_exact()) return AnalyticSeries(std::move(out));

  double tail = std::abs(alpha) * s.tail_or_zero() + std::abs(beta) * t.tail_or_zero();
  for (std::size_t k = order + 1; k <= full; ++k) tail += std::abs(alpha * s[k] + beta * t[k]);
  return AnalyticSeries(std::move(out), tail);
}

AnalyticSeries operator+(const AnalyticSeries& s, const AnalyticSeries& t) {
  return linear_combination(1.0, s, 1.0, t);
}

AnalyticSeries operator-(const AnalyticSeries& s, const AnalyticSeries& t) {
  return linear_combination(1.0, s, -1.0, t);
}

AnalyticSeries operator*(Complex c, const AnalyticSeries& s) {
  std::vector<Complex> out(s.coefficients().begin(), s.coefficients().end());
  for (auto& x : out) x *= c;
  std::optional<double> tail = s.tail_bound();
  if (tail) *tail *= std::abs(c);
  return AnalyticSeries(std::move(out), tail);
}

std::vector<Complex> multiply_truncated(std::span<const Complex> a,
                                        std::span<const Complex> b,
                                        std::size_t order) {
  std::vector<Complex> out(order + 1);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i] == Complex{}) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace hbloch
