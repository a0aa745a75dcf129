#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hbloch {

using Complex = std::complex<double>;

/// Truncated Taylor series  sum_k c_k z^k  of a function analytic on the disk.
///
/// A series without a tail bound is an exact polynomial. A series with a tail
/// bound t stands for an analytic function whose omitted part satisfies
/// sum_{k > order} |c_k| r^k <= t for every r < 1; the bound is used as
/// declared and never re-derived.
class AnalyticSeries {
 public:
  AnalyticSeries();
  explicit AnalyticSeries(std::vector<Complex> coefficients,
                          std::optional<double> tail_bound = std::nullopt);

  static AnalyticSeries constant(Complex c);
  static AnalyticSeries monomial(Complex c, std::size_t power);

  std::size_t order() const { return coefficients_.size() - 1; }
  std::span<const Complex> coefficients() const { return coefficients_; }
  /// Coefficient of z^k, zero beyond the truncation order.
  Complex operator[](std::size_t k) const {
    return k < coefficients_.size() ? coefficients_[k] : Complex{};
  }

  std::optional<double> tail_bound() const { return tail_bound_; }
  bool is_exact() const { return !tail_bound_.has_value(); }
  /// Tail bound, or 0 for exact polynomials.
  double tail_or_zero() const { return tail_bound_.value_or(0.0); }

  /// Index of the last nonzero coefficient (0 for the zero series).
  std::size_t degree() const;
  bool is_zero() const;

  friend bool operator==(const AnalyticSeries&, const AnalyticSeries&) = default;

 private:
  std::vector<Complex> coefficients_;
  std::optional<double> tail_bound_;
};

/// Horner evaluation of the stored coefficients; no tail correction.
/// Throws DomainError unless |z| < 1.
Complex eval_series(const AnalyticSeries& s, Complex z);

/// Horner evaluation without the disk check, for internal hot loops and for
/// polynomial identities that hold everywhere.
Complex eval_polynomial(std::span<const Complex> coefficients, Complex z);

AnalyticSeries differentiate(const AnalyticSeries& s);

/// Coefficients scaled by (1 - epsilon)^k, i.e. z -> s((1 - epsilon) z).
AnalyticSeries dilate(const AnalyticSeries& s, double epsilon);

/// Square root psi with psi(0) = 1 of a series with s(0) = 1.
AnalyticSeries sqrt_nonvanishing(const AnalyticSeries& s);

/// alpha * s + beta * t.
///
/// Exact polynomials are treated as having unbounded truncation order; when
/// either operand is truncated the result is cut at the smallest truncation
/// order among truncated operands and the dropped coefficients are moved into
/// the tail bound.
AnalyticSeries linear_combination(Complex alpha, const AnalyticSeries& s,
                                  Complex beta, const AnalyticSeries& t);

AnalyticSeries operator+(const AnalyticSeries& s, const AnalyticSeries& t);
AnalyticSeries operator-(const AnalyticSeries& s, const AnalyticSeries& t);
AnalyticSeries operator*(Complex c, const AnalyticSeries& s);

/// Cauchy product cut at `order`. Tail bounds are not propagated; callers
/// that need one compute it from a majorant.
std::vector<Complex> multiply_truncated(std::span<const Complex> a,
                                        std::span<const Complex> b,
                                        std::size_t order);

}  // namespace hbloch
