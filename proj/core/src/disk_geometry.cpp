#include "hbloch/disk_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hbloch/errors.hpp"

namespace hbloch {

void require_interior(Complex z, const char* what) {
  if (!(std::abs(z) <= kMaxInteriorRadius)) {
    throw DomainError(std::string(what) + ": point lies outside the open unit disk "
                      "(or within 1e-12 of its boundary)");
  }
}

double pseudo_hyperbolic_distance(Complex z, Complex w) {
  require_interior(z, "pseudo_hyperbolic_distance");
  require_interior(w, "pseudo_hyperbolic_distance");
  return std::abs(z - w) / std::abs(1.0 - std::conj(z) * w);
}

double hyperbolic_distance(Complex z, Complex w) {
  return std::atanh(pseudo_hyperbolic_distance(z, w));
}

MobiusAutomorphism::MobiusAutomorphism(Complex center, double rotation)
    : center_(center), rotation_(rotation) {
  if (!(std::abs(center) < 1.0)) {
    throw DomainError("MobiusAutomorphism: center must lie in the open unit disk");
  }
}

MobiusAutomorphism MobiusAutomorphism::inverse() const {
  return MobiusAutomorphism(-center_ * std::polar(1.0, rotation_), -rotation_);
}

std::vector<Complex> MobiusAutomorphism::taylor_coefficients(std::size_t order) const {
  // e^{it} (z - c) sum_k (conj(c) z)^k
  //   = e^{it} [ -c + sum_{k>=1} conj(c)^{k-1} (1 - |c|^2) z^k ].
  const Complex unit = std::polar(1.0, rotation_);
  const Complex cbar = std::conj(center_);
  const double weight = 1.0 - std::norm(center_);
  std::vector<Complex> out(order + 1);
  out[0] = -unit * center_;
  Complex power = 1.0;
  for (std::size_t k = 1; k <= order; ++k) {
    out[k] = unit * power * weight;
    power *= cbar;
  }
  return out;
}

Complex apply_automorphism(const MobiusAutomorphism& phi, Complex z) {
  require_interior(z, "apply_automorphism");
  const Complex c = phi.center();
  return std::polar(1.0, phi.rotation()) * (z - c) / (1.0 - std::conj(c) * z);
}

namespace {

std::vector<Complex> compose_part(const AnalyticSeries& s, std::span<const Complex> phi,
                                  std::size_t order) {
  const auto a = s.coefficients();
  std::vector<Complex> acc(order + 1);
  for (std::size_t j = a.size(); j-- > 0;) {
    acc = multiply_truncated(acc, phi, order);
    acc[0] += a[j];
  }
  return acc;
}

// Bound on sum_{k > order} |coef_k| of s o phi from the majorant series
// F(x) = sum_j |a_j| P(x)^j, P(x) = |c| + (1 - |c|^2) x / (1 - |c| x):
// for 1 < x < 1/|c|, coef_k(F) <= F(x) x^{-k}.
double composite_tail(const AnalyticSeries& s, double c_abs, std::size_t order) {
  const auto a = s.coefficients();
  if (s.degree() == 0) return 0.0;
  if (c_abs == 0.0) {
    double dropped = 0.0;
    for (std::size_t k = order + 1; k < a.size(); ++k) dropped += std::abs(a[k]);
    return dropped;
  }
  const double x_max = 1.0 / c_abs;
  double best = std::numeric_limits<double>::infinity();
  constexpr int kProbes = 96;
  for (int i = 1; i < kProbes; ++i) {
    const double x = 1.0 + (x_max - 1.0) * i / kProbes;
    const double p = c_abs + (1.0 - c_abs * c_abs) * x / (1.0 - c_abs * x);
    double f_log_max = -std::numeric_limits<double>::infinity();
    std::vector<double> logs;
    logs.reserve(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] == Complex{}) continue;
      const double l = std::log(std::abs(a[j])) + static_cast<double>(j) * std::log(p);
      logs.push_back(l);
      f_log_max = std::max(f_log_max, l);
    }
    double sum = 0.0;
    for (double l : logs) sum += std::exp(l - f_log_max);
    const double log_bound = f_log_max + std::log(sum) -
                             static_cast<double>(order + 1) * std::log(x) +
                             std::log(x / (x - 1.0));
    best = std::min(best, std::exp(log_bound));
  }
  return best;
}

AnalyticSeries compose_series(const AnalyticSeries& s, const MobiusAutomorphism& phi,
                              std::span<const Complex> phi_coefficients, std::size_t order) {
  auto coefficients = compose_part(s, phi_coefficients, order);
  const double tail = composite_tail(s, std::abs(phi.center()), order) + s.tail_or_zero();
  if (s.is_exact() && tail == 0.0) return AnalyticSeries(std::move(coefficients));
  return AnalyticSeries(std::move(coefficients), tail);
}

}  // namespace

HarmonicMapping precompose(const HarmonicMapping& f, const MobiusAutomorphism& phi,
                           std::size_t order) {
  const auto phi_coefficients = phi.taylor_coefficients(order);
  return {compose_series(f.h, phi, phi_coefficients, order),
          compose_series(f.g, phi, phi_coefficients, order)};
}

}  // namespace hbloch
