#include "hbloch/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hbloch/disk_geometry.hpp"

namespace hbloch {

namespace {

constexpr double kRoundoffSlack = 1e-13;

std::vector<Complex> annulus_samples(Complex z0, double delta, const SharpeningOptions& options) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(options.radial_samples) * options.angular_samples);
  const double inner = options.inner_fraction;
  for (int i = 0; i < options.radial_samples; ++i) {
    const double t = static_cast<double>(i) / options.radial_samples;
    const double rho = delta * std::pow(inner, 1.0 - t);
    for (int j = 0; j < options.angular_samples; ++j) {
      const double angle = 2.0 * std::numbers::pi * (j + 0.5) / options.angular_samples;
      out.push_back(z0 + std::polar(rho, angle));
    }
  }
  return out;
}

}  // namespace

MembershipReport membership(const HarmonicMapping& f, const DiskOptimizerOptions& options) {
  const SupEstimate norm = bloch_norm(f, options);
  MembershipReport report;
  report.norm_value = norm.value;
  report.norm_accuracy = norm.accuracy;
  report.in_B_H1 = norm.value <= 1.0 + norm.accuracy;
  report.marginal = report.in_B_H1 && norm.value > 1.0 + kRoundoffSlack;
  const bool normalized = f.h[0] == Complex{} && f.g[0] == Complex{};
  report.in_tilde_B_H1 = report.in_B_H1 && normalized;
  const Tristate little = little_bloch_status(f);
  report.in_B_H01 = report.in_B_H1 ? little : Tristate::False;
  report.in_tilde_B_H01 = report.in_tilde_B_H1 ? little : Tristate::False;
  return report;
}

HarmonicMapping normalize_rotation(const HarmonicMapping& f) {
  auto rotate = [](const AnalyticSeries& s) {
    const Complex d0 = s[1];
    if (d0 == Complex{}) return s;
    return (std::conj(d0) / std::abs(d0)) * s;
  };
  return {rotate(f.h), rotate(f.g)};
}

CoefficientConditionsReport coefficient_conditions(const HarmonicMapping& f, double tol) {
  const AnalyticSeries dh = differentiate(f.h);
  const AnalyticSeries dg = differentiate(f.g);
  if (std::abs(dh[0] - 1.0) > tol) {
    throw PreconditionError("coefficient_conditions: requires h'(0) = 1 (rotate first)");
  }
  CoefficientConditionsReport report;
  report.checks.push_back({"a1 = 0", std::abs(dh[1]), std::abs(dh[1]) <= tol});
  report.checks.push_back({"b0 = 0", std::abs(dg[0]), std::abs(dg[0]) <= tol});
  report.checks.push_back({"b1 = 0", std::abs(dg[1]), std::abs(dg[1]) <= tol});
  const double sum2 = std::abs(dh[2]) + std::abs(dg[2]);
  report.checks.push_back({"|a2| + |b2| <= 1", sum2, sum2 <= 1.0 + tol});
  report.certifies_outside = std::any_of(report.checks.begin(), report.checks.end(),
                                         [](const ConditionCheck& c) { return !c.passed; });
  return report;
}

HarmonicMapping counterexample_family(double a) {
  if (!(a > 0.0 && a < 2.0)) throw DomainError("counterexample_family: a must lie in (0, 2)");
  const double c = 3.0 * std::sqrt(3.0) / 8.0;
  return {AnalyticSeries({0.0, 0.0, c * a}), AnalyticSeries({0.0, 0.0, -c * (2.0 - a)})};
}

bool midpoint_check(const HarmonicMapping& f, double a) {
  if (!(a > 0.0 && a < 2.0)) throw DomainError("midpoint_check: a must lie in (0, 2)");
  if (a == 1.0) throw DomainError("midpoint_check: a = 1 is degenerate (f_a = f_{2-a})");
  const HarmonicMapping target =
      0.5 * (counterexample_family(a) + counterexample_family(2.0 - a));
  auto close = [](const AnalyticSeries& s, const AnalyticSeries& t) {
    const std::size_t n = std::max(s.order(), t.order());
    for (std::size_t k = 0; k <= n; ++k) {
      if (std::abs(s[k] - t[k]) > 1e-12) return false;
    }
    return true;
  };
  return close(f.h, target.h) && close(f.g, target.g);
}

ExtremeReport extreme_necessity(const HarmonicMapping& f, double tol,
                                const LevelSetOptions& options) {
  ExtremeReport report;
  report.membership = membership(f, options.optimizer);
  if (!report.membership.in_tilde_B_H1) {
    throw PreconditionError("extreme_necessity: f must lie in the normalized unit ball "
                            "(h(0) = g(0) = 0, norm <= 1)");
  }
  report.little_bloch_class = report.membership.in_tilde_B_H01 == Tristate::True;
  report.lambda = lambda_set(f, tol, options);
  report.radius = report.lambda.witness_radius;
  for (const auto& c : report.lambda.clusters) {
    if (c.kind == LevelSetClass::Isolated) ++report.isolated_clusters;
  }
  switch (report.lambda.classification) {
    case LevelSetClass::Empty:
      report.verdict = ExtremeVerdict::NotExtreme;
      report.explanation = "Lambda_f is empty, hence finite; an extreme point needs an infinite Lambda_f";
      break;
    case LevelSetClass::Isolated:
      if (report.isolated_clusters <= kFiniteClusterLimit) {
        report.verdict = ExtremeVerdict::NotExtreme;
        report.explanation = "Lambda_f consists of finitely many isolated points; an extreme point "
                             "needs an infinite Lambda_f";
      } else {
        report.verdict = ExtremeVerdict::Inconclusive;
        report.explanation = "many isolated points located; finiteness not evidenced";
      }
      break;
    case LevelSetClass::CurveLike:
      report.verdict = ExtremeVerdict::NecessaryConditionMet;
      report.explanation = "Lambda_f contains a curve-like locus inside |z| <= R; the necessary "
                           "condition holds, which does not imply extremality";
      break;
  }
  return report;
}

double sharpened_margin(const HarmonicMapping& f, Complex z0, int n,
                        const std::vector<Complex>& samples) {
  const AnalyticSeries dh = differentiate(f.h);
  const AnalyticSeries dg = differentiate(f.g);
  double worst = std::numeric_limits<double>::infinity();
  for (const Complex z : samples) {
    const double weight = 1.0 - std::norm(z);
    const double sum = std::abs(eval_series(dh, z)) + std::abs(eval_series(dg, z));
    const double w = std::abs(z - z0) / std::abs(1.0 - std::conj(z0) * z);
    const double margin = (1.0 - sum * weight) - std::pow(w, n) * weight;
    worst = std::min(worst, margin);
  }
  return worst;
}

SharpeningResult sharpening_exponent(const HarmonicMapping& f, Complex z0, double delta0,
                                     int n_max, const SharpeningOptions& options) {
  require_interior(z0, "sharpening_exponent");
  if (!(delta0 > 0.0)) throw DomainError("sharpening_exponent: delta0 must be positive");
  if (n_max < 1) throw DomainError("sharpening_exponent: n_max must be >= 1");
  const double mu0 = mu(f, z0);
  if (std::abs(mu0 - 1.0) > options.center_tolerance) {
    throw PreconditionError("sharpening_exponent: z0 is not in Lambda_f (mu_f(z0) = " +
                            std::to_string(mu0) + ")");
  }
  const double delta_max = std::min(delta0, (1.0 - std::abs(z0)) * (1.0 - 1e-9));

  const AnalyticSeries dh = differentiate(f.h);
  const AnalyticSeries dg = differentiate(f.g);
  struct Sample {
    double slack;   // 1 - mu_f(z)
    double weight;  // 1 - |z|^2
    double w;       // pseudo-hyperbolic distance to z0
  };
  auto prepare = [&](double delta) {
    std::vector<Sample> out;
    for (const Complex z : annulus_samples(z0, delta, options)) {
      const double weight = 1.0 - std::norm(z);
      const double sum = std::abs(eval_polynomial(dh.coefficients(), z)) +
                         std::abs(eval_polynomial(dg.coefficients(), z));
      out.push_back({1.0 - sum * weight, weight,
                     std::abs(z - z0) / std::abs(1.0 - std::conj(z0) * z)});
    }
    return out;
  };

  for (const auto& s : prepare(delta_max)) {
    if (!(s.slack > 0.0)) {
      throw PreconditionError("sharpening_exponent: mu_f >= 1 somewhere on the punctured "
                              "neighbourhood; z0 is not an isolated point of Lambda_f");
    }
  }

  // The sample grid can straddle a level curve through the neighbourhood, so
  // located points of Lambda_f are checked as well.
  const LambdaReport lambda = lambda_set(f, 1e-6);
  for (const Complex p : lambda.points) {
    const double d = std::abs(p - z0);
    if (d > options.inner_fraction * delta_max && d < delta_max) {
      throw PreconditionError("sharpening_exponent: Lambda_f meets the punctured "
                              "neighbourhood; z0 is not an isolated point of Lambda_f");
    }
  }

  SharpeningResult result;
  result.center = z0;
  double delta = delta_max;
  for (int halving = 0; halving <= options.max_halvings; ++halving, delta *= 0.5) {
    const std::vector<Sample> samples = prepare(delta);
    for (int n = 1; n <= n_max; ++n) {
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& s : samples) {
        worst = std::min(worst, s.slack - std::pow(s.w, n) * s.weight);
      }
      result.exponent_n = n;
      result.delta = delta;
      result.worst_margin = worst;
      if (worst > 0.0) {
        result.found = true;
        return result;
      }
    }
  }
  return result;
}

}  // namespace hbloch
