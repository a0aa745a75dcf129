#include "hbloch/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "hbloch/disk_geometry.hpp"

namespace hbloch {

namespace {

struct DerivativeParts {
  std::vector<Complex> dh;
  std::vector<Complex> dg;

  explicit DerivativeParts(const HarmonicMapping& f) {
    const AnalyticSeries h = differentiate(f.h);
    const AnalyticSeries g = differentiate(f.g);
    dh.assign(h.coefficients().begin(), h.coefficients().end());
    dg.assign(g.coefficients().begin(), g.coefficients().end());
  }
  double operator()(Complex z) const {
    return (1.0 - std::norm(z)) *
           (std::abs(eval_polynomial(dh, z)) + std::abs(eval_polynomial(dg, z)));
  }
};

DiskObjective mu_objective(const HarmonicMapping& f) {
  return [parts = DerivativeParts(f)](Complex z) { return parts(z); };
}

DiskObjective weight_objective(const HarmonicMapping& f) {
  std::vector<Complex> h(f.h.coefficients().begin(), f.h.coefficients().end());
  std::vector<Complex> g(f.g.coefficients().begin(), f.g.coefficients().end());
  return [h = std::move(h), g = std::move(g)](Complex z) {
    return (1.0 - std::norm(z)) * (std::abs(eval_polynomial(h, z)) + std::abs(eval_polynomial(g, z)));
  };
}

void require_open_disk(Complex z, const char* what) {
  if (!(std::abs(z) < 1.0)) throw DomainError(std::string(what) + ": |z| must be < 1");
}

// Union-find over point indices.
struct Components {
  std::vector<std::size_t> parent;
  explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

double diameter_of(const std::vector<Complex>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
  return d;
}

// Fraction of points whose 4 nearest neighbours (with the point) are
// near-collinear: smallest/largest covariance eigenvalue <= 0.05.
double locally_linear_fraction(const std::vector<Complex>& pts) {
  constexpr std::size_t kNeighbours = 4;
  std::size_t tested = 0, linear = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<std::pair<double, std::size_t>> dist;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) dist.emplace_back(std::abs(pts[j] - pts[i]), j);
    const std::size_t k = std::min(kNeighbours, dist.size());
    if (k < 2) continue;
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    std::vector<Complex> local{pts[i]};
    for (std::size_t m = 0; m < k; ++m) local.push_back(pts[dist[m].second]);
    Complex mean{};
    for (auto p : local) mean += p;
    mean /= static_cast<double>(local.size());
    double sxx = 0, syy = 0, sxy = 0;
    for (auto p : local) {
      const Complex d = p - mean;
      sxx += d.real() * d.real();
      syy += d.imag() * d.imag();
      sxy += d.real() * d.imag();
    }
    const double tr = 0.5 * (sxx + syy);
    const double rad = std::hypot(0.5 * (sxx - syy), sxy);
    const double hi = tr + rad, lo = tr - rad;
    ++tested;
    if (hi > 0.0 && lo <= 0.05 * hi) ++linear;
  }
  return tested == 0 ? 0.0 : static_cast<double>(linear) / static_cast<double>(tested);
}

}  // namespace

double mu(const HarmonicMapping& f, Complex z) {
  require_open_disk(z, "mu");
  return DerivativeParts(f)(z);
}

double modulus_weight(const HarmonicMapping& f, Complex z) {
  require_open_disk(z, "modulus_weight");
  return weight_objective(f)(z);
}

DiskOptimizerOptions default_optimizer_options() {
  DiskOptimizerOptions options;
  options.grid = {64, 128};
  options.ascent.min_step = 1e-10;
  options.ascent.max_radius = 1.0 - 1e-9;
  return options;
}

SupEstimate bloch_constant(const HarmonicMapping& f, const DiskOptimizerOptions& options) {
  const DiskMaximum m = maximize_on_disk(mu_objective(f), options);
  return {m.best.value, m.accuracy + f.tail_total(), m.best.z};
}

SupEstimate bloch_norm(const HarmonicMapping& f, const DiskOptimizerOptions& options) {
  SupEstimate beta = bloch_constant(f, options);
  beta.value += std::abs(f.value_at_origin());
  return beta;
}

double metric_beta_estimate(const HarmonicMapping& f, int samples, std::uint64_t seed) {
  if (samples < 2) throw DomainError("metric_beta_estimate: samples must be >= 2");
  const std::vector<Complex> h(f.h.coefficients().begin(), f.h.coefficients().end());
  const std::vector<Complex> g(f.g.coefficients().begin(), f.g.coefficients().end());
  auto value = [&](Complex z) { return eval_polynomial(h, z) + std::conj(eval_polynomial(g, z)); };

  constexpr double kRadius = 0.999;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_point = [&] {
    return std::polar(kRadius * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
  };

  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Complex z = draw_point();
    Complex w;
    if (i % 2 == 0) {
      w = draw_point();
    } else {
      // Short hyperbolic step: Euclidean length t (1 - |z|^2), t in [1e-6, 0.3].
      const double t = std::pow(10.0, -6.0 + unit(rng) * (6.0 + std::log10(0.3)));
      w = z + std::polar(t * (1.0 - std::norm(z)), 2.0 * std::numbers::pi * unit(rng));
      if (std::abs(w) > kRadius) continue;
    }
    if (z == w) continue;
    const double rho = hyperbolic_distance(z, w);
    if (!(rho > 0.0)) continue;
    best = std::max(best, std::abs(value(z) - value(w)) / rho);
  }
  return best;
}

Tristate little_bloch_status(const HarmonicMapping& f) {
  return f.tail_total() == 0.0 ? Tristate::True : Tristate::Undecided;
}

LambdaReport unit_level_set(const DiskObjective& objective, double tol,
                            const LevelSetOptions& options) {
  if (!(tol > 0.0)) throw DomainError("level set tolerance must be positive");
  LambdaReport report;
  report.tolerance = tol;

  const std::vector<DiskPoint> converged = ridge_ascents(objective, options.optimizer);
  for (const auto& p : converged) report.sup_value = std::max(report.sup_value, p.value);
  if (report.sup_value > 1.0 + tol) {
    report.flagged = true;
    report.diagnostics.push_back("supremum exceeds 1 + tol; the unit level set is not the argmax set");
  }

  // Distinct located points; a merged group keeps its highest-valued member.
  std::vector<DiskPoint> distinct;
  for (const auto& p : converged) {
    if (!(std::abs(p.value - 1.0) <= tol)) continue;
    auto same = std::find_if(distinct.begin(), distinct.end(), [&](const DiskPoint& q) {
      return std::abs(q.z - p.z) < options.merge_radius;
    });
    if (same == distinct.end()) {
      distinct.push_back(p);
    } else if (p.value > same->value) {
      *same = p;
    }
  }
  if (distinct.empty()) {
    report.classification = LevelSetClass::Empty;
    return report;
  }

  const double link =
      options.link_factor * 2.0 * std::numbers::pi / options.optimizer.grid.angles;
  Components comp(distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = i + 1; j < distinct.size(); ++j)
      if (std::abs(distinct[i].z - distinct[j].z) <= link) comp.join(i, j);

  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::ptrdiff_t> slot(distinct.size(), -1);
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const std::size_t root = comp.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(i);
  }

  const double r_merge = options.merge_radius;
  bool any_curve = false;
  for (const auto& group : groups) {
    std::vector<Complex> pts;
    for (std::size_t i : group) pts.push_back(distinct[i].z);
    const double d = diameter_of(pts);
    const bool curve = d > 20.0 * r_merge &&
                       static_cast<int>(pts.size()) >= options.min_curve_points &&
                       locally_linear_fraction(pts) >= 0.8;
    if (curve) {
      report.clusters.push_back({pts, d, LevelSetClass::CurveLike});
      any_curve = true;
      continue;
    }
    if (d > 10.0 * r_merge && static_cast<int>(pts.size()) >= options.min_curve_points) {
      report.flagged = true;
      report.diagnostics.push_back("cluster is neither point-like nor a one-dimensional locus");
    }
    // Split into point-like clusters of radius 5 merge radii.
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      std::vector<Complex> sub;
      for (std::size_t j = i; j < pts.size(); ++j) {
        if (!used[j] && std::abs(pts[j] - pts[i]) <= 5.0 * r_merge) {
          used[j] = true;
          sub.push_back(pts[j]);
        }
      }
      report.clusters.push_back({sub, diameter_of(sub), LevelSetClass::Isolated});
    }
  }
  report.classification = any_curve ? LevelSetClass::CurveLike : LevelSetClass::Isolated;

  double max_modulus = 0.0;
  for (const auto& p : distinct) {
    report.points.push_back(p.z);
    report.residuals.push_back(std::abs(p.value - 1.0));
    max_modulus = std::max(max_modulus, std::abs(p.z));
  }
  report.witness_radius = max_modulus > 0.0 ? max_modulus + 1e-3 * (1.0 - max_modulus) : 1e-3;
  return report;
}

LambdaReport lambda_set(const HarmonicMapping& f, double tol, const LevelSetOptions& options) {
  LambdaReport report = unit_level_set(mu_objective(f), tol, options);
  const double norm = std::abs(f.value_at_origin()) + report.sup_value;
  if (norm > 1.0 + tol && report.sup_value <= 1.0 + tol) {
    report.flagged = true;
    report.diagnostics.push_back("Bloch norm exceeds 1 + tol");
  }
  return report;
}

SupEstimate modulus_supremum(const HarmonicMapping& f, const DiskOptimizerOptions& options) {
  const DiskMaximum m = maximize_on_disk(weight_objective(f), options);
  return {m.best.value, m.accuracy + f.tail_total(), m.best.z};
}

SupModulusResult sup_modulus(const HarmonicMapping& f, double tol, const LevelSetOptions& options) {
  const DiskObjective weight = weight_objective(f);
  const DiskMaximum m = maximize_on_disk(weight, options.optimizer);
  SupModulusResult result;
  result.M = {m.best.value, m.accuracy + f.tail_total(), m.best.z};
  result.Gamma = unit_level_set(weight, tol, options);
  return result;
}

std::vector<DiskPoint> mu_grid(const HarmonicMapping& f, const PolarGrid& grid) {
  return sample_polar_grid(mu_objective(f), grid, 1.0 - 1e-9).points;
}

}  // namespace hbloch
