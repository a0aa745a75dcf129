#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hbloch/disk_optimizer.hpp"
#include "hbloch/errors.hpp"
#include "hbloch/harmonic_mapping.hpp"

namespace hbloch {

/// mu_f(z) = (1 - |z|^2) (|h'(z)| + |g'(z)|). Throws DomainError unless |z| < 1.
double mu(const HarmonicMapping& f, Complex z);

/// (1 - |z|^2) (|h(z)| + |g(z)|), the weight whose supremum is M(f).
double modulus_weight(const HarmonicMapping& f, Complex z);

struct SupEstimate {
  double value = 0.0;
  /// Estimated absolute accuracy: optimizer resolution plus declared tails.
  double accuracy = 0.0;
  Complex argmax;
};

/// Optimizer defaults for Bloch-type suprema: boundary exclusion at 1 - 1e-9.
DiskOptimizerOptions default_optimizer_options();

/// beta_f = sup_D mu_f. Declared tails of h and g enter the accuracy: a tail
/// T with sup |T| <= t contributes at most t to mu by Schwarz-Pick.
SupEstimate bloch_constant(const HarmonicMapping& f,
                           const DiskOptimizerOptions& options = default_optimizer_options());

/// ||f|| = |f(0)| + beta_f.
SupEstimate bloch_norm(const HarmonicMapping& f,
                       const DiskOptimizerOptions& options = default_optimizer_options());

/// max over sampled pairs of |f(z) - f(w)| / rho(z, w); a lower bound for beta_f.
/// Pairs mix uniform draws with short hyperbolic separations (where the
/// quotient approaches mu_f).
double metric_beta_estimate(const HarmonicMapping& f, int samples, std::uint64_t seed = 0);

/// Little-Bloch status: TRUE for exact polynomials (and zero tails). A tail
/// bound t only limits limsup mu_f near the circle to t, which never decides
/// the radial limit, so truncated series are UNDECIDED.
Tristate little_bloch_status(const HarmonicMapping& f);

enum class LevelSetClass { Empty, Isolated, CurveLike };

constexpr const char* to_string(LevelSetClass c) {
  switch (c) {
    case LevelSetClass::Empty: return "EMPTY";
    case LevelSetClass::Isolated: return "ISOLATED";
    case LevelSetClass::CurveLike: return "CURVE_LIKE";
  }
  return "EMPTY";
}

struct LevelSetOptions {
  DiskOptimizerOptions optimizer = default_optimizer_options();
  /// Converged points closer than this are the same point; clusters of
  /// diameter <= 10 merge radii are point-like, > 20 may be curve-like.
  double merge_radius = 1e-5;
  /// Chaining distance for clustering, in units of the seed grid's angular
  /// spacing 2 pi / angles.
  double link_factor = 1.5;
  /// Curve-like clusters need at least this many distinct points.
  int min_curve_points = 5;
};

struct LevelCluster {
  std::vector<Complex> points;
  double diameter = 0.0;
  LevelSetClass kind = LevelSetClass::Isolated;
};

/// Located part of a unit level set {objective = 1} of a function whose
/// supremum is (close to) 1.
struct LambdaReport {
  std::vector<Complex> points;
  std::vector<double> residuals;
  LevelSetClass classification = LevelSetClass::Empty;
  /// All points satisfy |z| <= witness_radius < 1.
  double witness_radius = 0.0;
  std::vector<LevelCluster> clusters;
  double tolerance = 0.0;
  /// Supremum of the objective found while locating the set.
  double sup_value = 0.0;
  /// Set when the supremum exceeds 1 + tol (the level set is then not the
  /// argmax set) or when a cluster has neither point nor curve shape.
  bool flagged = false;
  std::vector<std::string> diagnostics;
};

/// Level set {objective = 1} located by ridge ascents and clustered.
LambdaReport unit_level_set(const DiskObjective& objective, double tol,
                            const LevelSetOptions& options = {});

/// Lambda_f = {mu_f = 1}.
LambdaReport lambda_set(const HarmonicMapping& f, double tol = 1e-6,
                        const LevelSetOptions& options = {});

struct SupModulusResult {
  SupEstimate M;
  LambdaReport Gamma;
};

/// M(f) = sup (|h| + |g|)(1 - |z|^2) alone.
SupEstimate modulus_supremum(const HarmonicMapping& f,
                             const DiskOptimizerOptions& options = default_optimizer_options());

/// M(f) = sup (|h| + |g|)(1 - |z|^2) and Gamma(f) = its unit level set.
SupModulusResult sup_modulus(const HarmonicMapping& f, double tol = 1e-6,
                             const LevelSetOptions& options = {});

/// mu_f on a polar grid, one (z, mu) row per node.
std::vector<DiskPoint> mu_grid(const HarmonicMapping& f, const PolarGrid& grid);

}  // namespace hbloch
