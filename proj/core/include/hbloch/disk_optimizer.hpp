#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hbloch/series.hpp"

namespace hbloch {

/// Scalar field on the open unit disk to be maximized.
using DiskObjective = std::function<double(Complex)>;

/// Polar seeding grid: radii (i + 1/2) / radii * max_radius, angles 2 pi j / angles.
struct PolarGrid {
  int radii = 64;
  int angles = 128;
};

struct AscentOptions {
  /// Compass search stops once the step drops below this.
  double min_step = 1e-10;
  /// Iterates are confined to |z| <= max_radius.
  double max_radius = 1.0 - 1e-9;
  int max_evaluations = 20000;
  /// Finish with a quadratic-model Newton polish on finite differences.
  bool polish = true;
};

struct DiskOptimizerOptions {
  PolarGrid grid;
  AscentOptions ascent;
  /// Local ascents started from the best grid seeds for sup estimation.
  int max_seeds = 48;
};

struct DiskPoint {
  Complex z;
  double value = 0.0;
};

/// Objective sampled on the polar grid, row-major by radius.
struct GridSample {
  PolarGrid grid;
  double max_radius = 0.0;
  std::vector<DiskPoint> points;

  const DiskPoint& at(int radius_index, int angle_index) const {
    return points[static_cast<std::size_t>(radius_index) * grid.angles + angle_index];
  }
};

GridSample sample_polar_grid(const DiskObjective& objective, const PolarGrid& grid,
                             double max_radius);

/// Adaptive compass search from `start`, initial step `step`.
DiskPoint pattern_ascent(const DiskObjective& objective, Complex start, double step,
                         const AscentOptions& options);

struct DiskMaximum {
  DiskPoint best;
  /// Converged local maxima in seed order.
  std::vector<DiskPoint> local;
  /// Estimated absolute accuracy of best.value.
  double accuracy = 0.0;
};

/// Multi-start maximization: grid seeding, then local ascents from discrete
/// local maxima of the grid and from the highest samples. Deterministic for a
/// fixed grid regardless of worker count.
DiskMaximum maximize_on_disk(const DiskObjective& objective,
                             const DiskOptimizerOptions& options = {});

/// Ascents from every per-ray and per-ring grid maximum. The converged points
/// sample ridges of the objective, which is what level-set extraction needs.
std::vector<DiskPoint> ridge_ascents(const DiskObjective& objective,
                                     const DiskOptimizerOptions& options = {});

/// Caps worker threads used by the grid sweeps and multi-start ascents
/// (0 restores the hardware default).
void set_max_threads(unsigned count);
unsigned max_threads();

/// Runs body(i) for i in [0, count) on up to max_threads() workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hbloch
