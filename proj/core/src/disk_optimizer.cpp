#include "hbloch/disk_optimizer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

namespace hbloch {

namespace {

std::atomic<unsigned> g_thread_cap{0};
// Nested parallel regions run serially on the calling worker.
thread_local bool t_in_parallel_region = false;

Complex clamp_to_radius(Complex z, double max_radius) {
  const double r = std::abs(z);
  return r > max_radius ? z * (max_radius / r) : z;
}

// Newton step on a quadratic model fitted by central differences. Only
// directions of clearly negative curvature are used, so ridge maxima (where
// the objective is constant along the ridge) get a transverse correction.
DiskPoint polish(const DiskObjective& objective, DiskPoint point, double max_radius) {
  for (int iteration = 0; iteration < 2; ++iteration) {
    const double room = max_radius - std::abs(point.z);
    const double s = std::min(1e-4, room / 4.0);
    if (s < 1e-9) return point;
    const Complex dx{s, 0.0};
    const Complex dy{0.0, s};
    const Complex z = point.z;
    const double f0 = point.value;
    const double fxp = objective(z + dx), fxm = objective(z - dx);
    const double fyp = objective(z + dy), fym = objective(z - dy);
    const double fpp = objective(z + dx + dy), fpm = objective(z + dx - dy);
    const double fmp = objective(z - dx + dy), fmm = objective(z - dx - dy);

    const double gx = (fxp - fxm) / (2.0 * s);
    const double gy = (fyp - fym) / (2.0 * s);
    const double hxx = (fxp - 2.0 * f0 + fxm) / (s * s);
    const double hyy = (fyp - 2.0 * f0 + fym) / (s * s);
    const double hxy = (fpp - fpm - fmp + fmm) / (4.0 * s * s);

    // Symmetric 2x2 eigen-decomposition.
    const double mean = 0.5 * (hxx + hyy);
    const double diff = 0.5 * (hxx - hyy);
    const double radius = std::hypot(diff, hxy);
    const std::array<double, 2> lambdas{mean - radius, mean + radius};
    const double scale = std::max(std::abs(lambdas[0]), std::abs(lambdas[1]));
    if (!(scale > 0.0) || !std::isfinite(scale)) return point;

    const double angle = 0.5 * std::atan2(2.0 * hxy, hxx - hyy);
    // Eigenvector of the larger eigenvalue is (cos, sin); the other is orthogonal.
    const std::array<Complex, 2> vectors{Complex{-std::sin(angle), std::cos(angle)},
                                         Complex{std::cos(angle), std::sin(angle)}};
    Complex step{};
    for (int i = 0; i < 2; ++i) {
      if (lambdas[i] < -1e-6 * scale) {
        const double along = gx * vectors[i].real() + gy * vectors[i].imag();
        step -= (along / lambdas[i]) * vectors[i];
      }
    }
    if (std::abs(step) == 0.0 || std::abs(step) > 10.0 * s) return point;
    const Complex candidate = z + step;
    if (std::abs(candidate) > max_radius) return point;
    const double value = objective(candidate);
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f0));
    if (!(value >= f0 - noise)) return point;
    point = {candidate, value};
  }
  return point;
}

std::vector<DiskPoint> run_ascents(const DiskObjective& objective, const std::vector<Complex>& seeds,
                                   double step, const AscentOptions& options) {
  std::vector<DiskPoint> out(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    out[i] = pattern_ascent(objective, seeds[i], step, options);
  });
  return out;
}

// Indices of grid points that are >= all eight neighbours (angles periodic).
std::vector<std::size_t> discrete_local_maxima(const GridSample& sample) {
  const int nr = sample.grid.radii;
  const int na = sample.grid.angles;
  std::vector<std::size_t> out;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < na; ++j) {
      const double v = sample.at(i, j).value;
      bool is_max = true;
      for (int di = -1; di <= 1 && is_max; ++di) {
        const int ii = i + di;
        if (ii < 0 || ii >= nr) continue;
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int jj = (j + dj + na) % na;
          if (sample.at(ii, jj).value > v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) out.push_back(static_cast<std::size_t>(i) * na + j);
    }
  }
  return out;
}

double grid_step(const DiskOptimizerOptions& options) {
  return options.ascent.max_radius / options.grid.radii;
}

}  // namespace

void set_max_threads(unsigned count) { g_thread_cap.store(count); }

unsigned max_threads() {
  const unsigned cap = g_thread_cap.load();
  if (cap != 0) return cap;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(max_threads(), count);
  if (workers <= 1 || t_in_parallel_region) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      t_in_parallel_region = true;
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

GridSample sample_polar_grid(const DiskObjective& objective, const PolarGrid& grid,
                             double max_radius) {
  GridSample sample{grid, max_radius, {}};
  sample.points.resize(static_cast<std::size_t>(grid.radii) * grid.angles);
  parallel_for(static_cast<std::size_t>(grid.radii), [&](std::size_t i) {
    const double r = (static_cast<double>(i) + 0.5) / grid.radii * max_radius;
    for (int j = 0; j < grid.angles; ++j) {
      const Complex z = std::polar(r, 2.0 * std::numbers::pi * j / grid.angles);
      sample.points[i * grid.angles + j] = {z, objective(z)};
    }
  });
  return sample;
}

DiskPoint pattern_ascent(const DiskObjective& objective, Complex start, double step,
                         const AscentOptions& options) {
  static const std::array<Complex, 8> kDirections = [] {
    std::array<Complex, 8> d{};
    for (int k = 0; k < 8; ++k) d[k] = std::polar(1.0, std::numbers::pi * k / 4.0);
    return d;
  }();

  const double initial = step;
  Complex z = clamp_to_radius(start, options.max_radius);
  double value = objective(z);
  int evaluations = 1;
  while (step >= options.min_step && evaluations < options.max_evaluations) {
    Complex best_z = z;
    double best_value = value;
    for (const Complex& d : kDirections) {
      const Complex candidate = z + step * d;
      if (std::abs(candidate) > options.max_radius) continue;
      const double v = objective(candidate);
      ++evaluations;
      if (v > best_value) {
        best_value = v;
        best_z = candidate;
      }
    }
    if (best_value > value) {
      z = best_z;
      value = best_value;
      step = std::min(2.0 * step, initial);
    } else {
      step *= 0.5;
    }
  }
  DiskPoint result{z, value};
  if (options.polish) result = polish(objective, result, options.max_radius);
  return result;
}

DiskMaximum maximize_on_disk(const DiskObjective& objective, const DiskOptimizerOptions& options) {
  const GridSample sample = sample_polar_grid(objective, options.grid, options.ascent.max_radius);

  auto by_value = [&](std::size_t a, std::size_t b) {
    const double va = sample.points[a].value, vb = sample.points[b].value;
    return va != vb ? va > vb : a < b;
  };
  std::vector<std::size_t> local = discrete_local_maxima(sample);
  std::sort(local.begin(), local.end(), by_value);

  std::vector<std::size_t> all(sample.points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const std::size_t top = std::min<std::size_t>(8, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(top), all.end(), by_value);

  std::vector<std::size_t> chosen;
  const auto limit = static_cast<std::size_t>(std::max(1, options.max_seeds));
  for (std::size_t idx : local) {
    if (chosen.size() >= limit) break;
    chosen.push_back(idx);
  }
  for (std::size_t k = 0; k < top; ++k) {
    if (std::find(chosen.begin(), chosen.end(), all[k]) == chosen.end()) chosen.push_back(all[k]);
  }

  std::vector<Complex> seeds;
  seeds.reserve(chosen.size());
  for (std::size_t idx : chosen) seeds.push_back(sample.points[idx].z);

  DiskMaximum result;
  result.local = run_ascents(objective, seeds, grid_step(options), options.ascent);
  result.best = sample.points[all.front()];
  for (const auto& p : result.local) {
    if (p.value > result.best.value) result.best = p;
  }
  result.accuracy = 1e-12 * std::max(1.0, std::abs(result.best.value));
  return result;
}

std::vector<DiskPoint> ridge_ascents(const DiskObjective& objective,
                                     const DiskOptimizerOptions& options) {
  const GridSample sample = sample_polar_grid(objective, options.grid, options.ascent.max_radius);
  const int nr = options.grid.radii;
  const int na = options.grid.angles;

  std::vector<std::size_t> seeds_idx;
  for (int j = 0; j < na; ++j) {
    int best = 0;
    for (int i = 1; i < nr; ++i) {
      if (sample.at(i, j).value > sample.at(best, j).value) best = i;
    }
    seeds_idx.push_back(static_cast<std::size_t>(best) * na + j);
  }
  for (int i = 0; i < nr; ++i) {
    int best = 0;
    for (int j = 1; j < na; ++j) {
      if (sample.at(i, j).value > sample.at(i, best).value) best = j;
    }
    seeds_idx.push_back(static_cast<std::size_t>(i) * na + best);
  }
  for (std::size_t idx : discrete_local_maxima(sample)) seeds_idx.push_back(idx);

  std::sort(seeds_idx.begin(), seeds_idx.end());
  seeds_idx.erase(std::unique(seeds_idx.begin(), seeds_idx.end()), seeds_idx.end());

  std::vector<Complex> seeds;
  seeds.reserve(seeds_idx.size());
  for (std::size_t idx : seeds_idx) seeds.push_back(sample.points[idx].z);
  return run_ascents(objective, seeds, grid_step(options), options.ascent);
}

}  // namespace hbloch
