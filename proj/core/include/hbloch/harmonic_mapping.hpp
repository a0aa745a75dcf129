#pragma once

#include "hbloch/series.hpp"

namespace hbloch {

/// Harmonic mapping f = h + conj(g) on the unit disk.
///
/// `g` is stored un-conjugated. The canonical decomposition has g(0) = 0;
/// `canonical()` moves a nonzero g(0) into h. Pairs that are not canonical
/// are still meaningful (e.g. h' + conj(g') in support-point arguments), so
/// the constructor does not normalize.
struct HarmonicMapping {
  AnalyticSeries h;
  AnalyticSeries g;

  HarmonicMapping() = default;
  HarmonicMapping(AnalyticSeries analytic, AnalyticSeries coanalytic)
      : h(std::move(analytic)), g(std::move(coanalytic)) {}

  /// Analytic mapping f = h.
  static HarmonicMapping analytic(AnalyticSeries h) { return {std::move(h), AnalyticSeries{}}; }

  bool is_canonical() const { return g[0] == Complex{}; }
  HarmonicMapping canonical() const;

  bool is_exact() const { return h.is_exact() && g.is_exact(); }
  /// Sum of declared tail bounds of both parts.
  double tail_total() const { return h.tail_or_zero() + g.tail_or_zero(); }

  /// f(0) = h(0) + conj(g(0)).
  Complex value_at_origin() const { return h[0] + std::conj(g[0]); }

  friend bool operator==(const HarmonicMapping&, const HarmonicMapping&) = default;
};

/// f(z); throws DomainError unless |z| < 1.
Complex evaluate(const HarmonicMapping& f, Complex z);

HarmonicMapping operator+(const HarmonicMapping& f, const HarmonicMapping& k);
HarmonicMapping operator-(const HarmonicMapping& f, const HarmonicMapping& k);
/// c f = c h + conj(conj(c) g).
HarmonicMapping operator*(Complex c, const HarmonicMapping& f);

/// f((1 - epsilon) z), applied to both parts.
HarmonicMapping dilate(const HarmonicMapping& f, double epsilon);

/// The pair (h', g') read as the harmonic mapping h' + conj(g').
HarmonicMapping derivative_pair(const HarmonicMapping& f);

}  // namespace hbloch
