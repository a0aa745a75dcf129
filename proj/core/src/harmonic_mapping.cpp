#include "hbloch/harmonic_mapping.hpp"

#include <vector>

namespace hbloch {

HarmonicMapping HarmonicMapping::canonical() const {
  if (is_canonical()) return *this;
  const Complex shift = std::conj(g[0]);
  std::vector<Complex> hc(h.coefficients().begin(), h.coefficients().end());
  std::vector<Complex> gc(g.coefficients().begin(), g.coefficients().end());
  hc[0] += shift;
  gc[0] = 0.0;
  return {AnalyticSeries(std::move(hc), h.tail_bound()),
          AnalyticSeries(std::move(gc), g.tail_bound())};
}

Complex evaluate(const HarmonicMapping& f, Complex z) {
  return eval_series(f.h, z) + std::conj(eval_series(f.g, z));
}

HarmonicMapping operator+(const HarmonicMapping& f, const HarmonicMapping& k) {
  return {f.h + k.h, f.g + k.g};
}

HarmonicMapping operator-(const HarmonicMapping& f, const HarmonicMapping& k) {
  return {f.h - k.h, f.g - k.g};
}

HarmonicMapping operator*(Complex c, const HarmonicMapping& f) {
  return {c * f.h, std::conj(c) * f.g};
}

HarmonicMapping dilate(const HarmonicMapping& f, double epsilon) {
  return {dilate(f.h, epsilon), dilate(f.g, epsilon)};
}

HarmonicMapping derivative_pair(const HarmonicMapping& f) {
  return {differentiate(f.h), differentiate(f.g)};
}

}  // namespace hbloch
