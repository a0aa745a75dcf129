#pragma once

#include <cstddef>

#include "hbloch/harmonic_mapping.hpp"

namespace hbloch {

/// Points with |z| above this radius are rejected as too close to the circle.
inline constexpr double kMaxInteriorRadius = 1.0 - 1e-12;

/// Throws DomainError unless |z| <= kMaxInteriorRadius.
void require_interior(Complex z, const char* what);

/// Pseudo-hyperbolic distance |(z - w) / (1 - conj(z) w)|.
double pseudo_hyperbolic_distance(Complex z, Complex w);

/// rho(z, w) = artanh |(z - w) / (1 - conj(z) w)|.
double hyperbolic_distance(Complex z, Complex w);

/// z -> e^{i rotation} (z - center) / (1 - conj(center) z).
class MobiusAutomorphism {
 public:
  MobiusAutomorphism() = default;
  MobiusAutomorphism(Complex center, double rotation);

  Complex center() const { return center_; }
  double rotation() const { return rotation_; }

  MobiusAutomorphism inverse() const;

  /// Taylor coefficients about 0, up to `order`.
  std::vector<Complex> taylor_coefficients(std::size_t order) const;

 private:
  Complex center_{};
  double rotation_ = 0.0;
};

Complex apply_automorphism(const MobiusAutomorphism& phi, Complex z);

/// f o phi, both parts expanded to `order` by Horner substitution.
///
/// The composite of a polynomial with a non-rotation automorphism is not a
/// polynomial; the result carries a tail bound from the majorant
/// |c| + (1 - |c|^2) x / (1 - |c| x) of phi, plus the input tails as declared.
HarmonicMapping precompose(const HarmonicMapping& f, const MobiusAutomorphism& phi,
                           std::size_t order);

}  // namespace hbloch
