#pragma once

#include <string>
#include <vector>

#include "hbloch/bloch.hpp"

namespace hbloch {

/// Membership in the unit balls B_{H,1}, B_{H,0,1} and their normalized
/// (h(0) = g(0) = 0) subclasses.
struct MembershipReport {
  bool in_B_H1 = false;
  bool in_tilde_B_H1 = false;
  Tristate in_B_H01 = Tristate::False;
  Tristate in_tilde_B_H01 = Tristate::False;
  double norm_value = 0.0;
  double norm_accuracy = 0.0;
  /// 1 < norm <= 1 + accuracy (beyond rounding): counted as a member.
  bool marginal = false;
};

MembershipReport membership(const HarmonicMapping& f,
                            const DiskOptimizerOptions& options = default_optimizer_options());

struct ConditionCheck {
  std::string name;
  double measured = 0.0;
  bool passed = false;
};

struct CoefficientConditionsReport {
  std::vector<ConditionCheck> checks;
  /// Some check failed, so f is not in the normalized unit ball.
  bool certifies_outside = false;
};

/// Rotates each part so that h'(0) and g'(0) become nonnegative reals.
HarmonicMapping normalize_rotation(const HarmonicMapping& f);

/// Checks a1 = 0, b0 = 0, b1 = 0 and |a2| + |b2| <= 1 for the Taylor
/// coefficients a_k of h' and b_k of g'. Requires h'(0) = 1.
CoefficientConditionsReport coefficient_conditions(const HarmonicMapping& f,
                                                   double tol = 1e-12);

/// f_a = h_a + conj(g_a), h_a = (3 sqrt3 / 8) a z^2, g_a = -h_{2-a}.
HarmonicMapping counterexample_family(double a);

/// Whether f == (f_a + f_{2-a}) / 2 coefficientwise to 1e-12. Rejects a = 1.
bool midpoint_check(const HarmonicMapping& f, double a);

enum class ExtremeVerdict { NotExtreme, NecessaryConditionMet, Inconclusive };

constexpr const char* to_string(ExtremeVerdict v) {
  switch (v) {
    case ExtremeVerdict::NotExtreme: return "NOT_EXTREME";
    case ExtremeVerdict::NecessaryConditionMet: return "NECESSARY_CONDITION_MET";
    case ExtremeVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

struct ExtremeReport {
  ExtremeVerdict verdict = ExtremeVerdict::Inconclusive;
  /// Which class the verdict refers to: the little ball (finite Lambda) or
  /// the full ball (finitely many points of Lambda in |z| < R).
  bool little_bloch_class = false;
  double radius = 0.0;
  std::size_t isolated_clusters = 0;
  LambdaReport lambda;
  MembershipReport membership;
  std::string explanation;
};

/// Up to this many isolated clusters counts as evidence of a finite Lambda_f.
inline constexpr std::size_t kFiniteClusterLimit = 8;

/// Necessary condition for extremality checked by contrapositive: a finite
/// Lambda_f rules out extremality; a curve-like Lambda_f is only consistent
/// with it. Never asserts that f is extreme. Requires f in the normalized ball.
ExtremeReport extreme_necessity(const HarmonicMapping& f, double tol = 1e-6,
                                const LevelSetOptions& options = {});

struct SharpeningOptions {
  /// Polar sample grid over the annulus inner_fraction * delta <= |z - z0| < delta.
  int radial_samples = 64;
  int angular_samples = 128;
  double inner_fraction = 1e-2;
  int max_halvings = 30;
  /// Allowed |mu_f(z0) - 1|.
  double center_tolerance = 1e-8;
};

struct SharpeningResult {
  bool found = false;
  int exponent_n = 0;
  double delta = 0.0;
  /// min over samples of 1 - (|h'| + |g'| + |w|^n)(1 - |z|^2).
  double worst_margin = 0.0;
  Complex center;
};

/// Smallest n (then largest delta = delta0 / 2^k) with
/// (|h'(z)| + |g'(z)| + |w|^n)(1 - |z|^2) < 1 on the sampled punctured
/// neighbourhood of z0, w = (z - z0)/(1 - conj(z0) z). `found == false` is
/// the NOT_FOUND outcome.
SharpeningResult sharpening_exponent(const HarmonicMapping& f, Complex z0, double delta0,
                                     int n_max, const SharpeningOptions& options = {});

/// Worst margin of the sharpened inequality on an arbitrary sample set.
double sharpened_margin(const HarmonicMapping& f, Complex z0, int n,
                        const std::vector<Complex>& samples);

}  // namespace hbloch
