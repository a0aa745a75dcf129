#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hbloch/bloch.hpp"
#include "hbloch/extremal.hpp"

namespace hbloch {

/// Continuous linear functional on harmonic mappings with finitely supported
/// coefficient sequences:  L(h + conj(g)) = sum A_k a_k + sum conj(B_k) conj(b_k).
struct LinearFunctional {
  std::vector<Complex> A;
  std::vector<Complex> B;

  Complex a(std::size_t k) const { return k < A.size() ? A[k] : Complex{}; }
  Complex b(std::size_t k) const { return k < B.size() ? B[k] : Complex{}; }
  bool is_zero() const;
};

Complex functional_eval(const LinearFunctional& L, const HarmonicMapping& f);

/// C_k = A_{k+1} / (k+1), D_k = B_{k+1} / (k+1), so that
/// L(h + conj(g)) = lifted(h' + conj(g')) whenever a_0 = b_0 = 0.
LinearFunctional lift_to_derivative(const LinearFunctional& L);

struct DilationBound {
  /// K = sum_k k (|A_k||a_k| + |B_k||b_k|).
  double K = 0.0;
  /// |L(f_eps) - L(f)|.
  double actual = 0.0;
};

/// |L(f_eps - f)| <= eps K with f_eps(z) = f((1 - eps) z).
DilationBound dilation_bound(const LinearFunctional& L, const HarmonicMapping& f, double eps);

/// epsilon1 and R with 1/(1 - (1-e)^2 r^2) + e M/(1 - r^2) <= 1/(1 - r^2)
/// for all 0 < e <= epsilon1 and R <= r < 1.
struct BonkConstants {
  double M = 0.0;
  double epsilon1 = 1.0;
  double R = 0.01;
};

/// Left side minus right side of the inequality above (<= 0 when it holds).
double bonk_excess(double M, double epsilon, double r);

BonkConstants bonk_constants(double M);

enum class FalsifierStatus { Improved, NotApplicable, ConstructionFailed };

constexpr const char* to_string(FalsifierStatus s) {
  switch (s) {
    case FalsifierStatus::Improved: return "IMPROVED";
    case FalsifierStatus::NotApplicable: return "NOT_APPLICABLE";
    case FalsifierStatus::ConstructionFailed: return "CONSTRUCTION_FAILED";
  }
  return "CONSTRUCTION_FAILED";
}

struct FalsifierOutcome {
  FalsifierStatus status = FalsifierStatus::ConstructionFailed;
  /// f~(z) = f((1-eps) z) + eps H((1-eps) z).
  HarmonicMapping improved;
  HarmonicMapping perturbation;  // H
  std::size_t k0 = 0;
  bool uses_coanalytic_index = false;
  double K = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  BonkConstants bonk;
  double M_original = 0.0;
  double M_improved = 0.0;
  double improvement = 0.0;  // Re L(f~) - Re L(f)
  std::string diagnostic;
};

/// Builds f~ in K_{H,1} with Re L(f~) > Re L(f) when Gamma(f) is empty.
/// Throws PreconditionError when L == 0 or M(f) > 1.
FalsifierOutcome perturbation_falsifier(const LinearFunctional& L, const HarmonicMapping& f,
                                        const LevelSetOptions& options = {});

/// Random polynomial h, g of the given degree with h(0) = g(0) = 0, rescaled to
/// Bloch norm 1. Deterministic per seed.
HarmonicMapping sample_unit_ball(std::uint64_t seed, int degree,
                                 const DiskOptimizerOptions& options = default_optimizer_options());

/// t e^{ia}(phi_c - phi_c(0)) + conj((1 - t) e^{ib}(phi_c - phi_c(0))) for the
/// disk automorphism phi_c(z) = (z - c)/(1 - conj(c) z); Bloch constant 1,
/// attained at z = c. Expanded to a truncation order that makes the tail
/// negligible.
HarmonicMapping mobius_unit_member(Complex c, double t, double alpha, double beta);

/// Point-derivative functional of a support certificate:
/// L(f1) = scale * (h1'(z0) + e^{i theta0} conj(g1'(z0))).
struct DerivativePointFunctional {
  Complex z0;
  double theta0 = 0.0;
  Complex scale;

  Complex operator()(const HarmonicMapping& f1) const;
  /// Same functional as coefficient sequences up to `degree`.
  LinearFunctional as_linear_functional(std::size_t degree) const;
};

struct SupportCertificate {
  Complex z0;
  double theta0 = 0.0;
  DerivativePointFunctional functional;
  double attained_value = 0.0;
  double sample_max_other = 0.0;
  int samples = 0;
  LevelSetClass lambda_classification = LevelSetClass::Empty;
  /// sample_max_other <= attained_value + 1e-8.
  bool verified = false;
};

/// Support certificate of the normalized unit ball at f, or nullopt when
/// Lambda_f is empty (f is then not a support point).
std::optional<SupportCertificate> support_certificate(const HarmonicMapping& f, int samples,
                                                      std::uint64_t seed = 0,
                                                      double tol = 1e-6,
                                                      const LevelSetOptions& options = {});

struct SupportDecomposition {
  double lambda1 = 0.0;
  Complex u;
  HarmonicMapping f;
  LevelSetClass lambda_classification = LevelSetClass::Empty;
};

/// f0 = lambda1 u + (1 - lambda1) f with u unimodular and f a support point
/// of the normalized unit ball; nullopt when the residual part fails.
std::optional<SupportDecomposition> decompose_support_point(const HarmonicMapping& f0,
                                                            double tol = 1e-6,
                                                            const LevelSetOptions& options = {});

}  // namespace hbloch
