#include "hbloch/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hbloch/disk_geometry.hpp"

namespace hbloch {

namespace {

constexpr double kSupportSlack = 1e-8;

double normalize_angle(double a) {
  a = std::fmod(a, 2.0 * std::numbers::pi);
  return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

// sup_{0<=r<1} r^k (1 - r^2).
double monomial_weight_sup(std::size_t k) {
  if (k == 0) return 1.0;
  const double kd = static_cast<double>(k);
  const double r2 = kd / (kd + 2.0);
  return std::pow(r2, kd / 2.0) * (2.0 / (kd + 2.0));
}

bool bonk_holds_on_grid(double M, double epsilon1, double R, int eps_samples, int r_samples) {
  constexpr double kEpsMin = 1e-6;
  constexpr double kRMax = 1.0 - 1e-9;
  for (int i = 0; i < eps_samples; ++i) {
    const double t = eps_samples == 1 ? 1.0 : static_cast<double>(i) / (eps_samples - 1);
    const double eps = kEpsMin * std::pow(epsilon1 / kEpsMin, t);
    for (int j = 0; j < r_samples; ++j) {
      const double s = static_cast<double>(j) / (r_samples - 1);
      const double r = R + (kRMax - R) * s * s;
      if (bonk_excess(M, eps, r) > 0.0) return false;
    }
  }
  return true;
}

// Deterministic per-sample substream seeds.
std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed * 0x9E3779B97F4A7C15ull + index + 0x632BE59BD9B4E019ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

bool LinearFunctional::is_zero() const {
  auto zero = [](Complex c) { return c == Complex{}; };
  return std::all_of(A.begin(), A.end(), zero) && std::all_of(B.begin(), B.end(), zero);
}

Complex functional_eval(const LinearFunctional& L, const HarmonicMapping& f) {
  Complex total{};
  for (std::size_t k = 0; k < L.A.size(); ++k) total += L.A[k] * f.h[k];
  for (std::size_t k = 0; k < L.B.size(); ++k) total += std::conj(L.B[k]) * std::conj(f.g[k]);
  return total;
}

LinearFunctional lift_to_derivative(const LinearFunctional& L) {
  LinearFunctional out;
  for (std::size_t k = 1; k < L.A.size(); ++k) out.A.push_back(L.A[k] / static_cast<double>(k));
  for (std::size_t k = 1; k < L.B.size(); ++k) out.B.push_back(L.B[k] / static_cast<double>(k));
  return out;
}

DilationBound dilation_bound(const LinearFunctional& L, const HarmonicMapping& f, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("dilation_bound: eps must lie in (0, 1]");
  DilationBound result;
  for (std::size_t k = 1; k < L.A.size(); ++k)
    result.K += static_cast<double>(k) * std::abs(L.A[k]) * std::abs(f.h[k]);
  for (std::size_t k = 1; k < L.B.size(); ++k)
    result.K += static_cast<double>(k) * std::abs(L.B[k]) * std::abs(f.g[k]);
  result.actual = std::abs(functional_eval(L, dilate(f, eps)) - functional_eval(L, f));
  return result;
}

double bonk_excess(double M, double epsilon, double r) {
  const double q = (1.0 - epsilon) * (1.0 - epsilon);
  const double inv = 1.0 / (1.0 - r * r);
  return 1.0 / (1.0 - q * r * r) + epsilon * M * inv - inv;
}

BonkConstants bonk_constants(double M) {
  if (!(M >= 0.0)) throw DomainError("bonk_constants: M must be nonnegative");
  if (M == 0.0) return {0.0, 1.0, 0.01};

  const double seed_radius = std::sqrt(M / (M + 2.0));
  double epsilon1 = 0.5;
  for (int attempt = 0; attempt < 60; ++attempt, epsilon1 *= 0.5) {
    constexpr double kRMax = 1.0 - 1e-9;
    if (!bonk_holds_on_grid(M, epsilon1, kRMax, 48, 2)) continue;
    double lo = seed_radius, hi = kRMax;
    if (bonk_holds_on_grid(M, epsilon1, lo, 48, 128)) {
      hi = lo;
    } else {
      for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (bonk_holds_on_grid(M, epsilon1, mid, 48, 128) ? hi : lo) = mid;
      }
    }
    const double R = std::min(hi + 1e-6 * (1.0 - hi), kRMax);
    if (R < 1.0 && bonk_holds_on_grid(M, epsilon1, R, 256, 1024)) return {M, epsilon1, R};
  }
  throw DomainError("bonk_constants: no admissible (epsilon1, R) found");
}

FalsifierOutcome perturbation_falsifier(const LinearFunctional& L, const HarmonicMapping& f,
                                        const LevelSetOptions& options) {
  if (L.is_zero()) throw PreconditionError("perturbation_falsifier: L must not vanish");
  const SupModulusResult modulus = sup_modulus(f, 1e-6, options);
  if (modulus.M.value > 1.0 + modulus.M.accuracy) {
    throw PreconditionError("perturbation_falsifier: M(f) > 1, f is not in K_{H,1}");
  }
  FalsifierOutcome out;
  out.M_original = modulus.M.value;
  if (modulus.Gamma.classification != LevelSetClass::Empty) {
    out.status = FalsifierStatus::NotApplicable;
    out.diagnostic = "Gamma(f) is nonempty";
    return out;
  }

  // Index carrying the largest functional coefficient.
  auto argmax_abs = [](const std::vector<Complex>& v) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k)
      if (std::abs(v[k]) > std::abs(v[best])) best = k;
    return best;
  };
  const bool any_a = std::any_of(L.A.begin(), L.A.end(), [](Complex c) { return c != Complex{}; });
  out.uses_coanalytic_index = !any_a;
  out.k0 = any_a ? argmax_abs(L.A) : argmax_abs(L.B);
  const Complex functional_coefficient = any_a ? L.A[out.k0] : L.B[out.k0];

  // Any K > 0 bounding |L(f_eps - f)| / eps serves; the coefficient sum does
  // unless it vanishes (then L(f_eps) = L(f) identically).
  out.K = dilation_bound(L, f, 1.0).K;
  if (out.K == 0.0) out.K = 1.0;

  const Complex h_coefficient = 2.0 * out.K / functional_coefficient;
  out.perturbation = any_a ? HarmonicMapping(AnalyticSeries::monomial(h_coefficient, out.k0),
                                             AnalyticSeries{})
                           : HarmonicMapping(AnalyticSeries{},
                                             AnalyticSeries::monomial(h_coefficient, out.k0));
  const double H_abs = std::abs(h_coefficient);
  const double M_H = H_abs * monomial_weight_sup(out.k0);
  out.bonk = bonk_constants(M_H);
  const double R = out.bonk.R;

  // delta: half the smallest gap 1/(1-|z|^2) - (|h| + |g|) on |z| <= R.
  {
    const std::vector<Complex> h(f.h.coefficients().begin(), f.h.coefficients().end());
    const std::vector<Complex> g(f.g.coefficients().begin(), f.g.coefficients().end());
    double gap = std::numeric_limits<double>::infinity();
    constexpr int kRadii = 96, kAngles = 192;
    for (int i = 0; i < kRadii; ++i) {
      const double r = R * i / (kRadii - 1);
      for (int j = 0; j < kAngles; ++j) {
        const Complex z = std::polar(r, 2.0 * std::numbers::pi * j / kAngles);
        gap = std::min(gap, 1.0 / (1.0 - r * r) -
                                (std::abs(eval_polynomial(h, z)) + std::abs(eval_polynomial(g, z))));
      }
    }
    out.delta = 0.5 * gap;
  }
  if (!(out.delta > 0.0)) {
    out.status = FalsifierStatus::ConstructionFailed;
    out.diagnostic = "no positive gap on |z| <= R";
    return out;
  }

  const double k0 = static_cast<double>(out.k0);
  const double eps_real_part = out.k0 == 0 ? 1.0 : 1.0 - std::pow(0.75, 1.0 / k0);
  const double eps_gap = out.delta / (H_abs * std::pow(R, k0));
  double eps = 0.5 * std::min({out.bonk.epsilon1, eps_real_part, eps_gap});

  const double base_value = functional_eval(L, f).real();
  for (int halving = 0; halving <= 40; ++halving, eps *= 0.5) {
    const HarmonicMapping H_eps = dilate(out.perturbation, eps);
    const bool real_part_ok = functional_eval(L, H_eps).real() >= 1.5 * out.K;
    const bool gap_ok = eps * H_abs * std::pow((1.0 - eps) * R, k0) <= out.delta;
    if (!real_part_ok || !gap_ok) continue;

    HarmonicMapping candidate = dilate(f, eps) + Complex(eps) * H_eps;
    const double improvement = functional_eval(L, candidate).real() - base_value;
    if (!(improvement > 0.0)) continue;
    const SupEstimate M_candidate = modulus_supremum(candidate, options.optimizer);
    if (!(M_candidate.value <= 1.0)) continue;

    out.status = FalsifierStatus::Improved;
    out.improved = std::move(candidate);
    out.epsilon = eps;
    out.M_improved = M_candidate.value;
    out.improvement = improvement;
    return out;
  }
  out.status = FalsifierStatus::ConstructionFailed;
  out.diagnostic = "verification failed after 40 epsilon halvings";
  return out;
}

HarmonicMapping sample_unit_ball(std::uint64_t seed, int degree, const DiskOptimizerOptions& options) {
  if (degree < 1) throw DomainError("sample_unit_ball: degree must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    std::vector<Complex> h(static_cast<std::size_t>(degree) + 1), g(h.size());
    for (int k = 1; k <= degree; ++k) {
      h[k] = Complex(normal(rng), normal(rng)) / static_cast<double>(k);
      g[k] = Complex(normal(rng), normal(rng)) / static_cast<double>(k);
    }
    HarmonicMapping f(AnalyticSeries(std::move(h)), AnalyticSeries(std::move(g)));
    const double beta = bloch_constant(f, options).value;
    if (!(beta > 0.0)) continue;
    return Complex(1.0 / beta) * f;
  }
}

HarmonicMapping mobius_unit_member(Complex c, double t, double alpha, double beta) {
  const double c_abs = std::abs(c);
  if (!(c_abs < 1.0)) throw DomainError("mobius_unit_member: c must lie in the open disk");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("mobius_unit_member: t must lie in [0, 1]");
  std::size_t order = 1;
  double tail = 0.0;
  if (c_abs > 0.0) {
    order = static_cast<std::size_t>(
        std::clamp(std::ceil(std::log(1e-17) / std::log(c_abs)) + 8.0, 8.0, 4000.0));
    // sum_{k > N} (1 - |c|^2) |c|^{k-1} = (1 + |c|) |c|^N.
    tail = (1.0 + c_abs) * std::pow(c_abs, static_cast<double>(order));
  }
  std::vector<Complex> phi = MobiusAutomorphism(c, 0.0).taylor_coefficients(order);
  phi[0] = 0.0;
  std::vector<Complex> h(phi.size()), g(phi.size());
  const Complex ua = std::polar(t, alpha), ub = std::polar(1.0 - t, beta);
  for (std::size_t k = 0; k < phi.size(); ++k) {
    h[k] = ua * phi[k];
    g[k] = ub * phi[k];
  }
  auto make = [&](std::vector<Complex> v, double weight) {
    return tail > 0.0 ? AnalyticSeries(std::move(v), weight * tail) : AnalyticSeries(std::move(v));
  };
  return {make(std::move(h), t), make(std::move(g), 1.0 - t)};
}

Complex DerivativePointFunctional::operator()(const HarmonicMapping& f1) const {
  const Complex dh = eval_polynomial(differentiate(f1.h).coefficients(), z0);
  const Complex dg = eval_polynomial(differentiate(f1.g).coefficients(), z0);
  return scale * (dh + std::polar(1.0, theta0) * std::conj(dg));
}

LinearFunctional DerivativePointFunctional::as_linear_functional(std::size_t degree) const {
  LinearFunctional L;
  L.A.assign(degree + 1, Complex{});
  L.B.assign(degree + 1, Complex{});
  const Complex rotation = std::polar(1.0, -theta0);
  Complex power = 1.0;  // z0^{k-1}
  for (std::size_t k = 1; k <= degree; ++k) {
    const double kd = static_cast<double>(k);
    L.A[k] = scale * kd * power;
    L.B[k] = std::conj(scale) * rotation * kd * power;
    power *= z0;
  }
  return L;
}

std::optional<SupportCertificate> support_certificate(const HarmonicMapping& f, int samples,
                                                      std::uint64_t seed, double tol,
                                                      const LevelSetOptions& options) {
  const MembershipReport member = membership(f, options.optimizer);
  if (!member.in_tilde_B_H1) {
    throw PreconditionError("support_certificate: f must lie in the normalized unit ball");
  }
  const LambdaReport lambda = lambda_set(f, tol, options);
  if (lambda.classification == LevelSetClass::Empty) return std::nullopt;

  // Deterministic choice: the located point closest in argument to the
  // positive real axis, ties broken by residual.
  std::size_t pick = 0;
  auto key = [&](std::size_t i) {
    const Complex p = lambda.points[i];
    const double arg = std::abs(p) > 0.0 ? std::abs(std::arg(p)) : 0.0;
    return std::pair(std::round(arg * 1e9), lambda.residuals[i]);
  };
  for (std::size_t i = 1; i < lambda.points.size(); ++i)
    if (key(i) < key(pick)) pick = i;

  SupportCertificate cert;
  cert.z0 = lambda.points[pick];
  // Prefer the same modulus on the positive real axis when it stays in Lambda_f
  // (rotation-invariant weights).
  const Complex on_axis{std::abs(cert.z0), 0.0};
  if (std::abs(mu(f, on_axis) - 1.0) <= std::max(lambda.residuals[pick], 1e-12)) cert.z0 = on_axis;
  cert.lambda_classification = lambda.classification;
  const Complex dh = eval_polynomial(differentiate(f.h).coefficients(), cert.z0);
  const Complex dg = eval_polynomial(differentiate(f.g).coefficients(), cert.z0);
  cert.theta0 = dg == Complex{} ? 0.0 : normalize_angle(std::arg(dh) + std::arg(dg));
  cert.functional = {cert.z0, cert.theta0,
                     std::conj(dh) + std::polar(1.0, -cert.theta0) * dg};
  cert.attained_value = cert.functional(f).real();

  std::vector<double> values(static_cast<std::size_t>(std::max(samples, 0)),
                             -std::numeric_limits<double>::infinity());
  parallel_for(values.size(), [&](std::size_t i) {
    std::mt19937_64 rng(substream(seed, i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    HarmonicMapping member_sample;
    switch (i % 4) {
      case 0:
      case 1:
        member_sample = sample_unit_ball(rng(), 1 + static_cast<int>((i / 4) % 6), options.optimizer);
        break;
      case 2: {
        // Automorphism members peaked near z0 stress the bound near equality.
        const double room = 1.0 - std::abs(cert.z0);
        const Complex c = cert.z0 + std::polar(0.2 * room * unit(rng), two_pi * unit(rng));
        member_sample = mobius_unit_member(c, unit(rng), two_pi * unit(rng), two_pi * unit(rng));
        break;
      }
      default: {
        const Complex c = std::polar(0.9 * std::sqrt(unit(rng)), two_pi * unit(rng));
        member_sample = mobius_unit_member(c, unit(rng), two_pi * unit(rng), two_pi * unit(rng));
        break;
      }
    }
    values[i] = cert.functional(member_sample).real();
  });
  cert.samples = static_cast<int>(values.size());
  cert.sample_max_other = values.empty() ? -std::numeric_limits<double>::infinity()
                                         : *std::max_element(values.begin(), values.end());
  cert.verified = cert.sample_max_other <= cert.attained_value + kSupportSlack;
  return cert;
}

std::optional<SupportDecomposition> decompose_support_point(const HarmonicMapping& f0_in,
                                                            double tol,
                                                            const LevelSetOptions& options) {
  const HarmonicMapping f0 = f0_in.canonical();
  const SupEstimate norm = bloch_norm(f0, options.optimizer);
  if (norm.value > 1.0 + tol) return std::nullopt;

  const Complex c0 = f0.h[0];
  const double lambda1 = std::abs(c0);
  const Complex u = lambda1 > 0.0 ? c0 / lambda1 : Complex{1.0, 0.0};

  if (lambda1 >= 1.0 - 1e-12) {
    // Pure unimodular constant; the norm bound forces beta = 0.
    return SupportDecomposition{1.0, u, HarmonicMapping{}, LevelSetClass::Empty};
  }

  std::vector<Complex> h(f0.h.coefficients().begin(), f0.h.coefficients().end());
  h[0] = 0.0;
  const HarmonicMapping residual =
      Complex(1.0 / (1.0 - lambda1)) * HarmonicMapping(AnalyticSeries(std::move(h), f0.h.tail_bound()), f0.g);
  const LambdaReport lambda = lambda_set(residual, tol, options);
  if (lambda.classification == LevelSetClass::Empty || lambda.flagged) return std::nullopt;
  return SupportDecomposition{lambda1, u, residual, lambda.classification};
}

}  // namespace hbloch
