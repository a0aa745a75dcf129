// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hbloch/bloch.hpp"
#include "hbloch/disk_geometry.hpp"
#include "hbloch/extremal.hpp"
#include "hbloch/support.hpp"
#include "oracles.hpp"

using hbloch::AnalyticSeries;
using hbloch::Complex;
using hbloch::HarmonicMapping;
using hbloch::LevelSetClass;
using hbloch::LinearFunctional;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

HarmonicMapping analytic(std::vector<Complex> c) {
  return HarmonicMapping::analytic(AnalyticSeries(std::move(c)));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Re of sum A_k a_k + conj(B_k) conj(b_k), long double.
long double functional_oracle(const LinearFunctional& L, const HarmonicMapping& f) {
  oracle::LComplex total = 0;
  for (std::size_t k = 0; k < L.A.size(); ++k) total += oracle::widen(L.A[k]) * oracle::widen(f.h[k]);
  for (std::size_t k = 0; k < L.B.size(); ++k)
    total += std::conj(oracle::widen(L.B[k])) * std::conj(oracle::widen(f.g[k]));
  return total.real();
}

// sup (|h| + |g|)(1 - |z|^2): polar grid then local refinement.
long double modulus_oracle(const HarmonicMapping& f) {
  const auto h = oracle::coeffs(f.h), g = oracle::coeffs(f.g);
  auto weight = [&](std::complex<double> z) {
    const oracle::LComplex w = oracle::widen(z);
    return (1.0L - std::norm(w)) * (std::abs(oracle::power_sum(h, w)) + std::abs(oracle::power_sum(g, w)));
  };
  long double best = 0;
  std::complex<double> arg{};
  for (int i = 0; i < 150; ++i)
    for (int j = 0; j < 300; ++j) {
      const std::complex<double> z = std::polar((i + 0.5) / 150.0, 2.0 * M_PI * j / 300.0);
      if (weight(z) > best) {
        best = weight(z);
        arg = z;
      }
    }
  double step = 1.0 / 150.0;
  for (int round = 0; round < 10; ++round, step *= 0.25)
    for (int a = -8; a <= 8; ++a)
      for (int b = -8; b <= 8; ++b) {
        const std::complex<double> z = arg + std::complex<double>(a * step / 8, b * step / 8);
        if (std::abs(z) < 1.0 && weight(z) > best) {
          best = weight(z);
          arg = z;
        }
      }
  return best;
}

// h1'(z0) + e^{i theta} conj(g1'(z0)) scaled, evaluated from the coefficients.
long double point_functional_oracle(const hbloch::SupportCertificate& c, const HarmonicMapping& f1) {
  const oracle::LComplex z = oracle::widen(c.z0);
  const oracle::LComplex dh = oracle::derivative_sum(oracle::coeffs(f1.h), z);
  const oracle::LComplex dg = oracle::derivative_sum(oracle::coeffs(f1.g), z);
  const oracle::LComplex rot{std::cos(static_cast<long double>(c.theta0)),
                             std::sin(static_cast<long double>(c.theta0))};
  return (oracle::widen(c.functional.scale) * (dh + rot * std::conj(dg))).real();
}

Outcome counterexample_reproduction() {
  Outcome o;
  for (double a : {0.25, 0.5, 1.0, 1.5, 1.75}) {
    const auto start = std::chrono::steady_clock::now();
    const HarmonicMapping f = hbloch::counterexample_family(a);
    const double beta = hbloch::bloch_constant(f).value;
    const auto lambda = hbloch::lambda_set(f, 1e-6);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(std::abs(beta - 1.0) <= 1e-6, "a=" + fmt(a) + " beta=" + fmt(beta));
    o.require(lambda.classification == LevelSetClass::CurveLike,
              "a=" + fmt(a) + " classification " + hbloch::to_string(lambda.classification));
    o.require(!lambda.points.empty(), "a=" + fmt(a) + " no points");
    double worst = 0.0;
    for (Complex p : lambda.points) worst = std::max(worst, std::abs(std::abs(p) - static_cast<double>(oracle::kInvSqrt3)));
    o.require(worst <= 1e-4, "a=" + fmt(a) + " radius error " + fmt(worst));
    o.require(seconds <= 10.0, "a=" + fmt(a) + " took " + fmt(seconds) + " s");
  }
  return o;
}

Outcome midpoint_witnesses() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const HarmonicMapping f1 = hbloch::counterexample_family(1.0);
  int sampled = 0;
  while (sampled < 20) {
    const double a = u(rng);
    if (std::abs(a - 1.0) < 1e-3) continue;
    ++sampled;
    o.require(hbloch::midpoint_check(f1, a), "midpoint false at a=" + fmt(a));
    const HarmonicMapping p = hbloch::counterexample_family(a), q = hbloch::counterexample_family(2.0 - a);
    o.require(!(p == q), "witnesses coincide at a=" + fmt(a));
    for (const HarmonicMapping* w : {&p, &q}) {
      const auto m = hbloch::membership(*w);
      o.require(m.in_tilde_B_H01 == hbloch::Tristate::True, "witness outside ball at a=" + fmt(a));
      o.require(std::abs(m.norm_value - 1.0) <= 1e-6, "witness norm " + fmt(m.norm_value));
      // Independent: grid brute force of beta, plus the radial closed form.
      o.require(std::abs(static_cast<double>(oracle::grid_beta(*w)) - 1.0) <= 1e-6,
                "oracle norm off at a=" + fmt(a));
    }
  }
  return o;
}

Outcome support_certificates() {
  Outcome o;
  const std::pair<const char*, HarmonicMapping> cases[] = {
      {"z", analytic({0.0, 1.0})}, {"f_1", hbloch::counterexample_family(1.0)}};
  for (const auto& [name, f] : cases) {
    const auto cert = hbloch::support_certificate(f, 10000, 11);
    if (!cert) {
      o.require(false, std::string(name) + ": no certificate");
      continue;
    }
    const double expected = 1.0 / std::pow(1.0 - std::norm(cert->z0), 2);
    o.require(std::abs(cert->attained_value - expected) <= 1e-6,
              std::string(name) + " attained " + fmt(cert->attained_value));
    o.require(cert->samples == 10000 && cert->verified,
              std::string(name) + " sample max " + fmt(cert->sample_max_other));
    o.require(std::abs(point_functional_oracle(*cert, f) - expected) <= 1e-6,
              std::string(name) + " oracle attained mismatch");

    // Independent stratified draw: random polynomials normalized to norm 1
    // and automorphism members spread over the disk, evaluated by the oracle.
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    long double worst = -1e300L;
    for (int i = 0; i < 10000; ++i) {
      HarmonicMapping member;
      if (i % 2 == 0) {
        member = hbloch::sample_unit_ball(rng(), 1 + (i / 2) % 6);
      } else {
        const double radius = 0.95 * ((i / 2) % 10 + unit(rng)) / 10.0;
        const Complex c = std::polar(radius, 2.0 * M_PI * unit(rng));
        member = hbloch::mobius_unit_member(c, unit(rng), 2.0 * M_PI * unit(rng), 2.0 * M_PI * unit(rng));
      }
      worst = std::max(worst, point_functional_oracle(*cert, member));
    }
    o.require(worst <= cert->attained_value + 1e-8,
              std::string(name) + " independent max " + fmt(static_cast<double>(worst)));
  }
  o.require(!hbloch::support_certificate(analytic({0.0, 0.5}), 10000, 11).has_value(),
            "0.5z received a certificate");
  return o;
}

Outcome identity_not_extreme() {
  Outcome o;
  const auto r = hbloch::extreme_necessity(analytic({0.0, 1.0}));
  o.require(r.verdict == hbloch::ExtremeVerdict::NotExtreme,
            std::string("verdict ") + hbloch::to_string(r.verdict));
  o.require(r.lambda.classification == LevelSetClass::Isolated && r.lambda.clusters.size() == 1,
            "Lambda is not one isolated point");
  for (Complex p : r.lambda.points) o.require(std::abs(p) <= 1e-8, "point at " + fmt(std::abs(p)));
  return o;
}

Outcome identity_sharpening() {
  Outcome o;
  const HarmonicMapping f = analytic({0.0, 1.0});
  const auto s = hbloch::sharpening_exponent(f, 0.0, 0.9, 12);
  o.require(s.found && s.exponent_n == 2, "exponent " + std::to_string(s.exponent_n));
  o.require(s.worst_margin > 0.0, "reported margin " + fmt(s.worst_margin));
  if (!s.found) return o;
  // 1000 x 1000 polar grid over the punctured disk |z| < delta, long double.
  const auto h = oracle::coeffs(f.h), g = oracle::coeffs(f.g);
  long double worst = 1e300L;
  for (int i = 0; i < 1000; ++i) {
    const long double r = s.delta * std::pow(1e-3L, 1.0L - (i + 0.5L) / 1000.0L);
    for (int j = 0; j < 1000; ++j) {
      const long double t = 2.0L * M_PI * j / 1000.0L;
      const oracle::LComplex z{r * std::cos(t), r * std::sin(t)};
      const long double lhs = (std::abs(oracle::derivative_sum(h, z)) + std::abs(oracle::derivative_sum(g, z)) +
                               std::pow(std::abs(z), static_cast<long double>(s.exponent_n))) *
                              (1.0L - std::norm(z));
      worst = std::min(worst, 1.0L - lhs);
    }
  }
  o.require(worst > 0.0L, "independent grid margin " + fmt(static_cast<double>(worst)));
  return o;
}

Outcome metric_and_lipschitz() {
  Outcome o;
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const HarmonicMapping f = oracle::random_mapping(rng, 1 + trial % 5, false);
    const auto beta = hbloch::bloch_constant(f);
    const double metric = hbloch::metric_beta_estimate(f, 100000, trial);
    o.require(metric >= 0.9 * beta.value && metric <= beta.value + 1e-6,
              "trial " + std::to_string(trial) + " metric " + fmt(metric) + " beta " + fmt(beta.value));
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
      const Complex z = oracle::random_point(rng, 0.999), w = oracle::random_point(rng, 0.999);
      if (z == w) continue;
      if (oracle::value_distance(f, z, w) > (beta.value + 1e-6) * oracle::rho(z, w)) ++violations;
    }
    o.require(violations == 0, "trial " + std::to_string(trial) + " violations " + std::to_string(violations));
  }
  return o;
}

Outcome sandwich_and_invariance() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const HarmonicMapping f = oracle::random_mapping(rng, 1 + trial % 6, false);
    const double bf = hbloch::bloch_constant(f).value;
    const double bh = hbloch::bloch_constant(HarmonicMapping::analytic(f.h)).value;
    const double bg = hbloch::bloch_constant(HarmonicMapping::analytic(f.g)).value;
    o.require(bf - std::max(bh, bg) >= -1e-6 && bh + bg - bf >= -1e-6,
              "sandwich trial " + std::to_string(trial));
  }
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 20; ++trial) {
    const HarmonicMapping f = oracle::random_mapping(rng, 1 + trial % 4, false);
    const hbloch::MobiusAutomorphism phi(oracle::random_point(rng, 0.5), u(rng));
    const double before = hbloch::bloch_constant(f).value;
    const double after = hbloch::bloch_constant(hbloch::precompose(f, phi, 160)).value;
    o.require(std::abs(after - before) <= 1e-5,
              "invariance trial " + std::to_string(trial) + " diff " + fmt(after - before));
  }
  return o;
}

Outcome lift_dilation_bonk() {
  Outcome o;
  std::mt19937_64 rng(8);
  auto functional = [&](int degree) {
    return LinearFunctional{oracle::random_coefficients(rng, degree, false),
                            oracle::random_coefficients(rng, degree, false)};
  };
  for (int i = 0; i < 100; ++i) {
    const LinearFunctional L = functional(1 + i % 8);
    const HarmonicMapping f = oracle::random_mapping(rng, 1 + (i / 3) % 8);
    const Complex lhs = hbloch::functional_eval(L, f);
    const Complex rhs = hbloch::functional_eval(hbloch::lift_to_derivative(L), hbloch::derivative_pair(f));
    o.require(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(lhs)), "lift mismatch " + fmt(std::abs(lhs - rhs)));
  }
  std::uniform_real_distribution<double> eps_draw(1e-4, 1.0);
  for (int i = 0; i < 100; ++i) {
    const LinearFunctional L = functional(1 + i % 7);
    const HarmonicMapping f = oracle::random_mapping(rng, 1 + (i / 7) % 7);
    const double eps = eps_draw(rng);
    const auto d = hbloch::dilation_bound(L, f, eps);
    o.require(d.actual <= eps * d.K, "dilation " + fmt(d.actual) + " > " + fmt(eps * d.K));
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double M : {0.0, 1.0, 2.0, 5.0}) {
    const auto b = hbloch::bonk_constants(M);
    int violations = 0;
    for (int i = 0; i < 1000000; ++i) {
      const double eps = 1e-6 * std::pow(b.epsilon1 / 1e-6, unit(rng));
      const double r = b.R + (1.0 - 1e-9 - b.R) * unit(rng);
      if (static_cast<long double>(r) * r < oracle::bonk_threshold_sq(M, eps)) ++violations;
    }
    o.require(violations == 0, "bonk M=" + fmt(M) + " violations " + std::to_string(violations));
  }
  return o;
}

Outcome falsifier_improvements() {
  Outcome o;
  std::mt19937_64 rng(9);
  int built = 0;
  for (int trial = 0; trial < 100 && built < 10; ++trial) {
    HarmonicMapping f = oracle::random_mapping(rng, 1 + trial % 5, false);
    f = Complex(0.85 / static_cast<double>(modulus_oracle(f))) * f;
    const LinearFunctional L{oracle::random_coefficients(rng, 1 + trial % 5, false),
                             oracle::random_coefficients(rng, 1 + trial % 5, false)};
    const auto sm = hbloch::sup_modulus(f);
    if (sm.M.value > 0.9 || sm.Gamma.classification != LevelSetClass::Empty) continue;
    ++built;
    const auto out = hbloch::perturbation_falsifier(L, f);
    o.require(out.status == hbloch::FalsifierStatus::Improved,
              std::string("status ") + hbloch::to_string(out.status));
    if (out.status != hbloch::FalsifierStatus::Improved) continue;
    const long double gain = functional_oracle(L, out.improved) - functional_oracle(L, f);
    o.require(gain >= 1e-6L, "gain " + fmt(static_cast<double>(gain)));
    o.require(modulus_oracle(out.improved) <= 1.0L && out.M_improved <= 1.0,
              "improved modulus " + fmt(static_cast<double>(modulus_oracle(out.improved))));
  }
  o.require(built == 10, "only " + std::to_string(built) + " eligible mappings");
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"counterexample family reproduction", counterexample_reproduction},
      {"midpoint witnesses in the normalized little ball", midpoint_witnesses},
      {"support certificates for z and f_1, none for 0.5z", support_certificates},
      {"identity is not extreme", identity_not_extreme},
      {"sharpening exponent for the identity", identity_sharpening},
      {"metric estimate and Lipschitz bound", metric_and_lipschitz},
      {"beta sandwich and Mobius invariance", sandwich_and_invariance},
      {"lift identity, dilation bound, Bonk constants", lift_dilation_bonk},
      {"perturbation falsifier improvements", falsifier_improvements},
  };
  int failures = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%.1f s)%s%s\n", o.pass ? "PASS" : "FAIL", index, name, seconds,
                o.pass ? "" : ": ", o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
