#include <gtest/gtest.h>

#include <random>

#include "hbloch/bloch.hpp"
#include "hbloch/disk_geometry.hpp"
#include "hbloch/extremal.hpp"
#include "oracles.hpp"

using hbloch::AnalyticSeries;
using hbloch::Complex;
using hbloch::HarmonicMapping;
using hbloch::MobiusAutomorphism;

TEST(HyperbolicDistance, CoincidentPointsAreZero) {
  EXPECT_EQ(hbloch::hyperbolic_distance(Complex{0.3, -0.2}, Complex{0.3, -0.2}), 0.0);
  EXPECT_EQ(hbloch::hyperbolic_distance(0.0, 0.0), 0.0);
}

TEST(HyperbolicDistance, FrozenValues) {
  EXPECT_NEAR(hbloch::hyperbolic_distance(0.0, 0.5), oracle::kRhoZeroHalf, 1e-15);
  EXPECT_NEAR(hbloch::hyperbolic_distance(0.3, 0.5), oracle::kRhoPoint3Half, 1e-15);
}

TEST(HyperbolicDistance, RejectsOutsideDisk) {
  EXPECT_THROW(hbloch::hyperbolic_distance(1.0, 0.0), hbloch::DomainError);
  EXPECT_THROW(hbloch::hyperbolic_distance(0.0, Complex{0.0, -1.2}), hbloch::DomainError);
  EXPECT_THROW(hbloch::hyperbolic_distance(0.0, 1.0 - 1e-13), hbloch::DomainError);
}

TEST(HyperbolicDistanceProperty, Symmetric) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    const Complex z = oracle::random_point(rng, 0.999), w = oracle::random_point(rng, 0.999);
    EXPECT_NEAR(hbloch::hyperbolic_distance(z, w), hbloch::hyperbolic_distance(w, z), 1e-13);
  }
}

TEST(HyperbolicDistanceProperty, MatchesLongDoubleOracle) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 2000; ++i) {
    const Complex z = oracle::random_point(rng, 0.99), w = oracle::random_point(rng, 0.99);
    const double ref = static_cast<double>(oracle::rho(z, w));
    EXPECT_NEAR(hbloch::hyperbolic_distance(z, w), ref, 1e-12 * std::max(1.0, ref));
  }
}

TEST(HyperbolicDistanceProperty, MobiusInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int i = 0; i < 2000; ++i) {
    const MobiusAutomorphism phi(oracle::random_point(rng, 0.9), angle(rng));
    const Complex z = oracle::random_point(rng, 0.9), w = oracle::random_point(rng, 0.9);
    const double before = hbloch::hyperbolic_distance(z, w);
    const double after = hbloch::hyperbolic_distance(hbloch::apply_automorphism(phi, z),
                                                     hbloch::apply_automorphism(phi, w));
    EXPECT_NEAR(after, before, 1e-10);
  }
}

TEST(Mobius, CenterMapsToOrigin) {
  const Complex c{0.4, -0.3};
  EXPECT_LT(std::abs(hbloch::apply_automorphism(MobiusAutomorphism(c, 0.0), c)), 1e-16);
}

TEST(Mobius, PureRotation) {
  const Complex z{0.1, 0.6};
  const Complex got = hbloch::apply_automorphism(MobiusAutomorphism(0.0, 0.7), z);
  EXPECT_LT(std::abs(got - std::polar(1.0, 0.7) * z), 4e-16);
}

TEST(Mobius, Identity) {
  const Complex z{-0.5, 0.2};
  EXPECT_EQ(hbloch::apply_automorphism(MobiusAutomorphism(), z), z);
}

TEST(Mobius, RejectsBadCenterAndPoint) {
  EXPECT_THROW(MobiusAutomorphism(1.0, 0.0), hbloch::DomainError);
  EXPECT_THROW(hbloch::apply_automorphism(MobiusAutomorphism(0.2, 0.0), 1.0), hbloch::DomainError);
}

TEST(Mobius, InverseRoundTrip) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const MobiusAutomorphism phi(oracle::random_point(rng, 0.9), 2.0 * i);
    const Complex z = oracle::random_point(rng, 0.9);
    const Complex back = hbloch::apply_automorphism(phi.inverse(), hbloch::apply_automorphism(phi, z));
    EXPECT_LT(std::abs(back - z), 1e-13);
  }
}

TEST(Mobius, ImageStaysInDisk) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const MobiusAutomorphism phi(oracle::random_point(rng, 0.99), 0.3 * i);
    EXPECT_LT(std::abs(hbloch::apply_automorphism(phi, oracle::random_point(rng, 0.999))), 1.0);
  }
}

TEST(Mobius, TaylorCoefficientsSumToValue) {
  const MobiusAutomorphism phi(Complex{0.3, 0.1}, 0.4);
  const auto c = phi.taylor_coefficients(80);
  const Complex z{0.2, -0.35};
  const auto sum = oracle::power_sum(c, oracle::widen(z));
  const Complex direct = hbloch::apply_automorphism(phi, z);
  EXPECT_NEAR(static_cast<double>(sum.real()), direct.real(), 1e-14);
  EXPECT_NEAR(static_cast<double>(sum.imag()), direct.imag(), 1e-14);
}

TEST(Precompose, RotationOfIdentity) {
  const HarmonicMapping f = HarmonicMapping::analytic(AnalyticSeries({0.0, 1.0}));
  const HarmonicMapping r = hbloch::precompose(f, MobiusAutomorphism(0.0, 1.1), 4);
  EXPECT_LT(std::abs(r.h[1] - std::polar(1.0, 1.1)), 1e-15);
  EXPECT_EQ(r.h[0], Complex(0.0));
  EXPECT_EQ(r.h[2], Complex(0.0));
  EXPECT_TRUE(r.g.is_zero());
  EXPECT_EQ(r.tail_total(), 0.0);
}

TEST(Precompose, IdentityLeavesCoefficients) {
  const HarmonicMapping f = HarmonicMapping::analytic(AnalyticSeries({0.0, 0.0, 1.0}));
  const HarmonicMapping r = hbloch::precompose(f, MobiusAutomorphism(), 2);
  EXPECT_EQ(r.h, f.h);
  EXPECT_TRUE(r.is_exact());
}

TEST(Precompose, MatchesDirectComposition) {
  std::mt19937_64 rng(6);
  const HarmonicMapping f = oracle::random_mapping(rng, 5);
  const MobiusAutomorphism phi(Complex{0.35, -0.2}, 0.9);
  const HarmonicMapping r = hbloch::precompose(f, phi, 120);
  for (int i = 0; i < 100; ++i) {
    const Complex z = oracle::random_point(rng, 0.95);
    const Complex direct = hbloch::evaluate(f, hbloch::apply_automorphism(phi, z));
    EXPECT_LE(std::abs(hbloch::evaluate(r, z) - direct), 1e-10 + r.tail_total());
  }
}

TEST(Precompose, TailBoundCoversTruncation) {
  const HarmonicMapping f = HarmonicMapping::analytic(AnalyticSeries({0.0, 1.0, 1.0}));
  const MobiusAutomorphism phi(0.5, 0.0);
  const HarmonicMapping coarse = hbloch::precompose(f, phi, 10);
  ASSERT_GT(coarse.tail_total(), 0.0);
  for (double r : {0.5, 0.9, 0.99, 0.999}) {
    const Complex z = std::polar(r, 2.5);
    const Complex direct = hbloch::evaluate(f, hbloch::apply_automorphism(phi, z));
    EXPECT_LE(std::abs(hbloch::evaluate(coarse, z) - direct), coarse.tail_total());
  }
}

TEST(Precompose, FamilyBetaInvariant) {
  const HarmonicMapping f = hbloch::counterexample_family(1.0);
  const HarmonicMapping r = hbloch::precompose(f, MobiusAutomorphism(0.3, 0.0), 120);
  EXPECT_NEAR(hbloch::bloch_constant(r).value, 1.0, 1e-6);
}

TEST(PrecomposeProperty, BetaInvariantForRandomPolynomials) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 8; ++trial) {
    const HarmonicMapping f = oracle::random_mapping(rng, 1 + trial % 6);
    const MobiusAutomorphism phi(oracle::random_point(rng, 0.5), angle(rng));
    const HarmonicMapping r = hbloch::precompose(f, phi, 160);
    EXPECT_LT(r.tail_total(), 1e-9);
    EXPECT_NEAR(hbloch::bloch_constant(r).value, hbloch::bloch_constant(f).value, 1e-5);
  }
}
