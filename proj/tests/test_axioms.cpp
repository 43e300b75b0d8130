#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "escortropy/axioms.hpp"

using namespace escortropy;

TEST(SimplexProjection, LandsOnSimplex) {
  const auto a = project_to_simplex({0.5, 0.5});
  EXPECT_NEAR(a[0], 0.5, 1e-15);
  const auto b = project_to_simplex({2.0, 0.0, -1.0});
  EXPECT_NEAR(b[0], 1.0, 1e-15);
  EXPECT_EQ(b[2], 0.0);
  const auto c = project_to_simplex({0.6, 0.6, 0.0});
  EXPECT_NEAR(c[0], 0.5, 1e-15);
  EXPECT_NEAR(c[1], 0.5, 1e-15);
}

TEST(Continuity, UniformBasePasses) {
  const auto v = check_continuity(QOrder(2.0), 4, 1, 1e-5);
  EXPECT_TRUE(v.passed);
  EXPECT_FALSE(v.witness.has_value());
  EXPECT_TRUE(std::isfinite(v.modulus));
  EXPECT_GE(v.margin, 0.0);
}

TEST(Continuity, BoundaryBaseBelowUnitOrder) {
  const auto v = check_continuity(QOrder(0.6), 5, 9, 1e-4);
  EXPECT_TRUE(v.passed);
  EXPECT_GT(v.modulus, 0.0);
}

TEST(Continuity, Deterministic) {
  const auto a = check_continuity(QOrder(2.0), 8, 123, 1e-3);
  const auto b = check_continuity(QOrder(2.0), 8, 123, 1e-3);
  EXPECT_EQ(a.passed, b.passed);
  EXPECT_EQ(a.modulus, b.modulus);
  EXPECT_EQ(a.margin, b.margin);
}

TEST(Continuity, RejectsBadDelta) {
  EXPECT_THROW(check_continuity(QOrder(2.0), 4, 1, 0.1), std::invalid_argument);
  EXPECT_THROW(check_continuity(QOrder(2.0), 4, 1, 0.0), std::invalid_argument);
}

TEST(Maximality, PassesAboveHalf) {
  for (double qv : {2.0, 1.0})
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto v = check_maximality(QOrder(qv), n, 5);
      EXPECT_TRUE(v.passed) << "q=" << qv << " n=" << n << " margin=" << v.margin;
      ASSERT_TRUE(v.witness.has_value());
      const auto& best = std::get<Distribution>(*v.witness);
      for (double x : best) EXPECT_NEAR(x, 1.0 / static_cast<double>(n), 1e-3);
    }
}

TEST(Maximality, IteratesStayOnSimplex) {
  std::size_t seen = 0;
  check_maximality(QOrder(0.5), 5, 3, {}, [&](const Distribution& d) {
    ++seen;
    double sum = 0.0;
    for (double x : d) {
      ASSERT_GE(x, 0.0);
      sum += x;
    }
    ASSERT_NEAR(sum, 1.0, 1e-12);
  });
  EXPECT_GT(seen, 100u);
}

TEST(Maximality, ExploratoryLowOrderIsReported) {
  const auto v = check_maximality(QOrder(0.3), 2, 1);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(std::isfinite(v.margin));
  EXPECT_EQ(v.axiom, Axiom::maximality);
}

TEST(Expansibility, Examples) {
  EXPECT_TRUE(check_expansibility(QOrder(2.0), Distribution({0.5, 0.5})).passed);
  EXPECT_TRUE(check_expansibility(QOrder(0.5), Distribution({0.2, 0.3, 0.5})).passed);
  const auto v = check_expansibility(QOrder(3.0), Distribution({1.0}));
  EXPECT_TRUE(v.passed);
  EXPECT_EQ(hybrid(Distribution({1.0, 0.0}), QOrder(3.0)).value, 0.0);
  for (std::uint64_t s = 0; s < 200; ++s)
    for (double qv : {0.1, 0.5, 1.0, 2.0, 7.0})
      ASSERT_TRUE(check_expansibility(QOrder(qv), random_distribution(1 + s % 9, s)).passed);
}

TEST(AdditivityIndependent, FairCoins) {
  const Distribution coin({0.5, 0.5});
  EXPECT_NEAR(ja_residual(product_joint(coin, coin), QOrder(2.0)), 0.0, 1e-15);
}

TEST(AdditivityIndependent, Ensembles) {
  for (double qv : {0.5, 3.0}) {
    const auto v = check_additivity_independent(QOrder(qv), 17, 1000);
    EXPECT_TRUE(v.passed) << "q=" << qv;
    EXPECT_EQ(v.violations, 0u);
    EXPECT_GT(v.margin, 0.0);
    EXPECT_FALSE(v.witness.has_value());
  }
}

TEST(AdditivityDependent, FixedCounterexample) {
  const auto w = JointDistribution::from_rows({{0.2, 0.1}, {0.3, 0.4}});
  EXPECT_GT(std::abs(ja_residual(w, QOrder(2.0))), kViolationThreshold);
}

TEST(AdditivityDependent, EnsembleAndUnitControl) {
  const auto v = check_additivity_dependent(QOrder(2.0), 17, 1000, 0.05);
  EXPECT_TRUE(v.passed) << "violations " << v.violations;
  EXPECT_GE(v.violations, 990u);
  EXPECT_EQ(v.exceptions.size(), v.trials - v.violations);

  const auto control = check_additivity_dependent(QOrder(1.0), 17, 200, 0.05);
  EXPECT_EQ(control.violations, 0u);
  EXPECT_FALSE(control.passed);
}

TEST(Ensembles, DependentRespectsFloorAndIsDeterministic) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto r = sample_dependent_joint(4, i, 0.05);
    ASSERT_GT(mutual_information(r), 0.05);
    ASSERT_LE(r.n_a(), kMaxEnsembleDim);
    ASSERT_LE(r.n_b(), kMaxEnsembleDim);
    ASSERT_EQ(r, sample_dependent_joint(4, i, 0.05));
  }
  EXPECT_EQ(sample_product_joint(9, 3), sample_product_joint(9, 3));
}

TEST(Maximality, HalfOrderHasCounterexamplesForThreeOrMoreOutcomes) {
  // mpmath, 40 digits: one heavy outcome beats the uniform point at q = 1/2.
  std::vector<double> heavy(8, 0.272 / 7.0);
  heavy[0] = 0.728;
  const QOrder half(0.5);
  EXPECT_NEAR(hybrid(Distribution(heavy), half).value, 3.7964485128700867, 1e-12);
  EXPECT_NEAR(hybrid(Distribution::uniform(8), half).value, 3.6568542494923802, 1e-13);

  EXPECT_TRUE(check_maximality(half, 2, 1).passed);
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto v = check_maximality(half, n, 1);
    EXPECT_FALSE(v.passed) << "n=" << n;
    const auto& best = std::get<Distribution>(*v.witness);
    EXPECT_GT(hybrid(best, half).value, hybrid(Distribution::uniform(n), half).value);
  }
}
