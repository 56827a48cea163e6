#include <gtest/gtest.h>

#include <cmath>

#include "hexhybrid/errors.hpp"
#include "hexhybrid/rng.hpp"
#include "hexhybrid/stats.hpp"
#include "oracles.hpp"

using namespace hexhybrid;

TEST(Stats, MeanAndSem) {
  const std::vector<double> same{5, 5, 5};
  const auto s = score_stats(same);
  EXPECT_DOUBLE_EQ(s.mean, 5);
  EXPECT_DOUBLE_EQ(s.sem, 0);
  const std::vector<double> xs{1, 2, 3};
  const auto t = score_stats(xs);
  EXPECT_DOUBLE_EQ(t.mean, 2);
  EXPECT_NEAR(t.sem, 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(t.sem, 0.57735, 1e-5);
  const std::vector<double> one{4};
  EXPECT_FALSE(score_stats(one).sem_defined());
  EXPECT_THROW(score_stats(std::vector<double>{}), DegenerateInputError);
}

TEST(Stats, FiveNumberSummary) {
  const std::vector<double> xs{7, 1, 3, 5, 9};
  const auto q = score_stats(xs).quartiles;
  EXPECT_EQ(q.min, 1);
  EXPECT_EQ(q.q1, 3);
  EXPECT_EQ(q.median, 5);
  EXPECT_EQ(q.q3, 7);
  EXPECT_EQ(q.max, 9);
  const std::vector<double> even{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(score_stats(even).quartiles.median, 2.5);
}

TEST(Stats, SemShrinksWithSampleSize) {
  Rng rng(3);
  std::vector<double> pool(20000);
  for (double& v : pool) v = rng.uniform(-100, 100);
  const std::vector<double> small(pool.begin(), pool.begin() + 500);
  const std::vector<double> big(pool.begin(), pool.begin() + 2000);
  const double ratio = score_stats(small).sem / score_stats(big).sem;
  EXPECT_NEAR(ratio, 2.0, 0.2);
}

TEST(Stats, IncompleteBetaKnownValues) {
  EXPECT_NEAR(regularized_incomplete_beta(1, 1, 0.3), 0.3, 1e-14);
  EXPECT_NEAR(regularized_incomplete_beta(2, 1, 0.5), 0.25, 1e-14);
  EXPECT_NEAR(regularized_incomplete_beta(0.5, 0.5, 0.5), 0.5, 1e-12);
  EXPECT_EQ(regularized_incomplete_beta(3, 4, 0.0), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(3, 4, 1.0), 1.0);
  // Symmetry I_x(a,b) = 1 - I_{1-x}(b,a) across the branch switch.
  for (double x : {0.1, 0.4, 0.45, 0.6, 0.9}) {
    EXPECT_NEAR(regularized_incomplete_beta(3, 7, x), 1 - regularized_incomplete_beta(7, 3, 1 - x), 1e-13);
  }
}

TEST(Stats, StudentTAgainstKnownAndIntegratedValues) {
  // df = 1 is Cauchy: CDF(t) = 1/2 + atan(t)/pi.
  for (double t : {-3.0, -0.5, 0.0, 1.0, 7.0}) EXPECT_NEAR(student_t_cdf(t, 1), 0.5 + std::atan(t) / M_PI, 1e-12);
  // df = 2 closed form.
  for (double t : {-2.0, 0.3, 4.0}) EXPECT_NEAR(student_t_cdf(t, 2), 0.5 + t / (2 * std::sqrt(2 + t * t)), 1e-12);
  for (double df : {3.0, 9.0, 30.0, 999.0})
    for (double t : {0.2, 1.5, 2.7, 5.0}) EXPECT_NEAR(student_t_two_sided_p(t, df), oracle::t_two_sided_p(t, df), 1e-9);
}

TEST(Stats, PairedTTestTextbook) {
  const std::vector<double> xs{1, 2, 3, 4, 5}, ys{0, 0, 0, 0, 0};
  const auto r = paired_t_test(xs, ys, 0.05);
  EXPECT_NEAR(r.t, 3 / (std::sqrt(2.5) / std::sqrt(5.0)), 1e-12);
  EXPECT_NEAR(r.t, 4.2426, 1e-4);
  EXPECT_NEAR(r.p, 0.0132, 1e-4);
  EXPECT_EQ(r.df, 4);
  EXPECT_TRUE(r.significant);
  const auto swapped = paired_t_test(ys, xs, 0.05);
  EXPECT_DOUBLE_EQ(swapped.t, -r.t);
  EXPECT_DOUBLE_EQ(swapped.p, r.p);
}

TEST(Stats, PairedTTestDegenerateInputs) {
  const std::vector<double> xs{1, 2, 3};
  EXPECT_THROW(paired_t_test(xs, xs), DegenerateInputError);
  const std::vector<double> shifted{2, 3, 4};
  EXPECT_THROW(paired_t_test(xs, shifted), DegenerateInputError);  // constant difference
  EXPECT_THROW(paired_t_test(std::vector<double>{1}, std::vector<double>{2}), DegenerateInputError);
  EXPECT_THROW(paired_t_test(xs, std::vector<double>{1, 2}), DegenerateInputError);
}

TEST(Stats, PairedTTestMatchesIntegratedOracle) {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + rng.uniform_index(60);
    std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
    const double shift = rng.uniform(-1, 1);
    for (int i = 0; i < n; ++i) {
      xs[static_cast<std::size_t>(i)] = rng.uniform(-3, 3) + shift;
      ys[static_cast<std::size_t>(i)] = rng.uniform(-3, 3);
    }
    const auto r = paired_t_test(xs, ys);
    EXPECT_NEAR(r.p, oracle::t_two_sided_p(r.t, n - 1), 1e-6);
  }
}

TEST(Stats, ResultsTable) {
  ResultsTable single({"Hybrid"}, {1});
  ScoreStats s;
  s.mean = 12.5;
  s.sem = 0.5;
  s.n = 10;
  single.set(1, "Hybrid", s);
  EXPECT_DOUBLE_EQ(*single.overall_mean("Hybrid"), 12.5);
  EXPECT_NE(single.to_text().find("12.500 ± 0.500"), std::string::npos);

  const std::vector<double> hybrid{692.1, 671.1, 580.4, 13.3, 493.1};
  ResultsTable t({"Scripted", "RL Individual", "Hybrid"}, {1, 2, 3, 4, 5});
  for (int i = 0; i < 5; ++i) {
    ScoreStats c;
    c.mean = hybrid[static_cast<std::size_t>(i)];
    c.n = 100;
    c.quartiles = {c.mean - 2, c.mean - 1, c.mean, c.mean + 1, c.mean + 2};
    t.set(i + 1, "Hybrid", c);
  }
  EXPECT_NEAR(*t.overall_mean("Hybrid"), 489.998, 0.4);
  EXPECT_NEAR(*t.overall_mean("Hybrid"), 490.0, 1e-9);
  EXPECT_FALSE(t.overall_mean("Scripted").has_value());
  const std::string box = t.boxplot_csv();
  EXPECT_NE(box.find("seed,column,min,q1,median,q3,max"), std::string::npos);
  EXPECT_NE(box.find("4,Hybrid,11.300,12.300,13.300,14.300,15.300"), std::string::npos);
  EXPECT_NE(t.to_csv().find("overall"), std::string::npos);
  EXPECT_THROW(t.set(9, "Hybrid", s), ConfigError);
  EXPECT_THROW(t.set(1, "Nope", s), ConfigError);
}
