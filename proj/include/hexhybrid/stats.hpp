#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hexhybrid {

struct FiveNumber {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

struct ScoreStats {
  double mean = 0.0;
  double sem = 0.0;  // sample std / sqrt(n); 0 when n == 1
  long long n = 0;
  FiveNumber quartiles{};

  bool sem_defined() const { return n >= 2; }
};

// Throws DegenerateInputError on an empty sample.
ScoreStats score_stats(std::span<const double> xs);

// Linear interpolation between closest ranks; xs must be sorted.
double quantile_sorted(std::span<const double> xs, double q);

// I_x(a, b) via Lentz's continued fraction, using the symmetry
// I_x(a,b) = 1 - I_{1-x}(b,a) when x > (a+1)/(a+b+2).
double regularized_incomplete_beta(double a, double b, double x);

double student_t_cdf(double t, double df);

// Two-sided tail probability P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  long long df = 0;
  double mean_diff = 0.0;
  bool significant = false;
};

// Paired-sample t-test on d = xs - ys. Throws DegenerateInputError for
// mismatched lengths, n < 2, or zero variance of the differences.
TTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys, double alpha = 0.05);

// Seeds x matchup columns, each cell an optional ScoreStats.
class ResultsTable {
 public:
  ResultsTable(std::vector<std::string> columns, std::vector<long long> seeds);

  void set(long long seed, const std::string& column, const ScoreStats& stats);
  const std::optional<ScoreStats>& get(long long seed, const std::string& column) const;
  // Mean of the per-seed means present in the column.
  std::optional<double> overall_mean(const std::string& column) const;

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<long long>& seeds() const { return seeds_; }

  std::string to_csv() const;
  std::string to_text() const;
  // Five-number summary per (seed, column).
  std::string boxplot_csv() const;

 private:
  std::size_t col_index(const std::string& column) const;
  std::size_t seed_index(long long seed) const;

  std::vector<std::string> columns_;
  std::vector<long long> seeds_;
  std::vector<std::optional<ScoreStats>> cells_;
};

}  // namespace hexhybrid
