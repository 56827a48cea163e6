#include "hexhybrid/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "hexhybrid/errors.hpp"

namespace hexhybrid {

namespace {

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// Continued fraction for I_x(a,b), modified Lentz.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return h;
}

std::string fmt(double v, int prec = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

}  // namespace

double quantile_sorted(std::span<const double> xs, double q) {
  if (xs.empty()) throw DegenerateInputError("quantile of empty sample");
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] + frac * (xs[hi] - xs[lo]);
}

ScoreStats score_stats(std::span<const double> xs) {
  if (xs.empty()) throw DegenerateInputError("no scores");
  ScoreStats s;
  s.n = static_cast<long long>(xs.size());
  s.mean = mean_of(xs);
  s.sem = xs.size() >= 2 ? sample_std(xs, s.mean) / std::sqrt(static_cast<double>(xs.size())) : 0.0;
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  s.quartiles = {sorted.front(), quantile_sorted(sorted, 0.25), quantile_sorted(sorted, 0.5),
                 quantile_sorted(sorted, 0.75), sorted.back()};
  return s;
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw DegenerateInputError("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw DegenerateInputError("t distribution needs df > 0");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return regularized_incomplete_beta(0.5 * df, 0.5, x);
}

double student_t_cdf(double t, double df) {
  const double tail = 0.5 * student_t_two_sided_p(t, df);
  return t >= 0.0 ? 1.0 - tail : tail;
}

TTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys, double alpha) {
  if (xs.size() != ys.size()) throw DegenerateInputError("paired samples differ in length");
  if (xs.size() < 2) throw DegenerateInputError("paired t-test needs at least two pairs");
  std::vector<double> d(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) d[i] = xs[i] - ys[i];
  const double m = mean_of(d);
  const double sd = sample_std(d, m);
  if (!(sd > 0.0)) throw DegenerateInputError("paired differences have zero variance");
  TTestResult r;
  r.df = static_cast<long long>(d.size()) - 1;
  r.mean_diff = m;
  r.t = m / (sd / std::sqrt(static_cast<double>(d.size())));
  r.p = student_t_two_sided_p(r.t, static_cast<double>(r.df));
  r.significant = r.p < alpha;
  return r;
}

ResultsTable::ResultsTable(std::vector<std::string> columns, std::vector<long long> seeds)
    : columns_(std::move(columns)), seeds_(std::move(seeds)), cells_(columns_.size() * seeds_.size()) {
  if (seeds_.empty()) throw ConfigError("results table needs at least one seed");
}

std::size_t ResultsTable::col_index(const std::string& column) const {
  const auto it = std::find(columns_.begin(), columns_.end(), column);
  if (it == columns_.end()) throw ConfigError("unknown column " + column);
  return static_cast<std::size_t>(it - columns_.begin());
}

std::size_t ResultsTable::seed_index(long long seed) const {
  const auto it = std::find(seeds_.begin(), seeds_.end(), seed);
  if (it == seeds_.end()) throw ConfigError("unknown seed " + std::to_string(seed));
  return static_cast<std::size_t>(it - seeds_.begin());
}

void ResultsTable::set(long long seed, const std::string& column, const ScoreStats& stats) {
  cells_[seed_index(seed) * columns_.size() + col_index(column)] = stats;
}

const std::optional<ScoreStats>& ResultsTable::get(long long seed, const std::string& column) const {
  return cells_[seed_index(seed) * columns_.size() + col_index(column)];
}

std::optional<double> ResultsTable::overall_mean(const std::string& column) const {
  double sum = 0.0;
  int count = 0;
  for (long long s : seeds_) {
    if (const auto& c = get(s, column)) {
      sum += c->mean;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

std::string ResultsTable::to_csv() const {
  std::ostringstream out;
  out << "seed";
  for (const auto& c : columns_) out << ',' << c << "_mean," << c << "_sem," << c << "_n";
  out << '\n';
  for (long long s : seeds_) {
    out << s;
    for (const auto& c : columns_) {
      if (const auto& cell = get(s, c)) {
        out << ',' << fmt(cell->mean) << ',' << fmt(cell->sem) << ',' << cell->n;
      } else {
        out << ",,,";
      }
    }
    out << '\n';
  }
  out << "overall";
  for (const auto& c : columns_) {
    const auto m = overall_mean(c);
    out << ',' << (m ? fmt(*m) : "") << ",,";
  }
  out << '\n';
  return out.str();
}

std::string ResultsTable::to_text() const {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Seed"};
  header.insert(header.end(), columns_.begin(), columns_.end());
  rows.push_back(header);
  for (long long s : seeds_) {
    std::vector<std::string> row{std::to_string(s)};
    for (const auto& c : columns_) {
      const auto& cell = get(s, c);
      row.push_back(cell ? fmt(cell->mean) + " ± " + fmt(cell->sem) : "-");
    }
    rows.push_back(row);
  }
  std::vector<std::string> overall{"Overall Mean"};
  for (const auto& c : columns_) {
    const auto m = overall_mean(c);
    overall.push_back(m ? fmt(*m) : "-");
  }
  rows.push_back(overall);

  // "±" is two bytes but one column wide.
  auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char ch : s) w += (ch & 0xC0) != 0x80;
    return w;
  };
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], width(r[i]));
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << "  ";
      const std::size_t pad = widths[i] - width(r[i]);
      if (i == 0) {
        out << r[i] << std::string(pad, ' ');
      } else {
        out << std::string(pad, ' ') << r[i];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string ResultsTable::boxplot_csv() const {
  std::ostringstream out;
  out << "seed,column,min,q1,median,q3,max\n";
  for (long long s : seeds_) {
    for (const auto& c : columns_) {
      const auto& cell = get(s, c);
      if (!cell) continue;
      const auto& q = cell->quartiles;
      out << s << ',' << c << ',' << fmt(q.min) << ',' << fmt(q.q1) << ',' << fmt(q.median) << ',' << fmt(q.q3)
          << ',' << fmt(q.max) << '\n';
    }
  }
  return out.str();
}

}  // namespace hexhybrid
