#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cmath>
#include <span>
#include <vector>

namespace ratenet {

// Running central moments up to order four; merge() combines disjoint
// sample sets (Pebay's pairwise update), so push(x) is merge with one sample.
class MomentAccumulator {
 public:
  void push(double x);
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased
  double mean_stderr() const;
  double variance_stderr() const;
  // central sums sum (x - mean)^p for p = 2, 3, 4
  double m2() const { return m2_; }
  double m3() const { return m3_; }
  double m4() const { return m4_; }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

// Bivariate central co-moments M_pq = sum (x - xbar)^p (y - ybar)^q, p + q <= 4.
class CoMomentAccumulator {
 public:
  void push(double x, double y);
  void merge(const CoMomentAccumulator& other);

  std::uint64_t count() const { return n_; }
  double mean_x() const { return mx_; }
  double mean_y() const { return my_; }
  double central(int p, int q) const { return m_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; }

  double covariance() const;  // unbiased
  double correlation() const;
  // Delta-method standard errors from the fourth-order co-moments.
  double covariance_stderr() const;
  double correlation_stderr() const;

 private:
  std::uint64_t n_ = 0;
  double mx_ = 0.0;
  double my_ = 0.0;
  std::array<std::array<double, 5>, 5> m_{};
};

struct HigherOrderEstimate {
  double value;
  double std_error;
};

// Sample normalized joint cumulant of the columns `cols`,
//   mean(prod_k (x_k - xbar_k)) / (prod_k mean|x_k - xbar_k|^n)^{1/n},  n = cols.size(),
// over samples stored row-major with `stride` values per trial. Trials in
// [skip_lo, skip_hi) are left out (used by the jackknife).
double normalized_cumulant(std::span<const double> samples, std::size_t stride,
                           std::span<const std::size_t> cols, std::size_t skip_lo = 0,
                           std::size_t skip_hi = 0);

double higher_order_statistic(std::span<const double> samples, std::size_t n);

// Delete-a-group jackknife: stat(lo, hi) evaluates the statistic without
// trials [lo, hi); stat(0, 0) is the full-sample value.
template <class Stat>
HigherOrderEstimate jackknife(std::size_t trials, std::size_t groups, Stat&& stat) {
  const double full = stat(std::size_t{0}, std::size_t{0});
  if (groups < 2 || trials < groups) return {full, std::nan("")};
  std::vector<double> leave(groups);
  double mean = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    leave[g] = stat(g * trials / groups, (g + 1) * trials / groups);
    mean += leave[g];
  }
  mean /= static_cast<double>(groups);
  double ss = 0.0;
  for (double v : leave) ss += (v - mean) * (v - mean);
  return {full, std::sqrt(ss * static_cast<double>(groups - 1) / static_cast<double>(groups))};
}

HigherOrderEstimate estimate_higher_order(std::span<const double> samples, std::size_t n,
                                          std::size_t groups = 50);

}  // namespace ratenet
