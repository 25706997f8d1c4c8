#include "ratenet/moments.hpp"

#include <cmath>
#include <numeric>

#include "ratenet/error.hpp"

namespace ratenet {

void MomentAccumulator::push(double x) {
  MomentAccumulator one;
  one.n_ = 1;
  one.mean_ = x;
  merge(one);
}

void MomentAccumulator::merge(const MomentAccumulator& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double d = o.mean_ - mean_;
  const double dn = d / n;
  const double dn2 = dn * dn;
  const double t = d * dn * na * nb;
  m4_ += o.m4_ + t * dn2 * (na * na - na * nb + nb * nb) + 6.0 * dn2 * (na * na * o.m2_ + nb * nb * m2_) +
         4.0 * dn * (na * o.m3_ - nb * m3_);
  m3_ += o.m3_ + t * dn * (na - nb) + 3.0 * dn * (na * o.m2_ - nb * m2_);
  m2_ += o.m2_ + t;
  mean_ += nb * dn;
  n_ += o.n_;
}

double MomentAccumulator::variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

double MomentAccumulator::mean_stderr() const {
  return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : std::nan("");
}

double MomentAccumulator::variance_stderr() const {
  if (n_ < 2) return std::nan("");
  const double n = static_cast<double>(n_);
  const double v = m2_ / n;
  return std::sqrt(std::max(0.0, m4_ / n - v * v) / n);
}

namespace {

constexpr double kBinom[5][5] = {
    {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};

}  // namespace

void CoMomentAccumulator::push(double x, double y) {
  CoMomentAccumulator one;
  one.n_ = 1;
  one.mx_ = x;
  one.my_ = y;
  one.m_[0][0] = 1.0;
  merge(one);
}

// Each set's deviations from the pooled mean are its own deviations shifted by
// a constant, so M_pq expands binomially in the lower-order sums of each set.
void CoMomentAccumulator::merge(const CoMomentAccumulator& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double dx = o.mx_ - mx_;
  const double dy = o.my_ - my_;
  // shifts of set A and B deviations relative to the pooled mean
  const double ax = -nb * dx / n, ay = -nb * dy / n;
  const double bx = na * dx / n, by = na * dy / n;
  std::array<double, 5> pax{}, pay{}, pbx{}, pby{};
  pax[0] = pay[0] = pbx[0] = pby[0] = 1.0;
  for (int k = 1; k < 5; ++k) {
    pax[k] = pax[k - 1] * ax;
    pay[k] = pay[k - 1] * ay;
    pbx[k] = pbx[k - 1] * bx;
    pby[k] = pby[k - 1] * by;
  }
  auto a = m_;
  a[0][0] = na;
  auto b = o.m_;
  b[0][0] = nb;
  std::array<std::array<double, 5>, 5> out{};
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q) {
      double acc = 0.0;
      for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= q; ++j) {
          if ((i == 1 && j == 0) || (i == 0 && j == 1)) continue;  // first central sums vanish
          const double c = kBinom[p][i] * kBinom[q][j];
          acc += c * (pax[p - i] * pay[q - j] * a[i][j] + pbx[p - i] * pby[q - j] * b[i][j]);
        }
      out[p][q] = acc;
    }
  out[0][0] = n;
  m_ = out;
  mx_ += nb * dx / n;
  my_ += nb * dy / n;
  n_ += o.n_;
}

double CoMomentAccumulator::covariance() const {
  return n_ > 1 ? m_[1][1] / static_cast<double>(n_ - 1) : 0.0;
}

double CoMomentAccumulator::correlation() const {
  const double d = m_[2][0] * m_[0][2];
  return d > 0.0 ? m_[1][1] / std::sqrt(d) : std::nan("");
}

double CoMomentAccumulator::covariance_stderr() const {
  if (n_ < 2) return std::nan("");
  const double n = static_cast<double>(n_);
  const double c = m_[1][1] / n;
  return std::sqrt(std::max(0.0, m_[2][2] / n - c * c) / n);
}

double CoMomentAccumulator::correlation_stderr() const {
  if (n_ < 2) return std::nan("");
  const double n = static_cast<double>(n_);
  const double vx = m_[2][0] / n;
  const double vy = m_[0][2] / n;
  if (!(vx > 0.0 && vy > 0.0)) return std::nan("");
  const double sx = std::sqrt(vx), sy = std::sqrt(vy);
  const double r = m_[1][1] / n / (sx * sy);
  const double u2v2 = m_[2][2] / n / (vx * vy);
  const double u3v = m_[3][1] / n / (vx * sx * sy);
  const double uv3 = m_[1][3] / n / (sx * vy * sy);
  const double u4 = m_[4][0] / n / (vx * vx);
  const double v4 = m_[0][4] / n / (vy * vy);
  const double var = u2v2 - r * (u3v + uv3) + 0.25 * r * r * (u4 + 2.0 * u2v2 + v4);
  return std::sqrt(std::max(0.0, var) / n);
}

double normalized_cumulant(std::span<const double> samples, std::size_t stride, std::span<const std::size_t> cols,
                           std::size_t skip_lo, std::size_t skip_hi) {
  const std::size_t k = samples.size() / stride;
  const std::size_t n = cols.size();
  const double used = static_cast<double>(k - (skip_hi - skip_lo));
  std::vector<double> mean(n, 0.0);
  for (std::size_t t = 0; t < k; ++t) {
    if (t >= skip_lo && t < skip_hi) continue;
    for (std::size_t c = 0; c < n; ++c) mean[c] += samples[t * stride + cols[c]];
  }
  for (auto& m : mean) m /= used;
  double prod_sum = 0.0;
  std::vector<double> abs_moment(n, 0.0);
  for (std::size_t t = 0; t < k; ++t) {
    if (t >= skip_lo && t < skip_hi) continue;
    double prod = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      const double d = samples[t * stride + cols[c]] - mean[c];
      prod *= d;
      abs_moment[c] += std::pow(std::abs(d), static_cast<double>(n));
    }
    prod_sum += prod;
  }
  double log_denominator = 0.0;
  for (double m : abs_moment) {
    const double avg = m / used;
    if (!(avg >= 1e-300)) throw Error(Errc::DegenerateMoment, "absolute central moment vanishes");
    log_denominator += std::log(avg);
  }
  return prod_sum / used / std::exp(log_denominator / static_cast<double>(n));
}

double higher_order_statistic(std::span<const double> samples, std::size_t n) {
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return normalized_cumulant(samples, n, cols);
}

HigherOrderEstimate estimate_higher_order(std::span<const double> samples, std::size_t n, std::size_t groups) {
  if (n < 2) throw Error(Errc::InvalidArgument, "tuple order must be >= 2");
  if (samples.size() / n < 1000) throw Error(Errc::InvalidArgument, "higher-order estimates need K >= 1000");
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return jackknife(samples.size() / n, groups,
                   [&](std::size_t lo, std::size_t hi) { return normalized_cumulant(samples, n, cols, lo, hi); });
}

}  // namespace ratenet
