#include "ratenet/sampling.hpp"

#include <cmath>
#include <string>

#include "ratenet/error.hpp"

namespace ratenet {

EquicorrelatedSampler::EquicorrelatedSampler(std::size_t n, double c) : n_(n), c_(c), alpha_(0.0), beta_(0.0) {
  if (n == 0) throw Error(Errc::InvalidArgument, "sampler needs n >= 1");
  if (!(c <= 1.0)) throw Error(Errc::NotPSD, "correlation " + std::to_string(c) + " exceeds 1");
  if (c >= 0.0) {
    alpha_ = std::sqrt(1.0 - c);
    beta_ = std::sqrt(c);
    return;
  }
  const double nn = static_cast<double>(n);
  alpha_ = std::sqrt(1.0 - c);
  // smallest eigenvalue of the covariance, alpha^2 + n c = 1 + (n - 1) c
  const double disc = 1.0 + (nn - 1.0) * c;
  if (disc < -1e-10)
    throw Error(Errc::NotPSD, "correlation " + std::to_string(c) + " below 1/(1-n) for n=" + std::to_string(n));
  beta_ = (-alpha_ + std::sqrt(std::max(0.0, disc))) / nn;
}

void EquicorrelatedSampler::sample(Rng& rng, double* out) const {
  std::normal_distribution<double> gauss;
  sample(rng, gauss, out);
}

void EquicorrelatedSampler::sample(Rng& rng, std::normal_distribution<double>& gauss, double* out) const {
  if (c_ >= 0.0) {
    const double eta = gauss(rng);
    for (std::size_t i = 0; i < n_; ++i) out[i] = alpha_ * gauss(rng) + beta_ * eta;
    return;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    out[i] = gauss(rng);
    sum += out[i];
  }
  for (std::size_t i = 0; i < n_; ++i) out[i] = alpha_ * out[i] + beta_ * sum;
}

std::vector<double> EquicorrelatedSampler::sample(Rng& rng) const {
  std::vector<double> out(n_);
  sample(rng, out.data());
  return out;
}

std::vector<double> sample_brownian_increments(std::size_t n, double c1, double dt, Rng& rng) {
  if (!(dt > 0.0)) throw Error(Errc::InvalidArgument, "dt must be positive");
  auto x = EquicorrelatedSampler(n, c1).sample(rng);
  const double s = std::sqrt(dt);
  for (auto& v : x) v *= s;
  return x;
}

std::vector<double> sample_initial_conditions(std::size_t n, double mu, double sigma2, double c2, Rng& rng) {
  auto x = EquicorrelatedSampler(n, c2).sample(rng);
  for (auto& v : x) v = mu + sigma2 * v;
  return x;
}

Matrix sample_weight_perturbation(const WeightedAdjacency& adj, double c3, Rng& rng) {
  const std::size_t n = adj.size();
  std::size_t slots = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) slots += adj.weights(i, j) != 0.0;
  if (slots == 0) throw Error(Errc::ZeroInDegree, "adjacency has no edges");
  const auto draw = EquicorrelatedSampler(slots, c3).sample(rng);
  Matrix w(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (adj.weights(i, j) != 0.0) w(i, j) = draw[k++];
  return w;
}

}  // namespace ratenet
