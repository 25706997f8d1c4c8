#include "ratenet/analytic_stats.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ratenet/error.hpp"

namespace ratenet {

namespace {

Spectrum regular_spectrum(const TopologySpec& topology, double scale) {
  try {
    return spectrum(topology, scale);
  } catch (const IrregularDegreeError& e) {
    throw Error(Errc::NonInvariantTopology, std::string("analytic covariance needs a regular graph; ") + e.what());
  }
}

constexpr double kDegenerate = 1e-300;

}  // namespace

void NoiseSpec::validate(std::size_t n) const {
  for (double s : sigma)
    if (!(s >= 0.0) || !std::isfinite(s)) throw Error(Errc::InvalidArgument, "noise intensities must be >= 0");
  const double lo = n > 1 ? 1.0 / (1.0 - static_cast<double>(n)) : -1.0;
  for (double c : {c1, c2})
    if (!(c >= lo - 1e-12 && c <= 1.0 + 1e-12))
      throw Error(Errc::NotPSD, "correlation " + std::to_string(c) + " outside [" + std::to_string(lo) + ", 1]");
  if (!(c3 >= -1.0 && c3 <= 1.0)) throw Error(Errc::NotPSD, "weight correlation outside [-1, 1]");
}

CovarianceModel::CovarianceModel(const TopologySpec& topology, const NetworkParams& params, double mu)
    : CovarianceModel(regular_spectrum(topology, params.weight), params, mu) {}

CovarianceModel::CovarianceModel(Spectrum spectrum, const NetworkParams& params, double mu)
    : prop_(std::move(spectrum), params.tau, sigmoid_d1(params.sigmoid, mu)),
      mu_(mu),
      s_mu_(sigmoid(params.sigmoid, mu)) {
  params.validate();
}

// Rows of Phi sum to exp(a0 t) on a regular graph, so the off-diagonal double
// sums reduce to (row sum)(row sum) minus the diagonal part.
double CovarianceModel::cov_term_noise(std::size_t i, std::size_t j, double t, double c1) const {
  const double diag = prop_.phi_phiT_integral(i, j, t);
  const double full = growth_integral(2.0 * prop_.row_rate(), t);
  return diag + c1 * (full - diag);
}

double CovarianceModel::cov_term_initial(std::size_t i, std::size_t j, double t, double c2) const {
  const double diag = prop_.phi_phiT_entry(i, j, t);
  const double full = std::exp(2.0 * prop_.row_rate() * t);
  return diag + c2 * (full - diag);
}

double CovarianceModel::cov_term_weights(std::size_t i, std::size_t j, double t, double c3) const {
  const int m = in_degree();
  if (m < 1) throw Error(Errc::ZeroInDegree, "weight perturbation needs in-degree >= 1");
  const double outer = prop_.integral_outer(i, j, t);
  const double row = growth_integral(prop_.row_rate(), t);
  return s_mu_ * s_mu_ * ((1.0 - c3) * outer / m + c3 * row * row);
}

std::array<double, 3> CovarianceModel::weighted_terms(std::size_t i, std::size_t j, double t,
                                                      const NoiseSpec& noise) const {
  const auto& s = noise.sigma;
  std::array<double, 3> out{};
  if (s[0] != 0.0) out[0] = s[0] * s[0] * cov_term_noise(i, j, t, noise.c1);
  if (s[1] != 0.0) out[1] = s[1] * s[1] * cov_term_initial(i, j, t, noise.c2);
  if (s[2] != 0.0) out[2] = s[2] * s[2] * cov_term_weights(i, j, t, noise.c3);
  return out;
}

double CovarianceModel::covariance(std::size_t i, std::size_t j, double t, const NoiseSpec& noise) const {
  if (j < i) std::swap(i, j);
  const auto terms = weighted_terms(i, j, t, noise);
  return terms[0] + terms[1] + terms[2];
}

double CovarianceModel::variance(std::size_t i, double t, const NoiseSpec& noise) const {
  return covariance(i, i, t, noise);
}

double CovarianceModel::correlation(std::size_t i, std::size_t j, double t, const NoiseSpec& noise) const {
  // only the initial-condition term survives at t = 0: Cov = sigma_2^2 Sigma_2
  if (t == 0.0 && noise.sigma[1] > 0.0) return i == j ? 1.0 : noise.c2;
  const double vi = variance(i, t, noise);
  const double vj = i == j ? vi : variance(j, t, noise);
  if (vi < kDegenerate && vj < kDegenerate)
    throw Error(Errc::DegenerateVariance, "zero variance at t=" + std::to_string(t));
  return covariance(i, j, t, noise) / std::sqrt(vi * vj);
}

CovarianceReport CovarianceModel::report(const std::vector<double>& times,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                         const NoiseSpec& noise) const {
  CovarianceReport rep;
  for (double t : times)
    for (auto [i, j] : pairs) {
      CovarianceRow row{t, i, j, 0, 0, 0, 0, {}};
      row.terms = weighted_terms(std::min(i, j), std::max(i, j), t, noise);
      row.cov = row.terms[0] + row.terms[1] + row.terms[2];
      row.var_i = variance(i, t, noise);
      row.var_j = variance(j, t, noise);
      if (t == 0.0 && noise.sigma[1] > 0.0)
        row.corr = i == j ? 1.0 : noise.c2;
      else if (row.var_i < kDegenerate && row.var_j < kDegenerate)
        row.corr = std::nan("");
      else
        row.corr = row.cov / std::sqrt(row.var_i * row.var_j);
      rep.rows.push_back(row);
    }
  return rep;
}

double CovarianceModel::higher_order_correlation_fc(int n, double t, const NoiseSpec& noise) const {
  const auto nodes = static_cast<int>(size());
  if (in_degree() != nodes - 1) throw Error(Errc::NotFullyConnected, "closed form holds for complete graphs only");
  if (n < 2) throw Error(Errc::InvalidArgument, "order must be >= 2");
  if (nodes < 2) throw Error(Errc::InvalidArgument, "need at least two neurons");
  if (n % 2 == 1) return 0.0;
  return std::pow(correlation(0, 1, t, noise), n / 2);
}

std::vector<double> circulant_eigenvalues(int n, int nu, double scale) {
  if (n < 3 || nu < 1 || nu > n / 2) throw Error(Errc::BadBand, "need N >= 3 and 1 <= nu <= floor(N/2)");
  std::vector<double> e(static_cast<std::size_t>(n));
  e[0] = scale;
  for (int k = 1; k < n; ++k) {
    if (nu == n / 2) {
      e[static_cast<std::size_t>(k)] = -scale / (n - 1);
    } else {
      const double pi = std::numbers::pi;
      e[static_cast<std::size_t>(k)] =
          scale / (2.0 * nu) * (std::sin(pi * k * (2 * nu + 1) / n) / std::sin(pi * k / n) - 1.0);
    }
  }
  return e;
}

double circulant_chaos_covariance(std::size_t i, std::size_t j, const ChaosInput& in) {
  const auto e = circulant_eigenvalues(in.n, in.nu, in.params.weight);
  const double slope = sigmoid_d1(in.params.sigmoid, in.mu);
  const double s_mu = sigmoid(in.params.sigmoid, in.mu);
  const int m = in.nu == in.n / 2 ? in.n - 1 : 2 * in.nu;
  const long lag = static_cast<long>(i) - static_cast<long>(j);
  double noise = 0.0, initial = 0.0, weights = 0.0;
  for (int k = 0; k < in.n; ++k) {
    const double a = -1.0 / in.params.tau + slope * e[static_cast<std::size_t>(k)];
    const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>((k * lag) % in.n) / in.n);
    noise += growth_integral(2.0 * a, in.t) * c;
    initial += std::exp(2.0 * a * in.t) * c;
    const double g = growth_integral(a, in.t);
    weights += g * g * c;
  }
  const auto& s = in.sigma;
  return (s[0] * s[0] * noise + s[1] * s[1] * initial + s[2] * s[2] * s_mu * s_mu / m * weights) / in.n;
}

double circulant_chaos_correlation(std::size_t i, std::size_t j, const ChaosInput& in) {
  const double vi = circulant_chaos_covariance(i, i, in);
  const double vj = circulant_chaos_covariance(j, j, in);
  if (vi < kDegenerate && vj < kDegenerate) throw Error(Errc::DegenerateVariance, "zero variance");
  return circulant_chaos_covariance(i, j, in) / std::sqrt(vi * vj);
}

}  // namespace ratenet
