#include "ratenet/propagator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ratenet/error.hpp"

namespace ratenet {

namespace {

constexpr double kLinearThreshold = 1e-12;
constexpr double kImagTolerance = 1e-12;

double checked_real(cplx sum, double scale, const char* what) {
  if (std::abs(sum.imag()) > kImagTolerance * std::max(1.0, scale))
    throw Error(Errc::RealnessViolation,
                std::string(what) + " has imaginary residue " + std::to_string(sum.imag()));
  return sum.real();
}

}  // namespace

cplx growth_integral(cplx a, double t) {
  if (std::abs(a) < kLinearThreshold) return t;
  const double x = a.real() * t;
  const double y = a.imag() * t;
  const double sh = std::sin(0.5 * y);
  const cplx em1(std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y));
  return em1 / a;
}

double growth_integral(double a, double t) {
  if (std::abs(a) < kLinearThreshold) return t;
  return std::expm1(a * t) / a;
}

Propagator::Propagator(Spectrum spectrum, double tau, double slope)
    : spectrum_(std::move(spectrum)), tau_(tau), slope_(slope) {
  rates_.reserve(spectrum_.size());
  for (const cplx& e : spectrum_.eigenvalues) rates_.push_back(-1.0 / tau_ + slope_ * e);
  if (const auto* f = std::get_if<FourierBlock>(&spectrum_.basis)) {
    route_ = Route::Fourier;
    r_ = f->r;
    s_ = f->s;
    for (int x = 0; x < r_; ++x) wr_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * x / r_));
    for (int x = 0; x < s_; ++x) ws_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * x / s_));
  } else if (std::holds_alternative<RealOrthogonal>(spectrum_.basis)) {
    route_ = Route::Orthogonal;
    for (auto& a : rates_) a = a.real();
  } else {
    route_ = Route::Dense;
    const CMatrix& b = std::get<DenseNumeric>(spectrum_.basis).q_inv;
    const std::size_t n = size();
    bbt_ = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        cplx acc = 0.0;
        for (std::size_t q = 0; q < n; ++q) acc += b(k, q) * b(l, q);
        bbt_(k, l) = acc;
      }
  }
}

double Propagator::normal_sum(std::size_t i, std::size_t j, const std::vector<cplx>& w) const {
  const std::size_t n = size();
  cplx sum = 0.0;
  double scale = 0.0;
  if (route_ == Route::Fourier) {
    const auto s = static_cast<std::size_t>(s_);
    const auto r = static_cast<std::size_t>(r_);
    const std::size_t dm = (i / s + r - j / s) % r;
    const std::size_t dp = (i % s + s - j % s) % s;
    for (std::size_t k = 0; k < n; ++k) {
      sum += w[k] * wr_[((k / s) * dm) % r] * ws_[((k % s) * dp) % s];
      scale += std::abs(w[k]);
    }
    sum /= static_cast<double>(n);
    scale /= static_cast<double>(n);
  } else {
    const Matrix& q = std::get<RealOrthogonal>(spectrum_.basis).q;
    for (std::size_t k = 0; k < n; ++k) {
      const double qq = q(i, k) * q(j, k);
      sum += w[k] * qq;
      scale += std::abs(w[k] * qq);
    }
  }
  return checked_real(sum, scale, "Phi entry");
}

double Propagator::dense_bilinear(std::size_t i, std::size_t j, const std::vector<cplx>& d) const {
  const CMatrix& q = std::get<DenseNumeric>(spectrum_.basis).q;
  const std::size_t n = size();
  cplx sum = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx left = q(i, k) * d[k];
    for (std::size_t l = 0; l < n; ++l) {
      const cplx term = left * bbt_(k, l) * d[l] * q(j, l);
      sum += term;
      scale += std::abs(term);
    }
  }
  return checked_real(sum, scale, "Phi product entry");
}

double Propagator::dense_pair(std::size_t i, std::size_t j, double t, bool integrate) const {
  const auto& dn = std::get<DenseNumeric>(spectrum_.basis);
  const std::size_t n = size();
  cplx sum = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx w = integrate ? growth_integral(rates_[k], t) : std::exp(rates_[k] * t);
    const cplx term = dn.q(i, k) * w * dn.q_inv(k, j);
    sum += term;
    scale += std::abs(term);
  }
  return checked_real(sum, scale, "Phi entry");
}

double Propagator::phi_entry(std::size_t i, std::size_t j, double t) const {
  if (t == 0.0) return i == j ? 1.0 : 0.0;
  if (route_ == Route::Dense) return dense_pair(i, j, t, false);
  std::vector<cplx> w(size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::exp(rates_[k] * t);
  return normal_sum(i, j, w);
}

double Propagator::phi_time_integral(std::size_t i, std::size_t j, double t) const {
  if (t == 0.0) return 0.0;
  if (route_ == Route::Dense) return dense_pair(i, j, t, true);
  std::vector<cplx> w(size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = growth_integral(rates_[k], t);
  return normal_sum(i, j, w);
}

double Propagator::phi_phiT_entry(std::size_t i, std::size_t j, double t) const {
  if (t == 0.0) return i == j ? 1.0 : 0.0;
  std::vector<cplx> w(size());
  if (route_ == Route::Dense) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::exp(rates_[k] * t);
    return dense_bilinear(i, j, w);
  }
  // normal matrices: Phi Phi^T = Q diag(exp(2 Re(a_k) t)) Q*
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::exp(2.0 * rates_[k].real() * t);
  return normal_sum(i, j, w);
}

double Propagator::phi_phiT_integral(std::size_t i, std::size_t j, double t) const {
  if (t == 0.0) return 0.0;
  const std::size_t n = size();
  if (route_ == Route::Dense) {
    const CMatrix& q = std::get<DenseNumeric>(spectrum_.basis).q;
    cplx sum = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const cplx term = q(i, k) * bbt_(k, l) * q(j, l) * growth_integral(rates_[k] + rates_[l], t);
        sum += term;
        scale += std::abs(term);
      }
    return checked_real(sum, scale, "integrated Phi product entry");
  }
  std::vector<cplx> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = growth_integral(2.0 * rates_[k].real(), t);
  return normal_sum(i, j, w);
}

double Propagator::integral_outer(std::size_t i, std::size_t j, double t) const {
  if (t == 0.0) return 0.0;
  std::vector<cplx> w(size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = growth_integral(rates_[k], t);
  if (route_ == Route::Dense) return dense_bilinear(i, j, w);
  for (auto& x : w) x = std::norm(x);
  return normal_sum(i, j, w);
}

Matrix Propagator::phi_matrix(double t) const {
  const std::size_t n = size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = phi_entry(i, j, t);
  return m;
}

}  // namespace ratenet
