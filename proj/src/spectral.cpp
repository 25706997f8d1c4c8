#include "ratenet/spectral.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "ratenet/error.hpp"

namespace ratenet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cplx> roots_of_unity(int k) {
  std::vector<cplx> w(static_cast<std::size_t>(k));
  for (int x = 0; x < k; ++x) w[static_cast<std::size_t>(x)] = std::polar(1.0, kTwoPi * x / k);
  return w;
}

int heaviside(int x) { return x > 0 ? 1 : 0; }

double band_f(int n, int nu, int s) {
  if (n == 0) return 2.0 * nu - heaviside(nu - s / 2 + (s % 2 == 0 ? 1 : -1));
  if (nu == s / 2) return -1.0;
  const double pi = std::numbers::pi;
  return std::sin(pi * n * (2 * nu + 1) / s) / std::sin(pi * n / s) - 1.0;
}

struct UnitDecomposition {
  std::vector<double> eigenvalues;
  Matrix q;
};

UnitDecomposition decompose(const GraphExpr& e) {
  switch (e.kind) {
    case GraphExpr::Kind::Path:
      if (e.n < 1) throw Error(Errc::InvalidArgument, "path needs n >= 1");
      return {path_eigenvalues(e.n), path_eigenvectors(e.n)};
    case GraphExpr::Kind::Cycle:
      if (e.n < 3) throw Error(Errc::InvalidArgument, "cycle needs n >= 3");
      return {cycle_eigenvalues(e.n), cycle_eigenvectors(e.n)};
    case GraphExpr::Kind::Kronecker:
    case GraphExpr::Kind::Cartesian: {
      if (e.factors.empty()) throw Error(Errc::InvalidArgument, "graph product without factors");
      UnitDecomposition acc = decompose(e.factors.back());
      for (auto it = e.factors.rbegin() + 1; it != e.factors.rend(); ++it) {
        UnitDecomposition f = decompose(*it);
        std::vector<double> ev;
        ev.reserve(f.eigenvalues.size() * acc.eigenvalues.size());
        for (double a : f.eigenvalues)
          for (double b : acc.eigenvalues) ev.push_back(e.kind == GraphExpr::Kind::Kronecker ? a * b : a + b);
        acc = {std::move(ev), kron(f.q, acc.q)};
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

std::vector<double> path_eigenvalues(int n) {
  std::vector<double> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = 2.0 * std::cos((i + 1) * std::numbers::pi / (n + 1));
  return e;
}

std::vector<double> cycle_eigenvalues(int n) {
  std::vector<double> e(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i)] = 2.0 * std::cos(kTwoPi * i / n);
  return e;
}

Matrix path_eigenvectors(int n) {
  const auto un = static_cast<std::size_t>(n);
  Matrix q(un, un);
  const double norm = std::sqrt(2.0 / (n + 1));
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j)
      q(j, i) = norm * std::sin(static_cast<double>((i + 1) * (j + 1)) * std::numbers::pi / (n + 1));
  return q;
}

Matrix cycle_eigenvectors(int n) {
  const auto un = static_cast<std::size_t>(n);
  Matrix q(un, un);
  const double flat = 1.0 / std::sqrt(static_cast<double>(n));
  const double paired = std::sqrt(2.0 / n);
  for (std::size_t j = 0; j < un; ++j) {
    q(j, 0) = flat;
    if (n % 2 == 0) q(j, un / 2) = (j % 2 == 0) ? flat : -flat;
  }
  // cos at index i and sin at index n - i: both share eigenvalue 2cos(2 pi i / n)
  for (std::size_t i = 1; 2 * i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) {
      const double theta = kTwoPi * static_cast<double>((i * j) % un) / n;
      q(j, i) = paired * std::cos(theta);
      q(j, un - i) = paired * std::sin(theta);
    }
  return q;
}

Spectrum block_circulant_spectrum(const TopologySpec& spec, double scale) {
  int r = 1;
  int s = 0;
  if (const auto* c = std::get_if<Circulant>(&spec)) {
    s = c->n;
  } else if (const auto* b = std::get_if<BlockCirculantBand>(&spec)) {
    r = b->r;
    s = b->s;
  } else {
    throw Error(Errc::InvalidArgument, "block_circulant_spectrum needs a circulant or band spec");
  }
  const Matrix unit = unit_adjacency(spec);
  const int m = validate_regularity(unit);
  const auto wr = roots_of_unity(r);
  const auto ws = roots_of_unity(s);

  std::vector<std::pair<int, int>> support;  // (l, c) with b_c^(l) = 1
  for (int l = 0; l < r; ++l)
    for (int c = 0; c < s; ++c)
      if (unit(0, static_cast<std::size_t>(l * s + c)) != 0.0) support.emplace_back(l, c);

  const double w = m > 0 ? scale / m : 0.0;
  Spectrum out;
  out.eigenvalues.resize(static_cast<std::size_t>(r * s));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j) {
      cplx e = 0.0;
      for (const auto& [l, c] : support)
        e += wr[static_cast<std::size_t>((i * l) % r)] * ws[static_cast<std::size_t>((j * c) % s)];
      out.eigenvalues[static_cast<std::size_t>(i * s + j)] = w * e;
    }
  out.basis = FourierBlock{r, s};
  out.in_degree = m;
  out.row_sum = m > 0 ? scale : 0.0;
  return out;
}

std::vector<cplx> banded_eigenvalues(int r, int s, const std::vector<int>& nu, double scale) {
  const int m = band_in_degree(r, s, nu);
  const double w = scale / m;
  const auto wr = roots_of_unity(r);
  std::vector<cplx> e(static_cast<std::size_t>(r * s));
  for (int a = 0; a < r; ++a)
    for (int n = 0; n < s; ++n) {
      cplx sum = a == 0 ? cplx(r - 1.0) : cplx(-1.0);
      for (int k = 0; k < r; ++k)
        sum += (a == 0 ? cplx(1.0) : wr[static_cast<std::size_t>((a * k) % r)]) *
               band_f(n, nu[static_cast<std::size_t>(k)], s);
      e[static_cast<std::size_t>(a * s + n)] = w * sum;
    }
  return e;
}

Spectrum product_spectrum(const GraphExpr& expr, double scale) {
  const int m = validate_regularity(unit_adjacency(expr));
  UnitDecomposition d = decompose(expr);
  const double w = m > 0 ? scale / m : 0.0;
  Spectrum out;
  out.eigenvalues.reserve(d.eigenvalues.size());
  for (double e : d.eigenvalues) out.eigenvalues.emplace_back(w * e, 0.0);
  out.basis = RealOrthogonal{std::move(d.q)};
  out.in_degree = m;
  out.row_sum = m > 0 ? scale : 0.0;
  return out;
}

Spectrum spectrum(const TopologySpec& spec, double scale) {
  if (const auto* b = std::get_if<BlockCirculantBand>(&spec)) {
    Spectrum out;
    out.eigenvalues = banded_eigenvalues(b->r, b->s, b->nu, scale);
    out.basis = FourierBlock{b->r, b->s};
    out.in_degree = band_in_degree(b->r, b->s, b->nu);
    out.row_sum = scale;
    return out;
  }
  if (const auto* g = std::get_if<GraphExpr>(&spec)) return product_spectrum(*g, scale);
  return block_circulant_spectrum(spec, scale);
}

std::vector<double> sigma1_spectrum(int n, double c) {
  if (n < 2) throw Error(Errc::InvalidArgument, "sigma1_spectrum needs N >= 2");
  std::vector<double> e(static_cast<std::size_t>(n), 1.0 - c);
  e[0] = 1.0 + c * (n - 1);
  return e;
}

CMatrix basis_matrix(const Spectrum& s) {
  const std::size_t n = s.size();
  if (const auto* f = std::get_if<FourierBlock>(&s.basis)) {
    const auto wr = roots_of_unity(f->r);
    const auto ws = roots_of_unity(f->s);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix q(n, n);
    const auto us = static_cast<std::size_t>(f->s);
    const auto ur = static_cast<std::size_t>(f->r);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        q(i, k) = norm * wr[((i / us) * (k / us)) % ur] * ws[((i % us) * (k % us)) % us];
    return q;
  }
  if (const auto* o = std::get_if<RealOrthogonal>(&s.basis)) {
    CMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) q(i, k) = o->q(i, k);
    return q;
  }
  return std::get<DenseNumeric>(s.basis).q;
}

CMatrix basis_inverse(const Spectrum& s) {
  if (const auto* d = std::get_if<DenseNumeric>(&s.basis)) return d->q_inv;
  const CMatrix q = basis_matrix(s);
  CMatrix b(q.cols(), q.rows());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t k = 0; k < q.cols(); ++k) b(k, i) = std::conj(q(i, k));
  return b;
}

}  // namespace ratenet
