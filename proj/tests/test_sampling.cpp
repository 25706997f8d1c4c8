#include <doctest.h>

#include <cmath>
#include <vector>

#include "ratenet/error.hpp"
#include "ratenet/moments.hpp"
#include "ratenet/sampling.hpp"

using namespace ratenet;

namespace {

// sample covariance matrix of draws stored one vector per entry
struct SampleStats {
  std::vector<double> mean;
  std::vector<std::vector<double>> cov;

  double corr(std::size_t i, std::size_t j) const { return cov[i][j] / std::sqrt(cov[i][i] * cov[j][j]); }
};

template <class Draw>
SampleStats collect(std::size_t n, int draws, Draw&& draw) {
  SampleStats s{std::vector<double>(n, 0.0), std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
  std::vector<std::vector<double>> all;
  for (int k = 0; k < draws; ++k) {
    all.push_back(draw());
    for (std::size_t i = 0; i < n; ++i) s.mean[i] += all.back()[i];
  }
  for (auto& m : s.mean) m /= draws;
  for (const auto& x : all)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s.cov[i][j] += (x[i] - s.mean[i]) * (x[j] - s.mean[j]);
  for (auto& row : s.cov)
    for (auto& v : row) v /= draws - 1;
  return s;
}

}  // namespace

TEST_CASE("independent and fully shared increments") {
  Rng rng(1);
  const auto s = collect(4, 20000, [&] { return sample_brownian_increments(4, 0.0, 0.1, rng); });
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(s.cov[i][i] == doctest::Approx(0.1).epsilon(0.04));
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(s.corr(i, j)) < 0.03);
  }
  for (int k = 0; k < 10; ++k) {
    const auto x = sample_brownian_increments(6, 1.0, 0.25, rng);
    for (double v : x) CHECK(v == x[0]);
  }
}

TEST_CASE("Brownian increments carry correlation C1") {
  Rng rng(2);
  const auto s = collect(5, 100000, [&] { return sample_brownian_increments(5, 0.3, 0.1, rng); });
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(s.cov[i][i] == doctest::Approx(0.1).epsilon(0.02));
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(s.corr(i, j) - 0.3) < 0.01);
  }
}

TEST_CASE("negative correlations use the symmetric square root") {
  Rng rng(3);
  const auto s = collect(5, 100000, [&] { return sample_brownian_increments(5, -0.2, 1.0, rng); });
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(s.cov[i][i] == doctest::Approx(1.0).epsilon(0.02));
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(s.corr(i, j) + 0.2) < 0.01);
  }
  // the boundary 1/(1-n) is singular: all draws sum to zero
  const EquicorrelatedSampler edge(5, -0.25);
  for (int k = 0; k < 5; ++k) {
    const auto x = edge.sample(rng);
    double sum = 0.0;
    for (double v : x) sum += v;
    CHECK(std::abs(sum) < 1e-12);
  }
}

TEST_CASE("inadmissible correlations are NotPSD") {
  for (double c : {-0.26, 1.01}) {
    try {
      EquicorrelatedSampler(5, c);
      FAIL("expected NotPSD");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotPSD);
    }
  }
  CHECK_NOTHROW(EquicorrelatedSampler(2, -1.0));
}

TEST_CASE("initial conditions") {
  Rng rng(4);
  for (int k = 0; k < 5; ++k)
    for (double v : sample_initial_conditions(4, 0.7, 0.0, 0.4, rng)) CHECK(v == 0.7);
  const auto s = collect(3, 100000, [&] { return sample_initial_conditions(3, 0.7, 0.5, 0.4, rng); });
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.mean[i] == doctest::Approx(0.7).epsilon(0.01));
    CHECK(s.cov[i][i] == doctest::Approx(0.25).epsilon(0.02));
    for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(s.corr(i, j) - 0.4) < 0.01);
  }
}

TEST_CASE("weight perturbations live on the edges of the graph") {
  Rng rng(5);
  const auto adj = realize(circular_ladder(10), 1.0);
  const auto w = sample_weight_perturbation(adj, 0.0, rng);
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (std::size_t j = 0; j < adj.size(); ++j)
      if (adj.weights(i, j) == 0.0) CHECK(w(i, j) == 0.0);
      else CHECK(w(i, j) != 0.0);

  const auto same = sample_weight_perturbation(adj, 1.0, rng);
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (std::size_t j = 0; j < adj.size(); ++j)
      if (adj.weights(i, j) != 0.0) CHECK(same(i, j) == same(0, 1));
}

TEST_CASE("weight perturbations carry correlation C3") {
  Rng rng(6);
  const auto adj = realize(circular_ladder(10), 1.0);
  // slots: (0,1) and (0,2) share a row, (5,4) and (19,18) do not
  const std::pair<std::size_t, std::size_t> slots[] = {{0, 1}, {0, 2}, {5, 4}, {19, 18}};
  std::vector<CoMomentAccumulator> acc(6);
  MomentAccumulator var;
  for (int k = 0; k < 100000; ++k) {
    const auto w = sample_weight_perturbation(adj, 0.5, rng);
    std::size_t p = 0;
    for (std::size_t a = 0; a < 4; ++a) {
      if (a == 0) var.push(w(slots[a].first, slots[a].second));
      for (std::size_t b = a + 1; b < 4; ++b)
        acc[p++].push(w(slots[a].first, slots[a].second), w(slots[b].first, slots[b].second));
    }
  }
  CHECK(var.variance() == doctest::Approx(1.0).epsilon(0.02));
  for (const auto& c : acc) CHECK(std::abs(c.correlation() - 0.5) < 0.02);
}

TEST_CASE("empty graphs have no weights to perturb") {
  Rng rng(7);
  WeightedAdjacency empty{Matrix(3, 3), 1.0, 0, {0, 0, 0}};
  try {
    sample_weight_perturbation(empty, 0.0, rng);
    FAIL("expected ZeroInDegree");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroInDegree);
  }
}

TEST_CASE("same generator state gives the same draws") {
  Rng a(99), b(99);
  CHECK(sample_brownian_increments(7, 0.3, 0.1, a) == sample_brownian_increments(7, 0.3, 0.1, b));
  CHECK(sample_initial_conditions(7, 0.0, 1.0, -0.1, a) == sample_initial_conditions(7, 0.0, 1.0, -0.1, b));
}
