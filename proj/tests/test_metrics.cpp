#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "spate/errors.hpp"
#include "spate/metrics.hpp"

using namespace spate;

namespace {

std::vector<int> random_labels(int n, int classes, RngStream& rng) {
  std::vector<int> y(n);
  for (int c = 0; c < classes; ++c) y[c] = c;  // every class present
  for (int i = classes; i < n; ++i)
    y[i] = static_cast<int>(rng.next_below(classes));
  return y;
}

}  // namespace

TEST_CASE("median_gamma basics") {
  Eigen::MatrixXd two(2, 2);
  two << 0, 0, 1, 0;
  CHECK(median_gamma(two) == doctest::Approx(0.5));

  Eigen::MatrixXd same = Eigen::MatrixXd::Zero(4, 3);
  CHECK(median_gamma(same) == 1.0);
}

TEST_CASE("median distance matches the sorted brute-force oracle") {
  auto rng = RngStream::from_key(1);
  const Eigen::MatrixXd P = oracle::random_simplex_rows(10, 4, rng);
  const double m = oracle::ref_median_distance(P);
  CHECK(median_gamma(P) == doctest::Approx(1.0 / (2 * m * m + 1e-10)));
}

TEST_CASE("parallel distance matrix equals the serial reference") {
  auto rng = RngStream::from_key(2);
  const Eigen::MatrixXd P = oracle::random_simplex_rows(40, 8, rng);
  CHECK(pairwise_distances(P) == pairwise_distances_serial(P));
}

TEST_CASE("ckta on far-separated tight clusters is near 1") {
  Eigen::MatrixXd P(20, 2);
  std::vector<int> y(20);
  auto rng = RngStream::from_key(3);
  for (int i = 0; i < 20; ++i) {
    const int c = i < 10 ? 0 : 1;
    y[i] = c;
    P(i, 0) = (c == 0 ? 0.0 : 100.0) + 1e-3 * rng.next_gaussian();
    P(i, 1) = 1e-3 * rng.next_gaussian();
  }
  CHECK(ckta(P, y) >= 0.99);
}

TEST_CASE("ckta under permuted labels is near 0") {
  auto rng = RngStream::from_key(4);
  Eigen::MatrixXd P(200, 2);
  for (int i = 0; i < 200; ++i) {
    const int c = i < 100 ? 0 : 1;
    P(i, 0) = 3.0 * c + 0.2 * rng.next_gaussian();
    P(i, 1) = 0.2 * rng.next_gaussian();
  }
  double total = 0;
  for (int perm = 0; perm < 20; ++perm) {
    std::vector<int> y(200);
    for (int i = 0; i < 200; ++i) y[i] = i < 100 ? 0 : 1;
    for (std::size_t i = y.size(); i > 1; --i)
      std::swap(y[i - 1], y[rng.next_below(i)]);
    total += std::abs(ckta(P, y));
  }
  CHECK(total / 20 <= 0.1);
}

TEST_CASE("metrics match brute-force references on random instances") {
  auto rng = RngStream::from_key(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5 + static_cast<int>(rng.next_below(26));
    const int classes = 2 + static_cast<int>(rng.next_below(2));
    const Eigen::MatrixXd P = oracle::random_simplex_rows(n, 4, rng);
    const std::vector<int> y = random_labels(n, classes, rng);

    CHECK(ckta(P, y) == doctest::Approx(oracle::ref_ckta(P, y)).epsilon(1e-9));
    CHECK(fisher_ratio(P, y) ==
          doctest::Approx(oracle::ref_fisher(P, y)).epsilon(1e-9));
    CHECK(inter_intra(P, y) ==
          doctest::Approx(oracle::ref_inter_intra(P, y)).epsilon(1e-9));
    CHECK(silhouette(P, y) ==
          doctest::Approx(oracle::ref_silhouette(P, y)).epsilon(1e-9));
  }
}

TEST_CASE("fisher degenerate geometries") {
  // two collapsed distinct classes: S_W = 0, ratio huge but finite
  Eigen::MatrixXd P(4, 1);
  P << 0, 0, 2, 2;
  const std::vector<int> y{0, 0, 1, 1};
  CHECK(fisher_ratio(P, y) > 1e9);

  // classes symmetric about the global mean: S_B = 0
  Eigen::MatrixXd Q(4, 1);
  Q << -1, 1, -1, 1;
  const std::vector<int> y2{0, 0, 1, 1};
  CHECK(fisher_ratio(Q, y2) == doctest::Approx(0.0));

  CHECK_THROWS_AS(fisher_ratio(P, std::vector<int>{0, 0, 0, 0}), Error);
}

TEST_CASE("inter_intra collapsed clusters and identical distributions") {
  Eigen::MatrixXd P(4, 1);
  P << 0, 0, 2, 2;
  CHECK(inter_intra(P, {0, 0, 1, 1}) > 1e9);

  // labels carry no structure: ratio near 1
  auto rng = RngStream::from_key(6);
  Eigen::MatrixXd Q(200, 3);
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 3; ++j) Q(i, j) = rng.next_gaussian();
  std::vector<int> y(200);
  for (int i = 0; i < 200; ++i) y[i] = i % 2;
  CHECK(std::abs(inter_intra(Q, y) - 1.0) < 0.1);

  CHECK_THROWS_AS(inter_intra(P, {0, 1, 2, 3}), Error);
}

TEST_CASE("silhouette constructed geometries") {
  auto rng = RngStream::from_key(7);
  Eigen::MatrixXd tight(20, 2);
  std::vector<int> y(20);
  for (int i = 0; i < 20; ++i) {
    const int c = i < 10 ? 0 : 1;
    y[i] = c;
    tight(i, 0) = 10.0 * c + 0.01 * rng.next_gaussian();
    tight(i, 1) = 0.01 * rng.next_gaussian();
  }
  CHECK(silhouette(tight, y) >= 0.9);

  // fully interleaved identical clusters
  Eigen::MatrixXd mixed(200, 2);
  std::vector<int> ym(200);
  for (int i = 0; i < 200; ++i) {
    mixed(i, 0) = rng.next_gaussian();
    mixed(i, 1) = rng.next_gaussian();
    ym[i] = i % 2;
  }
  CHECK(std::abs(silhouette(mixed, ym)) < 0.05);
}

TEST_CASE("silhouette 5-point hand instance") {
  Eigen::MatrixXd P(5, 1);
  P << 0.0, 1.0, 4.0, 5.0, 6.0;
  const std::vector<int> y{0, 0, 1, 1, 1};
  // hand-computed per-point scores
  const double eps = 1e-10;
  double expected = 0;
  expected += (5.0 - 1.0) / (5.0 + eps);          // point 0: a=1, b=(4+5+6)/3=5
  expected += (4.0 - 1.0) / (4.0 + eps);          // point 1: a=1, b=(3+4+5)/3=4
  expected += (3.5 - 1.5) / (3.5 + eps);          // point 2: a=1.5, b=(4+3)/2
  expected += (4.5 - 1.0) / (4.5 + eps);          // point 3: a=1,   b=(5+4)/2
  expected += (5.5 - 1.5) / (5.5 + eps);          // point 4: a=1.5, b=(6+5)/2
  CHECK(silhouette(P, y) == doctest::Approx(expected / 5));
}

TEST_CASE("entropy_norm endpoints") {
  CHECK(entropy_norm({0.25, 0.25, 0.25, 0.25}, 2) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(entropy_norm({1, 0, 0, 0}, 2) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(entropy_norm({0.5, 0.5, 0, 0}, 2) ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("entropy_norm bounded on random embeddings") {
  auto rng = RngStream::from_key(8);
  const Eigen::MatrixXd P = oracle::random_simplex_rows(30, 8, rng);
  for (int i = 0; i < 30; ++i) {
    std::vector<double> row(8);
    for (int j = 0; j < 8; ++j) row[j] = P(i, j);
    const double h = entropy_norm(row, 3);
    CHECK(h >= 0.0);
    CHECK(h <= 1.0 + 1e-6);
  }
}

TEST_CASE("tvpair identical and maximal cases") {
  Eigen::MatrixXd same(5, 2);
  for (int i = 0; i < 5; ++i) {
    same(i, 0) = 0.3;
    same(i, 1) = 0.7;
  }
  CHECK(tvpair(same, 1, 50, RngStream::from_key(1)).tv == doctest::Approx(0.0));

  Eigen::MatrixXd opposite(2, 2);
  opposite << 1, 0, 0, 1;
  const auto r = tvpair(opposite, 1, 10, RngStream::from_key(1));
  CHECK(r.tv == doctest::Approx(1.0));
  CHECK(r.tv_norm == doctest::Approx(1.0));
}

TEST_CASE("tvpair expectation on a two-point embedding set") {
  // half the rows [1,0], half [0,1]: expected pair TV = #cross/#all ~ 0.5
  Eigen::MatrixXd P(40, 2);
  for (int i = 0; i < 40; ++i) {
    P(i, 0) = i < 20 ? 1.0 : 0.0;
    P(i, 1) = 1.0 - P(i, 0);
  }
  const auto r = tvpair(P, 1, 2000, RngStream::from_key(2));
  CHECK(std::abs(r.tv - 400.0 / 780.0) < 0.05);
}

TEST_CASE("tvpair deterministic in the stream") {
  auto rng = RngStream::from_key(9);
  const Eigen::MatrixXd P = oracle::random_simplex_rows(25, 4, rng);
  const auto a = tvpair(P, 2, 100, RngStream::from_key(5));
  const auto b = tvpair(P, 2, 100, RngStream::from_key(5));
  CHECK(a.tv == b.tv);
}

TEST_CASE("metrics invariant under joint row permutation and relabeling") {
  auto rng = RngStream::from_key(10);
  const Eigen::MatrixXd P = oracle::random_simplex_rows(18, 4, rng);
  std::vector<int> y = random_labels(18, 3, rng);

  std::vector<int> perm(18);
  for (int i = 0; i < 18; ++i) perm[i] = i;
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng.next_below(i)]);
  Eigen::MatrixXd P2(18, 4);
  std::vector<int> y2(18);
  for (int i = 0; i < 18; ++i) {
    P2.row(i) = P.row(perm[i]);
    y2[i] = y[perm[i]];
  }
  CHECK(ckta(P, y) == doctest::Approx(ckta(P2, y2)).epsilon(1e-12));
  CHECK(silhouette(P, y) == doctest::Approx(silhouette(P2, y2)).epsilon(1e-12));
  CHECK(inter_intra(P, y) ==
        doctest::Approx(inter_intra(P2, y2)).epsilon(1e-12));

  // class identity relabeling: 0<->2
  std::vector<int> relabeled(y);
  for (int& l : relabeled) l = l == 0 ? 2 : (l == 2 ? 0 : l);
  CHECK(ckta(P, y) == doctest::Approx(ckta(P, relabeled)).epsilon(1e-12));
}
