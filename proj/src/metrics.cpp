#include "spate/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "spate/errors.hpp"

namespace spate {

namespace {

void fill_distance_rows(const Eigen::MatrixXd& P, Eigen::MatrixXd& D,
                        Eigen::Index i) {
  for (Eigen::Index j = i + 1; j < P.rows(); ++j)
    D(i, j) = (P.row(i) - P.row(j)).norm();
}

int require_multiclass(const std::vector<int>& y, const char* what) {
  const std::set<int> classes(y.begin(), y.end());
  if (classes.size() < 2)
    throw_undefined_metric(std::string(what) +
                           ": needs at least two classes");
  return static_cast<int>(classes.size());
}

// Double centering: HAH with H = I - (1/N) 11^T.
Eigen::MatrixXd center(const Eigen::MatrixXd& A) {
  const Eigen::VectorXd row_means = A.rowwise().mean();
  const Eigen::VectorXd col_means = A.colwise().mean();
  const double grand = A.mean();
  return ((A.colwise() - row_means).rowwise() - col_means.transpose())
             .array() +
         grand;
}

}  // namespace

Eigen::MatrixXd pairwise_distances_serial(const Eigen::MatrixXd& P) {
  const Eigen::Index N = P.rows();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) fill_distance_rows(P, D, i);
  return D.selfadjointView<Eigen::Upper>();
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& P) {
  const Eigen::Index N = P.rows();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < N; ++i) fill_distance_rows(P, D, i);
  return D.selfadjointView<Eigen::Upper>();
}

double median_gamma(const Eigen::MatrixXd& P) {
  const Eigen::Index N = P.rows();
  if (N < 2) throw_invalid("median_gamma: need at least 2 rows");
  const Eigen::MatrixXd D = pairwise_distances(P);
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(N) * (N - 1) / 2);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = i + 1; j < N; ++j) d.push_back(D(i, j));
  std::sort(d.begin(), d.end());
  const std::size_t k = d.size();
  const double m = (k % 2 == 1) ? d[k / 2] : 0.5 * (d[k / 2 - 1] + d[k / 2]);
  if (m < 1e-12) return 1.0;
  return 1.0 / (2.0 * m * m + kEps);
}

double ckta(const Eigen::MatrixXd& P, const std::vector<int>& y) {
  require_multiclass(y, "ckta");
  const Eigen::Index N = P.rows();
  const double gamma = median_gamma(P);
  const Eigen::MatrixXd D = pairwise_distances(P);
  const Eigen::MatrixXd K = (-gamma * D.array().square()).exp();
  Eigen::MatrixXd Y(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j)
      Y(i, j) = (y[i] == y[j]) ? 1.0 : 0.0;
  const Eigen::MatrixXd Kc = center(K);
  const Eigen::MatrixXd Yc = center(Y);
  const double inner = (Kc.array() * Yc.array()).sum();
  return inner / (Kc.norm() * Yc.norm() + kEps);
}

double fisher_ratio(const Eigen::MatrixXd& P, const std::vector<int>& y) {
  require_multiclass(y, "fisher");
  const Eigen::VectorXd mu = P.colwise().mean();
  std::map<int, std::vector<Eigen::Index>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i)
    by_class[y[i]].push_back(static_cast<Eigen::Index>(i));

  double s_between = 0, s_within = 0;
  for (const auto& [c, idx] : by_class) {
    Eigen::VectorXd mu_c = Eigen::VectorXd::Zero(P.cols());
    for (Eigen::Index i : idx) mu_c += P.row(i);
    mu_c /= static_cast<double>(idx.size());
    s_between += static_cast<double>(idx.size()) * (mu_c - mu).squaredNorm();
    for (Eigen::Index i : idx)
      s_within += (P.row(i).transpose() - mu_c).squaredNorm();
  }
  return s_between / (s_within + kEps);
}

double inter_intra(const Eigen::MatrixXd& P, const std::vector<int>& y) {
  require_multiclass(y, "inter_intra");
  const Eigen::MatrixXd D = pairwise_distances(P);
  double intra_sum = 0, inter_sum = 0;
  long intra_count = 0, inter_count = 0;
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (Eigen::Index j = i + 1; j < P.rows(); ++j) {
      if (y[i] == y[j]) {
        intra_sum += D(i, j);
        ++intra_count;
      } else {
        inter_sum += D(i, j);
        ++inter_count;
      }
    }
  if (intra_count == 0)
    throw_undefined_metric("inter_intra: no same-class pair");
  const double intra = intra_sum / intra_count;
  const double inter = inter_count > 0 ? inter_sum / inter_count : 0.0;
  return inter / (intra + kEps);
}

double silhouette(const Eigen::MatrixXd& P, const std::vector<int>& y) {
  require_multiclass(y, "silhouette");
  const Eigen::Index N = P.rows();
  const Eigen::MatrixXd D = pairwise_distances(P);
  std::map<int, std::vector<Eigen::Index>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i)
    by_class[y[i]].push_back(static_cast<Eigen::Index>(i));

  double total = 0;
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto& own = by_class[y[i]];
    if (own.size() < 2) continue;  // singleton contributes s(i) = 0
    double a = 0;
    for (Eigen::Index j : own)
      if (j != i) a += D(i, j);
    a /= static_cast<double>(own.size() - 1);

    double b = std::numeric_limits<double>::infinity();
    for (const auto& [c, idx] : by_class) {
      if (c == y[i]) continue;
      double mean = 0;
      for (Eigen::Index j : idx) mean += D(i, j);
      mean /= static_cast<double>(idx.size());
      b = std::min(b, mean);
    }
    total += (b - a) / (std::max(a, b) + kEps);
  }
  return total / static_cast<double>(N);
}

double entropy_norm(const std::vector<double>& p, int n_qubits) {
  if (n_qubits < 1) throw_invalid("entropy_norm: bad qubit count");
  double h = 0;
  for (double v : p) h -= v * std::log2(v + kEps);
  return h / n_qubits;
}

double mean_entropy_norm(const Eigen::MatrixXd& P, int n_qubits) {
  double total = 0;
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    std::vector<double> row(P.cols());
    for (Eigen::Index j = 0; j < P.cols(); ++j) row[j] = P(i, j);
    total += entropy_norm(row, n_qubits);
  }
  return total / static_cast<double>(P.rows());
}

TvPairResult tvpair(const Eigen::MatrixXd& P, int n_qubits, int n_pairs,
                    RngStream rng) {
  const Eigen::Index N = P.rows();
  if (N < 2) throw_invalid("tvpair: need at least 2 rows");
  if (n_pairs < 1) throw_invalid("tvpair: n_pairs must be >= 1");

  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  pairs.reserve(static_cast<std::size_t>(N) * (N - 1) / 2);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = i + 1; j < N; ++j) pairs.emplace_back(i, j);

  const std::size_t take =
      std::min<std::size_t>(pairs.size(), static_cast<std::size_t>(n_pairs));
  // partial Fisher-Yates; the first `take` entries are a uniform sample
  // without replacement
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + rng.next_below(pairs.size() - i);
    std::swap(pairs[i], pairs[j]);
  }

  double total = 0;
  for (std::size_t i = 0; i < take; ++i)
    total += 0.5 * (P.row(pairs[i].first) - P.row(pairs[i].second))
                       .cwiseAbs()
                       .sum();
  TvPairResult r;
  r.tv = total / static_cast<double>(take);
  r.tv_norm = r.tv / n_qubits;
  return r;
}

MetricValues compute_all_metrics(const EmbeddingSet& set, int n_pairs,
                                 RngStream rng) {
  MetricValues v;
  v.ckta = ckta(set.P, set.y);
  v.fisher = fisher_ratio(set.P, set.y);
  v.inter_intra = inter_intra(set.P, set.y);
  v.silhouette = silhouette(set.P, set.y);
  v.h_norm = mean_entropy_norm(set.P, set.n_qubits);
  const TvPairResult tv = tvpair(set.P, set.n_qubits, n_pairs, rng);
  v.tv_pair = tv.tv;
  v.tv_pair_norm = tv.tv_norm;
  return v;
}

}  // namespace spate
