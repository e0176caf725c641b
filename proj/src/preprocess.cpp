#include "spate/preprocess.hpp"

#include <cmath>

#include "spate/errors.hpp"

namespace spate {

ScalerStats standardize_fit(const Eigen::MatrixXd& X_train) {
  if (X_train.rows() == 0) throw_invalid("standardize_fit: empty train matrix");
  ScalerStats s;
  s.shift = X_train.colwise().mean();
  const Eigen::MatrixXd centered = X_train.rowwise() - s.shift.transpose();
  s.scale = (centered.array().square().colwise().mean()).sqrt();
  for (Eigen::Index j = 0; j < s.scale.size(); ++j)
    if (s.scale(j) < kEps) s.scale(j) = 1.0;
  return s;
}

Eigen::MatrixXd standardize_apply(const ScalerStats& s,
                                  const Eigen::MatrixXd& X) {
  return (X.rowwise() - s.shift.transpose()).array().rowwise() /
         s.scale.transpose().array();
}

ScalerStats minmax_fit(const Eigen::MatrixXd& X_train) {
  if (X_train.rows() == 0) throw_invalid("minmax_fit: empty train matrix");
  ScalerStats s;
  s.shift = X_train.colwise().minCoeff();
  s.scale = X_train.colwise().maxCoeff().transpose() - s.shift;
  for (Eigen::Index j = 0; j < s.scale.size(); ++j)
    if (s.scale(j) < kEps) s.scale(j) = 1.0;
  return s;
}

Eigen::MatrixXd minmax_apply(const ScalerStats& s, const Eigen::MatrixXd& X) {
  Eigen::MatrixXd out = (X.rowwise() - s.shift.transpose()).array().rowwise() /
                        s.scale.transpose().array();
  return out.cwiseMax(0.0).cwiseMin(1.0);
}

PcaModel pca_fit(const Eigen::MatrixXd& X_train, int k) {
  const Eigen::Index d = X_train.cols();
  if (k < 1 || k > d) throw_invalid("pca_fit: k out of range");
  if (X_train.rows() < 2) throw_invalid("pca_fit: need at least 2 rows");

  PcaModel m;
  m.k = k;
  m.means = X_train.colwise().mean();
  const Eigen::MatrixXd centered = X_train.rowwise() - m.means.transpose();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(X_train.rows() - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw_degenerate("pca_fit: eigen-decomposition failed");

  // SelfAdjointEigenSolver returns ascending eigenvalues; take the top k.
  m.components.resize(d, k);
  m.eigenvalues.resize(k);
  for (int j = 0; j < k; ++j) {
    const Eigen::Index src = d - 1 - j;
    Eigen::VectorXd comp = solver.eigenvectors().col(src);
    Eigen::Index argmax;
    comp.cwiseAbs().maxCoeff(&argmax);
    if (comp(argmax) < 0) comp = -comp;
    m.components.col(j) = comp;
    m.eigenvalues(j) = solver.eigenvalues()(src);
  }
  return m;
}

Eigen::MatrixXd pca_apply(const PcaModel& m, const Eigen::MatrixXd& X) {
  if (X.cols() != m.components.rows())
    throw_invalid("pca_apply: feature dimension mismatch");
  return (X.rowwise() - m.means.transpose()) * m.components;
}

}  // namespace spate
