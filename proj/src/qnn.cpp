#include "spate/qnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "spate/errors.hpp"

namespace spate {

AnsatzParams AnsatzParams::zeros(int layers, int n_qubits) {
  AnsatzParams p;
  p.layers = layers;
  p.n_qubits = n_qubits;
  p.values.assign(static_cast<std::size_t>(layers) * n_qubits * 3, 0.0);
  return p;
}

AnsatzParams AnsatzParams::random_init(int layers, int n_qubits,
                                       RngStream rng) {
  AnsatzParams p = zeros(layers, n_qubits);
  for (double& v : p.values) v = 2.0 * std::numbers::pi * rng.next_uniform();
  return p;
}

std::vector<GateOp> ansatz_gates(const AnsatzParams& params) {
  const int n = params.n_qubits;
  const int L = params.layers;
  if (n < 1 || L < 1) throw_invalid("ansatz_gates: empty ansatz");
  std::vector<GateOp> gates;
  gates.reserve(static_cast<std::size_t>(L) * n * 2);
  for (int l = 0; l < L; ++l) {
    for (int q = 0; q < n; ++q)
      gates.push_back(GateOp::rot(q, params.at(l, q, 0), params.at(l, q, 1),
                                  params.at(l, q, 2)));
    if (n >= 2) {
      const int stride = (l % (n - 1)) + 1;
      for (int q = 0; q < n; ++q)
        gates.push_back(GateOp::cnot(q, (q + stride) % n));
    }
  }
  return gates;
}

void ansatz_apply(StateVector& state, const AnsatzParams& params) {
  if (params.n_qubits != state.n)
    throw_invalid("ansatz_apply: qubit count mismatch");
  apply_all(state, ansatz_gates(params));
}

std::vector<int> readout_qubits(int num_classes, int n_qubits) {
  if (num_classes < 2) throw_invalid("readout_qubits: need >= 2 classes");
  int m = 0;
  while ((1 << m) < num_classes) ++m;
  if (m > n_qubits) throw_capacity("readout_qubits: register too small");
  std::vector<int> q(m);
  for (int i = 0; i < m; ++i) q[i] = i;
  return q;
}

namespace {

std::vector<double> readout_marginal(const StateVector& encoded,
                                     const AnsatzParams& params,
                                     const std::vector<int>& readout) {
  StateVector s = encoded;
  ansatz_apply(s, params);
  return marginal_probabilities(s, readout);
}

std::vector<double> truncate_renormalize(const std::vector<double>& r,
                                         int num_classes) {
  double denom = kEps;
  for (int c = 0; c < num_classes; ++c) denom += r[c];
  std::vector<double> p(num_classes);
  for (int c = 0; c < num_classes; ++c) p[c] = r[c] / denom;
  return p;
}

double sample_loss(const std::vector<double>& class_probs, int label) {
  return -std::log(class_probs[label] + kEps);
}

// d(sample_loss)/d(r_k) for k < C; entries beyond C are truncated away and
// carry zero gradient.
std::vector<double> loss_grad_wrt_readout(const std::vector<double>& r,
                                          int num_classes, int label) {
  double denom = kEps;
  for (int c = 0; c < num_classes; ++c) denom += r[c];
  const double p_true = r[label] / denom;
  const double dl_dp = -1.0 / (p_true + kEps);
  std::vector<double> g(num_classes);
  for (int k = 0; k < num_classes; ++k) {
    const double dp_drk =
        ((k == label ? denom : 0.0) - r[label]) / (denom * denom);
    g[k] = dl_dp * dp_drk;
  }
  return g;
}

AnsatzParams grad_impl(const std::vector<StateVector>& encoded,
                       const std::vector<int>& labels,
                       const std::vector<int>& batch_idx,
                       const AnsatzParams& params,
                       const std::vector<int>& readout, int num_classes,
                       bool parallel) {
  const std::size_t n_params = params.size();
  const std::size_t n_batch = batch_idx.size();
  if (n_batch == 0) throw_invalid("parameter_shift_grad: empty batch");

  // per-sample unshifted readouts, hoisted out of the shift loop
  std::vector<std::vector<double>> dl_dr(n_batch);
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (long i = 0; i < static_cast<long>(n_batch); ++i)
    dl_dr[i] = loss_grad_wrt_readout(
        readout_marginal(encoded[batch_idx[i]], params, readout), num_classes,
        labels[batch_idx[i]]);

  // contributions[i * n_params + j] = d(loss_i)/d(theta_j); slots are
  // disjoint, the reduction below runs in fixed order for any thread count
  std::vector<double> contributions(n_batch * n_params, 0.0);
  const long total = static_cast<long>(n_batch * n_params);

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (long t = 0; t < total; ++t) {
    const std::size_t i = static_cast<std::size_t>(t) / n_params;
    const std::size_t j = static_cast<std::size_t>(t) % n_params;
    const StateVector& state = encoded[batch_idx[i]];

    AnsatzParams shifted = params;
    shifted.values[j] += std::numbers::pi / 2.0;
    const std::vector<double> r_plus = readout_marginal(state, shifted, readout);
    shifted.values[j] -= std::numbers::pi;
    const std::vector<double> r_minus =
        readout_marginal(state, shifted, readout);

    double g = 0;
    for (int k = 0; k < num_classes; ++k)
      g += dl_dr[i][k] * 0.5 * (r_plus[k] - r_minus[k]);
    contributions[i * n_params + j] = g;
  }

  AnsatzParams grad = AnsatzParams::zeros(params.layers, params.n_qubits);
  for (std::size_t i = 0; i < n_batch; ++i)
    for (std::size_t j = 0; j < n_params; ++j)
      grad.values[j] += contributions[i * n_params + j];
  for (double& v : grad.values) v /= static_cast<double>(n_batch);
  return grad;
}

}  // namespace

std::vector<double> class_probabilities(const StateVector& encoded,
                                        const AnsatzParams& params,
                                        const std::vector<int>& readout,
                                        int num_classes) {
  return truncate_renormalize(readout_marginal(encoded, params, readout),
                              num_classes);
}

double batch_loss(const std::vector<StateVector>& encoded,
                  const std::vector<int>& labels,
                  const std::vector<int>& batch_idx,
                  const AnsatzParams& params, const std::vector<int>& readout,
                  int num_classes) {
  if (batch_idx.empty()) throw_invalid("batch_loss: empty batch");
  double total = 0;
  for (int i : batch_idx)
    total += sample_loss(
        class_probabilities(encoded[i], params, readout, num_classes),
        labels[i]);
  return total / static_cast<double>(batch_idx.size());
}

AnsatzParams parameter_shift_grad(const std::vector<StateVector>& encoded,
                                  const std::vector<int>& labels,
                                  const std::vector<int>& batch_idx,
                                  const AnsatzParams& params,
                                  const std::vector<int>& readout,
                                  int num_classes) {
  return grad_impl(encoded, labels, batch_idx, params, readout, num_classes,
                   true);
}

AnsatzParams parameter_shift_grad_serial(
    const std::vector<StateVector>& encoded, const std::vector<int>& labels,
    const std::vector<int>& batch_idx, const AnsatzParams& params,
    const std::vector<int>& readout, int num_classes) {
  return grad_impl(encoded, labels, batch_idx, params, readout, num_classes,
                   false);
}

void adam_step(AnsatzParams& params, const AnsatzParams& grad, AdamState& state,
               int t, const TrainConfig& cfg) {
  if (t < 1) throw_invalid("adam_step: t must be >= 1");
  const std::size_t n = params.size();
  if (state.m.size() != n) {
    state.m.assign(n, 0.0);
    state.v.assign(n, 0.0);
  }
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t j = 0; j < n; ++j) {
    state.m[j] = cfg.beta1 * state.m[j] + (1.0 - cfg.beta1) * grad.values[j];
    state.v[j] =
        cfg.beta2 * state.v[j] + (1.0 - cfg.beta2) * grad.values[j] * grad.values[j];
    const double m_hat = state.m[j] / bc1;
    const double v_hat = state.v[j] / bc2;
    params.values[j] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
  }
}

TrainedModel train(const std::vector<StateVector>& encoded,
                   const std::vector<int>& labels, int num_classes,
                   const TrainConfig& cfg) {
  if (encoded.empty()) throw_invalid("train: empty training split");
  if (cfg.steps < 1) throw_invalid("train: steps must be >= 1");
  if (cfg.batch < 1) throw_invalid("train: batch must be >= 1");
  const int n_qubits = encoded.front().n;
  const int layers = 2;

  auto rng = RngStream::from_key(cfg.seed);
  TrainedModel model;
  model.num_classes = num_classes;
  model.readout = readout_qubits(num_classes, n_qubits);
  model.params = AnsatzParams::random_init(layers, n_qubits, rng.child(0));

  auto shuffle_rng = rng.child(1);
  AdamState opt;
  std::vector<int> order(encoded.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::size_t cursor = order.size();  // forces a shuffle before the first step

  for (int step = 1; step <= cfg.steps; ++step) {
    if (cursor >= order.size()) {
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[shuffle_rng.next_below(i)]);
      cursor = 0;
    }
    const std::size_t take =
        std::min<std::size_t>(cfg.batch, order.size() - cursor);
    std::vector<int> batch(order.begin() + cursor,
                           order.begin() + cursor + take);
    cursor += take;

    model.loss_trace.push_back(batch_loss(encoded, labels, batch, model.params,
                                          model.readout, num_classes));
    const AnsatzParams grad = parameter_shift_grad(
        encoded, labels, batch, model.params, model.readout, num_classes);
    adam_step(model.params, grad, opt, step, cfg);
  }
  return model;
}

namespace {

// Mann-Whitney AUC with the tie correction (ties count 1/2).
double binary_auc(const std::vector<double>& scores,
                  const std::vector<bool>& positive) {
  long n_pos = 0, n_neg = 0;
  for (bool p : positive) p ? ++n_pos : ++n_neg;
  if (n_pos == 0 || n_neg == 0)
    return std::numeric_limits<double>::quiet_NaN();
  double wins = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!positive[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (positive[j]) continue;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace

PerfValues evaluate(const std::vector<StateVector>& encoded,
                    const std::vector<int>& labels, const TrainedModel& model) {
  if (encoded.empty()) throw_invalid("evaluate: empty test split");
  const int C = model.num_classes;
  const std::size_t N = encoded.size();

  std::vector<std::vector<double>> probs(N);
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < static_cast<long>(N); ++i)
    probs[i] = class_probabilities(encoded[i], model.params, model.readout, C);

  std::vector<int> pred(N);
  for (std::size_t i = 0; i < N; ++i)
    pred[i] = static_cast<int>(std::max_element(probs[i].begin(),
                                                probs[i].end()) -
                               probs[i].begin());

  PerfValues out;
  long correct = 0;
  for (std::size_t i = 0; i < N; ++i)
    if (pred[i] == labels[i]) ++correct;
  out.accuracy = static_cast<double>(correct) / static_cast<double>(N);

  auto class_precision_recall = [&](int positive, double& prec, double& rec) {
    long tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const bool is_pos = labels[i] == positive;
      const bool pred_pos = pred[i] == positive;
      if (pred_pos && is_pos) ++tp;
      else if (pred_pos) ++fp;
      else if (is_pos) ++fn;
    }
    prec = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    rec = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  };

  if (C == 2) {
    class_precision_recall(1, out.precision, out.recall);
    std::vector<double> scores(N);
    std::vector<bool> positive(N);
    for (std::size_t i = 0; i < N; ++i) {
      scores[i] = probs[i][1];
      positive[i] = labels[i] == 1;
    }
    out.auc = binary_auc(scores, positive);
  } else {
    double prec_sum = 0, rec_sum = 0, auc_sum = 0;
    int auc_count = 0;
    for (int c = 0; c < C; ++c) {
      double prec, rec;
      class_precision_recall(c, prec, rec);
      prec_sum += prec;
      rec_sum += rec;
      std::vector<double> scores(N);
      std::vector<bool> positive(N);
      for (std::size_t i = 0; i < N; ++i) {
        scores[i] = probs[i][c];
        positive[i] = labels[i] == c;
      }
      const double auc = binary_auc(scores, positive);
      if (!std::isnan(auc)) {
        auc_sum += auc;
        ++auc_count;
      }
    }
    out.precision = prec_sum / C;
    out.recall = rec_sum / C;
    out.auc = auc_count > 0 ? auc_sum / auc_count
                            : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace spate
