// Serial-vs-OpenMP comparison for the three data-parallel kernels. Each
// kernel has a serial reference used by the tests; these benchmarks show the
// speedup of the parallel path on the same inputs.
#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "spate/harness.hpp"
#include "spate/metrics.hpp"
#include "spate/qnn.hpp"

using namespace spate;

namespace {

Eigen::MatrixXd bench_rows(int n, int d) {
  auto rng = RngStream::from_key(1);
  Eigen::MatrixXd P(n, d);
  for (int i = 0; i < n; ++i) {
    double sum = 0;
    for (int j = 0; j < d; ++j) {
      P(i, j) = rng.next_uniform();
      sum += P(i, j);
    }
    P.row(i) /= sum;
  }
  return P;
}

void bm_distances_serial(benchmark::State& state) {
  const Eigen::MatrixXd P = bench_rows(static_cast<int>(state.range(0)), 32);
  for (auto _ : state)
    benchmark::DoNotOptimize(pairwise_distances_serial(P));
}

void bm_distances_parallel(benchmark::State& state) {
  const Eigen::MatrixXd P = bench_rows(static_cast<int>(state.range(0)), 32);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances(P));
}

struct EmbedSetup {
  Eigen::MatrixXd features;
  EncoderConfig ec;
  RngStream base = RngStream::from_key(7);

  explicit EmbedSetup(int n) {
    auto rng = RngStream::from_key(3);
    features.resize(n, 3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 3; ++j) features(i, j) = rng.next_uniform();
    ec.kind = EncoderKind::Spate;
    ec.n_qubits = 6;
    ec.lif.sigma = 0.1;
    ec.seeds = 3;
  }
};

void bm_embed_serial(benchmark::State& state) {
  const EmbedSetup s(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        embed_rows_serial(s.features, EncoderKind::Spate, s.ec, s.base));
}

void bm_embed_parallel(benchmark::State& state) {
  const EmbedSetup s(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        embed_rows(s.features, EncoderKind::Spate, s.ec, s.base));
}

struct GradSetup {
  std::vector<StateVector> encoded;
  std::vector<int> labels;
  std::vector<int> batch;
  std::vector<int> readout;
  AnsatzParams params;

  explicit GradSetup(int batch_size) {
    auto rng = RngStream::from_key(5);
    const int n = 6;
    for (int i = 0; i < batch_size; ++i) {
      Eigen::VectorXd x(n);
      for (int k = 0; k < n; ++k) x(k) = 3.0 * rng.next_uniform();
      encoded.push_back(angle_state(x));
      labels.push_back(i % 2);
      batch.push_back(i);
    }
    readout = readout_qubits(2, n);
    params = AnsatzParams::random_init(2, n, rng.child(1));
  }
};

void bm_grad_serial(benchmark::State& state) {
  const GradSetup s(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(parameter_shift_grad_serial(
        s.encoded, s.labels, s.batch, s.params, s.readout, 2));
}

void bm_grad_parallel(benchmark::State& state) {
  const GradSetup s(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(parameter_shift_grad(
        s.encoded, s.labels, s.batch, s.params, s.readout, 2));
}

}  // namespace

BENCHMARK(bm_distances_serial)->Arg(256)->Arg(1024);
BENCHMARK(bm_distances_parallel)->Arg(256)->Arg(1024);
BENCHMARK(bm_embed_serial)->Arg(64)->Arg(256);
BENCHMARK(bm_embed_parallel)->Arg(64)->Arg(256);
BENCHMARK(bm_grad_serial)->Arg(8)->Arg(32);
BENCHMARK(bm_grad_parallel)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
