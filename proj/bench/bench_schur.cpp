// Schur complement assembly: OpenMP kernel against the serial dense reference.
//
//   ./build/bench_schur --benchmark_filter=Parallel
//   OMP_NUM_THREADS=4 ./build/bench_schur

#include <benchmark/benchmark.h>

#include <random>

#include "chromabound/graph.hpp"
#include "chromabound/moment.hpp"
#include "chromabound/parameters.hpp"
#include "chromabound/schur.hpp"

using namespace chromabound;

namespace {

struct Case {
  const char* name;
  SdpProblem problem;
  BlockMatrix X, W;
};

// Random positive definite iterates with the problem's block shapes.
BlockMatrix random_pd(const SdpProblem& p, std::mt19937& rng) {
  std::normal_distribution<double> g;
  BlockMatrix out;
  for (int k = 0; k < static_cast<int>(p.blocks.size()); ++k) {
    const int d = p.block_dim(k);
    if (p.is_diagonal(k)) {
      Eigen::VectorXd v(d);
      for (int i = 0; i < d; ++i) v(i) = 0.5 + std::abs(g(rng));
      out.blocks.push_back(v);
    } else {
      Eigen::MatrixXd a(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = g(rng);
      out.blocks.push_back(a * a.transpose() / d + Eigen::MatrixXd::Identity(d, d));
    }
  }
  return out;
}

const std::vector<Case>& cases() {
  static const std::vector<Case> all = [] {
    std::mt19937 rng(1);
    std::vector<Case> v;
    auto add = [&](const char* name, SdpProblem p) {
      BlockMatrix X = random_pd(p, rng), W = random_pd(p, rng);
      v.push_back({name, std::move(p), std::move(X), std::move(W)});
    };
    add("xi_sdp C9", xi_sdp_problem(cycle(9)));
    add("theta_plus kneser(7,2)", theta_plus_bar_problem(kneser(7, 2)));
    add("level2 K3 c=2", build_moment_sdp(complete(3), 2, 2).problem);
    return v;
  }();
  return all;
}

void BM_SchurParallel(benchmark::State& state) {
  const Case& c = cases()[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(c.name);
  const SchurAssembler assembler(c.problem);
  Eigen::MatrixXd M;
  for (auto _ : state) {
    assembler.assemble(c.X, c.W, M);
    benchmark::DoNotOptimize(M.data());
  }
  state.counters["m"] = c.problem.num_constraints();
}

void BM_SchurReference(benchmark::State& state) {
  const Case& c = cases()[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(c.name);
  for (auto _ : state) {
    Eigen::MatrixXd M = schur_complement_reference(c.problem, c.X, c.W);
    benchmark::DoNotOptimize(M.data());
  }
  state.counters["m"] = c.problem.num_constraints();
}

}  // namespace

BENCHMARK(BM_SchurParallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SchurReference)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
