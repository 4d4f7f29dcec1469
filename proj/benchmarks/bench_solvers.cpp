#include <convexcd/benchgen.hpp>
#include <convexcd/solvers.hpp>

#include <benchmark/benchmark.h>

using namespace convexcd;

namespace {

std::vector<Problem> problems(ShapeFamily family, double target) {
  SuiteConfig c;
  c.seed = 5;
  c.n_pairs = 50;
  c.poses_per_pair = 2;
  c.distance_grid = {target};
  c.family = family;
  if (family == ShapeFamily::Meshes) c.mesh_paths = list_mesh_files(CONVEXCD_BENCH_MESH_DIR);
  return generate_suite(c);
}

// One iteration solves every problem of the bucket once.
void solve_all(benchmark::State& state, ShapeFamily family, Algorithm algo) {
  const double targets[] = {-0.05, 0.01, 1.0};
  const double target = targets[state.range(0)];
  const auto suite = problems(family, target);
  const SolverConfig cfg;
  std::size_t iterations = 0;
  for (auto _ : state)
    for (const Problem& p : suite) {
      const QueryResult r = solve(p.pair, cfg, algo);
      iterations += r.iterations;
      benchmark::DoNotOptimize(r.distance);
    }
  state.counters["queries"] = benchmark::Counter(
      static_cast<double>(suite.size()), benchmark::Counter::kIsIterationInvariantRate);
  state.counters["iters/query"] = static_cast<double>(iterations) /
                                  static_cast<double>(state.iterations() * suite.size());
  state.SetLabel("target " + std::to_string(target) + " m");
}

void BM_EllipsoidsGjk(benchmark::State& s) { solve_all(s, ShapeFamily::Ellipsoids, Algorithm::GJK); }
void BM_EllipsoidsNesterov(benchmark::State& s) {
  solve_all(s, ShapeFamily::Ellipsoids, Algorithm::NesterovGJK);
}
void BM_MeshesGjk(benchmark::State& s) { solve_all(s, ShapeFamily::Meshes, Algorithm::GJK); }
void BM_MeshesNesterov(benchmark::State& s) {
  solve_all(s, ShapeFamily::Meshes, Algorithm::NesterovGJK);
}

}  // namespace

BENCHMARK(BM_EllipsoidsGjk)->DenseRange(0, 2);
BENCHMARK(BM_EllipsoidsNesterov)->DenseRange(0, 2);
BENCHMARK(BM_MeshesGjk)->DenseRange(0, 2);
BENCHMARK(BM_MeshesNesterov)->DenseRange(0, 2);
