#include <convexcd/benchgen.hpp>

#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

using namespace convexcd;

namespace {

const ConvexMesh& bundled(const std::string& name) {
  static std::map<std::string, ConvexMesh> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, load_convex_mesh(std::string(CONVEXCD_BENCH_MESH_DIR) + "/" + name))
             .first;
  return it->second;
}

// Precomputed so that timings exclude random number generation.
std::vector<Vec3> directions(std::uint64_t seed, double step) {
  Rng rng(seed);
  std::vector<Vec3> out(1024);
  Vec3 d = rng.on_sphere();
  for (Vec3& v : out) {
    d = step > 0 ? Vec3((d + step * rng.on_sphere()).normalized()) : rng.on_sphere();
    v = d;
  }
  return out;
}

const char* const kMeshes[] = {"cube.obj", "dodecahedron.obj", "capsule.obj",
                               "sphere_1000.obj", "ellipsoid_5000.obj"};

// Slowly rotating direction with the previous result as warm start, like a
// GJK query sequence.
void BM_HillClimbWarm(benchmark::State& state) {
  const ConvexMesh& mesh = bundled(kMeshes[state.range(0)]);
  const auto dirs = directions(1, 0.05);
  std::size_t i = 0;
  VertexIndex hint = 0;
  for (auto _ : state) {
    const SupportResult r = hill_climb(mesh, dirs[i++ & 1023], hint);
    hint = *r.vertex_index;
    benchmark::DoNotOptimize(r.point);
  }
  state.SetLabel(std::to_string(mesh.size()) + " vertices");
}

void BM_HillClimbCold(benchmark::State& state) {
  const ConvexMesh& mesh = bundled(kMeshes[state.range(0)]);
  const auto dirs = directions(2, 0.0);
  std::size_t i = 0;
  for (auto _ : state) {
    const SupportResult r = hill_climb(mesh, dirs[i++ & 1023], 0);
    benchmark::DoNotOptimize(r.point);
  }
  state.SetLabel(std::to_string(mesh.size()) + " vertices");
}

void BM_FullScan(benchmark::State& state) {
  const ConvexMesh& mesh = bundled(kMeshes[state.range(0)]);
  const auto dirs = directions(3, 0.0);
  std::size_t i = 0;
  for (auto _ : state) {
    const SupportResult r = brute_force_support(mesh, dirs[i++ & 1023]);
    benchmark::DoNotOptimize(r.point);
  }
  state.SetLabel(std::to_string(mesh.size()) + " vertices");
}

void BM_EllipsoidSupport(benchmark::State& state) {
  Rng rng(4);
  const ConvexShape e = sample_ellipsoid(rng);
  const auto dirs = directions(5, 0.0);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(support(e, dirs[i++ & 1023]).point);
}

}  // namespace

BENCHMARK(BM_HillClimbWarm)->DenseRange(0, 4);
BENCHMARK(BM_HillClimbCold)->DenseRange(0, 4);
BENCHMARK(BM_FullScan)->DenseRange(0, 4);
BENCHMARK(BM_EllipsoidSupport);
