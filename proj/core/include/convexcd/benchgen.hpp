#pragma once

#include "convexcd/minkowski.hpp"
#include "convexcd/solvers.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace convexcd {

/// Deterministic random stream. Values depend only on the seed, not on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n);
  double normal();
  Vec3 in_ball(double radius);
  Vec3 on_sphere();

 private:
  std::mt19937_64 engine_;
};

/// Uniformly distributed rotation (unit quaternion construction).
Mat3 random_rotation(Rng& rng);

/// Semi-axes of sampled ellipsoids and cube half-sizes span these ranges.
inline constexpr double kMinSemiAxis = 0.05;
inline constexpr double kMaxSemiAxis = 1.0;
inline constexpr double kMaxPoseRadius = 3.0;

/// A = Q diag(1/a_i^2) Q^T with a_i uniform in [0.05, 1] m.
Ellipsoid sample_ellipsoid(Rng& rng);
/// Cube with side uniform in [0.05, 1] m.
Box sample_cube(Rng& rng);
/// Random rotation and translation uniform in a ball of radius 3 m.
Pose sample_pose(Rng& rng);

enum class ShapeFamily { Ellipsoids, Cubes, Meshes };
std::string_view to_string(ShapeFamily family);
ShapeFamily parse_family(std::string_view name);

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t n_pairs = 1000;
  std::size_t poses_per_pair = 100;
  std::vector<double> distance_grid;
  ShapeFamily family = ShapeFamily::Ellipsoids;
  std::vector<std::string> mesh_paths;  // Meshes family only

  /// Throws Error on empty counts, targets outside [-0.1, 1] or a mesh
  /// family without meshes.
  void validate() const;
};

struct Problem {
  CollisionPair pair;
  double target_distance = 0.0;
  std::size_t pair_id = 0;
  std::size_t pose_id = 0;
};

/// Raised when a pose cannot be moved to the requested separation; callers
/// resample.
class SeparationError : public Error {
 public:
  using Error::Error;
};

/// Solver settings used to measure and verify distances during generation.
SolverConfig generation_solver_config();

/// Translates shape 2 along the closest-point axis so that the signed
/// distance becomes `target`. For target >= 0 the result is re-solved and
/// must match within 1e-6.
Problem set_separation(const CollisionPair& pair, double target);

/// Bit-identical output for identical configs. Problems are ordered by pair,
/// then pose, then target.
std::vector<Problem> generate_suite(const SuiteConfig& config);

/// Vertices of a Wavefront OBJ file (v and f records; faces are only
/// validated). Throws Error on unreadable or malformed input.
std::vector<Vec3> read_obj_vertices(std::istream& in);
std::vector<Vec3> read_obj_vertices(const std::filesystem::path& path);

/// Hull of the file's vertices with hull-edge adjacency.
ConvexMesh load_convex_mesh(const std::filesystem::path& path);

void write_obj(std::ostream& out, const ConvexMesh& mesh);

/// *.obj files directly inside `dir`, sorted by name.
std::vector<std::string> list_mesh_files(const std::filesystem::path& dir);

/// Suite manifest: config plus one entry per problem.
struct Manifest {
  struct Entry {
    std::size_t pair_id = 0;
    std::size_t pose_id = 0;
    double target_distance = 0.0;
    Vec3 translation2 = Vec3::Zero();
  };
  SuiteConfig config;
  std::vector<Entry> entries;
};

Manifest make_manifest(const SuiteConfig& config,
                       const std::vector<Problem>& problems);
void write_manifest(std::ostream& out, const Manifest& manifest);
Manifest read_manifest(std::istream& in);
/// Regenerates the suite and compares it entry by entry.
bool verify_manifest(const Manifest& manifest);

}  // namespace convexcd
