#include "convexcd/benchgen.hpp"

#include "convexcd/hull.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace convexcd {

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw Error("cannot draw an index from an empty range");
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

double Rng::normal() {
  // Box-Muller; one value per call keeps the stream layout simple.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 Rng::in_ball(double radius) {
  for (;;) {
    const Vec3 p(uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    if (p.squaredNorm() <= 1.0) return radius * p;
  }
}

Vec3 Rng::on_sphere() {
  for (;;) {
    const Vec3 v(normal(), normal(), normal());
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

Mat3 random_rotation(Rng& rng) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double u3 = rng.uniform();
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  const double t2 = 2.0 * std::numbers::pi * u2;
  const double t3 = 2.0 * std::numbers::pi * u3;
  Eigen::Quaterniond q(b * std::cos(t3), a * std::sin(t2), a * std::cos(t2),
                       b * std::sin(t3));
  q.normalize();
  return q.toRotationMatrix();
}

Ellipsoid sample_ellipsoid(Rng& rng) {
  Vec3 radii;
  for (int i = 0; i < 3; ++i) radii[i] = rng.uniform(kMinSemiAxis, kMaxSemiAxis);
  return Ellipsoid::from_semi_axes(radii, random_rotation(rng));
}

Box sample_cube(Rng& rng) {
  const double half = 0.5 * rng.uniform(kMinSemiAxis, kMaxSemiAxis);
  return Box(Vec3::Constant(half));
}

Pose sample_pose(Rng& rng) {
  Pose p;
  p.rotation = random_rotation(rng);
  p.translation = rng.in_ball(kMaxPoseRadius);
  return p;
}

std::string_view to_string(ShapeFamily family) {
  switch (family) {
    case ShapeFamily::Ellipsoids: return "ellipsoids";
    case ShapeFamily::Cubes: return "cubes";
    case ShapeFamily::Meshes: return "meshes";
  }
  return "?";
}

ShapeFamily parse_family(std::string_view name) {
  if (name == "ellipsoids") return ShapeFamily::Ellipsoids;
  if (name == "cubes") return ShapeFamily::Cubes;
  if (name == "meshes") return ShapeFamily::Meshes;
  throw Error("unknown shape family '" + std::string(name) + "'");
}

void SuiteConfig::validate() const {
  if (n_pairs == 0 || poses_per_pair == 0)
    throw Error("suite counts must be at least one");
  if (distance_grid.empty()) throw Error("distance grid is empty");
  for (double t : distance_grid)
    if (!(t >= -0.1 && t <= 1.0))
      throw Error("distance targets must lie in [-0.1, 1.0] m");
  if (family == ShapeFamily::Meshes && mesh_paths.empty())
    throw Error("mesh suite needs at least one mesh file");
}

SolverConfig generation_solver_config() {
  SolverConfig cfg;
  cfg.epsilon = 1e-14;
  cfg.max_iterations = 1000;
  return cfg;
}

Problem set_separation(const CollisionPair& pair, double target) {
  constexpr double kMinAxis = 1e-9;
  constexpr double kTolerance = 1e-6;
  const SolverConfig cfg = generation_solver_config();

  const QueryResult now = solve_gjk(pair, cfg);
  if (now.status != Status::Separated || now.distance < kMinAxis)
    throw SeparationError("closest-point axis is degenerate");
  const Vec3 axis = now.separation_vector / now.separation_vector.norm();

  Problem out;
  out.pair = pair;
  out.pair.hint1.reset();
  out.pair.hint2.reset();
  out.pair.pose2.translation += axis * (now.distance - target);
  out.target_distance = target;

  if (target >= 0.0) {
    const QueryResult check = solve_gjk(out.pair, cfg);
    const double achieved =
        check.status == Status::Intersecting ? 0.0 : check.distance;
    const bool ok = (check.status == Status::Separated ||
                     (target == 0.0 && check.status == Status::Intersecting)) &&
                    std::abs(achieved - target) <= kTolerance;
    if (!ok) throw SeparationError("separation target not reached");
  }
  return out;
}

std::vector<Problem> generate_suite(const SuiteConfig& config) {
  config.validate();
  constexpr int kMaxAttempts = 1000;

  std::vector<std::shared_ptr<const ConvexShape>> meshes;
  if (config.family == ShapeFamily::Meshes)
    for (const auto& path : config.mesh_paths)
      meshes.push_back(std::make_shared<const ConvexShape>(load_convex_mesh(path)));

  Rng rng(config.seed);
  auto draw_shape = [&]() -> std::shared_ptr<const ConvexShape> {
    switch (config.family) {
      case ShapeFamily::Ellipsoids:
        return std::make_shared<const ConvexShape>(sample_ellipsoid(rng));
      case ShapeFamily::Cubes:
        return std::make_shared<const ConvexShape>(sample_cube(rng));
      case ShapeFamily::Meshes:
        return meshes[rng.index(meshes.size())];
    }
    throw Error("unknown shape family");
  };

  std::vector<Problem> problems;
  problems.reserve(config.n_pairs * config.poses_per_pair *
                   config.distance_grid.size());
  const SolverConfig measure = generation_solver_config();

  for (std::size_t pair_id = 0; pair_id < config.n_pairs; ++pair_id) {
    const auto s1 = draw_shape();
    const auto s2 = draw_shape();
    for (std::size_t pose_id = 0; pose_id < config.poses_per_pair; ++pose_id) {
      bool placed = false;
      for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
        const CollisionPair base(s1, Pose::identity(), s2, sample_pose(rng));
        if (solve_gjk(base, measure).status != Status::Separated) continue;
        std::vector<Problem> batch;
        try {
          for (double target : config.distance_grid) {
            Problem p = set_separation(base, target);
            p.pair_id = pair_id;
            p.pose_id = pose_id;
            batch.push_back(std::move(p));
          }
        } catch (const SeparationError&) {
          continue;
        }
        for (auto& p : batch) problems.push_back(std::move(p));
        placed = true;
      }
      if (!placed)
        throw Error("could not place a non-intersecting pose for pair " +
                    std::to_string(pair_id));
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------
// OBJ

namespace {

long parse_obj_index(const std::string& token, std::size_t vertex_count,
                     std::size_t line_no) {
  const std::string head = token.substr(0, token.find('/'));
  std::size_t used = 0;
  long idx = 0;
  try {
    idx = std::stol(head, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != head.size())
    throw Error("malformed face index '" + token + "' on line " +
                std::to_string(line_no));
  if (idx < 0) idx += static_cast<long>(vertex_count) + 1;
  if (idx < 1 || idx > static_cast<long>(vertex_count))
    throw Error("face index out of range on line " + std::to_string(line_no));
  return idx - 1;
}

}  // namespace

std::vector<Vec3> read_obj_vertices(std::istream& in) {
  std::vector<Vec3> verts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 v;
      if (!(ls >> v[0] >> v[1] >> v[2]) || !v.allFinite())
        throw Error("malformed vertex on line " + std::to_string(line_no));
      verts.push_back(v);
    } else if (tag == "f") {
      // Faces only need to reference existing vertices; the hull rebuilds
      // the surface.
      std::size_t corners = 0;
      std::string tok;
      while (ls >> tok) {
        parse_obj_index(tok, verts.size(), line_no);
        ++corners;
      }
      if (corners < 3)
        throw Error("face with fewer than three vertices on line " +
                    std::to_string(line_no));
    }
  }
  if (in.bad()) throw Error("error while reading OBJ stream");
  return verts;
}

std::vector<Vec3> read_obj_vertices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file '" + path.string() + "'");
  try {
    return read_obj_vertices(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

ConvexMesh load_convex_mesh(const std::filesystem::path& path) {
  const std::vector<Vec3> pts = read_obj_vertices(path);
  if (pts.size() < 4)
    throw Error(path.string() + ": a convex mesh needs at least four vertices");
  try {
    return make_convex_mesh(pts);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_obj(std::ostream& out, const ConvexMesh& mesh) {
  const auto prec = out.precision(17);
  for (const Vec3& v : mesh.vertices())
    out << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  for (const auto& t : mesh.triangles())
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  out.precision(prec);
}

std::vector<std::string> list_mesh_files(const std::filesystem::path& dir) {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".obj")
      out.push_back(entry.path().string());
  if (ec) throw Error("cannot list mesh directory '" + dir.string() + "'");
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace convexcd
