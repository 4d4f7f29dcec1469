#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace convexcd {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VertexIndex = std::uint32_t;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain three-term dot product. Every support routine over mesh vertices
/// goes through this function so that hill-climbing and the full scan
/// produce bitwise-identical values.
inline double dot3(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Rigid transform x -> rotation * x + translation.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static Pose identity() { return {}; }
  static Pose from_translation(const Vec3& t) { return {Mat3::Identity(), t}; }

  /// Orthonormal rotation with determinant +1, both within 1e-9.
  bool is_valid() const;

  Vec3 apply(const Vec3& local) const { return rotation * local + translation; }
  Vec3 to_local(const Vec3& world) const {
    return rotation.transpose() * (world - translation);
  }
};

struct SupportResult {
  Vec3 point = Vec3::Zero();
  std::optional<VertexIndex> vertex_index;
};

/// The set {x : x^T A x <= 1} for symmetric positive-definite A.
class Ellipsoid {
 public:
  /// Throws Error when A is not symmetric, not positive-definite, or has a
  /// condition number above kMaxCondition.
  explicit Ellipsoid(const Mat3& A);

  /// Ellipsoid with the given semi-axes, rotated by `axes` (columns are the
  /// principal directions).
  static Ellipsoid from_semi_axes(const Vec3& radii,
                                  const Mat3& axes = Mat3::Identity());

  const Mat3& matrix() const { return A_; }
  Vec3 support(const Vec3& d) const;

  static constexpr double kMaxCondition = 1e8;

 private:
  Mat3 A_;
  Eigen::LLT<Mat3> chol_;
};

class Box {
 public:
  explicit Box(const Vec3& half_extents);
  const Vec3& half_extents() const { return half_; }
  /// Componentwise -h_i * sgn(d_i) with sgn(0) = +1.
  Vec3 support(const Vec3& d) const;

 private:
  Vec3 half_;
};

class Sphere {
 public:
  explicit Sphere(double radius);
  double radius() const { return radius_; }
  Vec3 support(const Vec3& d) const;

 private:
  double radius_;
};

/// Vertex cloud plus vertex adjacency of a convex polytope. Optional
/// triangles (outward-oriented) are kept when the mesh comes from a hull.
class ConvexMesh {
 public:
  using Triangle = std::array<VertexIndex, 3>;

  /// Validates index ranges, adjacency symmetry and connectivity.
  ConvexMesh(std::vector<Vec3> vertices,
             std::vector<std::vector<VertexIndex>> neighbors,
             std::vector<Triangle> triangles = {});

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::vector<VertexIndex>>& neighbors() const {
    return neighbors_;
  }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  std::size_t size() const { return vertices_.size(); }

 private:
  std::vector<Vec3> vertices_;
  std::vector<std::vector<VertexIndex>> neighbors_;
  std::vector<Triangle> triangles_;
};

using ConvexShape = std::variant<Ellipsoid, Box, Sphere, ConvexMesh>;

/// Support point minimizing <x, d> over the shape (local frame). `hint` is
/// the hill-climbing start vertex for meshes and ignored otherwise.
SupportResult support(const ConvexShape& shape, const Vec3& d,
                      std::optional<VertexIndex> hint = std::nullopt);

/// Greedy walk over the vertex graph towards the minimum of <v, d>. Moves to
/// the best strictly improving neighbor until none exists.
SupportResult hill_climb(const ConvexMesh& mesh, const Vec3& d,
                         VertexIndex start);

/// Full scan over the vertices; ties resolve to the lowest index.
SupportResult brute_force_support(const ConvexMesh& mesh, const Vec3& d);

/// Support of rotation * shape + translation.
SupportResult posed_support(const ConvexShape& shape, const Pose& pose,
                            const Vec3& d,
                            std::optional<VertexIndex> hint = std::nullopt);

/// Membership test in the shape's local frame, with absolute slack `tol`
/// (meters). Meshes need their triangles.
bool contains(const ConvexShape& shape, const Vec3& local_point, double tol);

std::string shape_name(const ConvexShape& shape);

}  // namespace convexcd
