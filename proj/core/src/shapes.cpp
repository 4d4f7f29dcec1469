#include "convexcd/shapes.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <queue>

namespace convexcd {

namespace {

void require_direction(const Vec3& d) {
  const double n2 = d.squaredNorm();
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw Error("degenerate direction");
}

}  // namespace

bool Pose::is_valid() const {
  constexpr double kTol = 1e-9;
  const Mat3 gram = rotation.transpose() * rotation;
  if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > kTol) return false;
  if (std::abs(rotation.determinant() - 1.0) > kTol) return false;
  return translation.allFinite();
}

// ---------------------------------------------------------------------------
// Ellipsoid

Ellipsoid::Ellipsoid(const Mat3& A) {
  if (!A.allFinite()) throw Error("ellipsoid matrix has non-finite entries");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error("ellipsoid matrix is not symmetric");
  A_ = A;
  // Exact symmetry from here on.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) A_(j, i) = A_(i, j);

  Eigen::SelfAdjointEigenSolver<Mat3> eig(A_, Eigen::EigenvaluesOnly);
  const Vec3& ev = eig.eigenvalues();
  if (!(ev.minCoeff() > 0.0))
    throw Error("ellipsoid matrix is not positive-definite");
  if (ev.maxCoeff() / ev.minCoeff() > kMaxCondition)
    throw Error("ellipsoid matrix is too ill-conditioned");

  chol_.compute(A_);
  if (chol_.info() != Eigen::Success)
    throw Error("ellipsoid matrix Cholesky factorization failed");
}

Ellipsoid Ellipsoid::from_semi_axes(const Vec3& radii, const Mat3& axes) {
  if (!(radii.minCoeff() > 0.0)) throw Error("semi-axes must be positive");
  const Vec3 inv_sq = radii.cwiseProduct(radii).cwiseInverse();
  Mat3 A = axes * inv_sq.asDiagonal() * axes.transpose();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) A(j, i) = A(i, j);
  return Ellipsoid(A);
}

Vec3 Ellipsoid::support(const Vec3& d) const {
  // argmin <x, d> over x^T A x <= 1 is -A^{-1} d / sqrt(d^T A^{-1} d).
  const Vec3 u = chol_.solve(d);
  return -u / std::sqrt(d.dot(u));
}

// ---------------------------------------------------------------------------
// Box / Sphere

Box::Box(const Vec3& half_extents) : half_(half_extents) {
  if (!(half_.minCoeff() > 0.0) || !half_.allFinite())
    throw Error("box half-extents must be positive");
}

Vec3 Box::support(const Vec3& d) const {
  return {d[0] >= 0.0 ? -half_[0] : half_[0],
          d[1] >= 0.0 ? -half_[1] : half_[1],
          d[2] >= 0.0 ? -half_[2] : half_[2]};
}

Sphere::Sphere(double radius) : radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error("sphere radius must be positive");
}

Vec3 Sphere::support(const Vec3& d) const { return -radius_ * d / d.norm(); }

// ---------------------------------------------------------------------------
// ConvexMesh

ConvexMesh::ConvexMesh(std::vector<Vec3> vertices,
                       std::vector<std::vector<VertexIndex>> neighbors,
                       std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)),
      neighbors_(std::move(neighbors)),
      triangles_(std::move(triangles)) {
  const std::size_t n = vertices_.size();
  if (n == 0) throw Error("mesh has no vertices");
  if (neighbors_.size() != n)
    throw Error("mesh adjacency size does not match vertex count");
  for (const Vec3& v : vertices_)
    if (!v.allFinite()) throw Error("mesh vertex is not finite");

  std::vector<std::vector<VertexIndex>> sorted(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (VertexIndex j : neighbors_[i]) {
      if (j >= n) throw Error("mesh neighbor index out of range");
      if (j == i) throw Error("mesh vertex lists itself as a neighbor");
    }
    sorted[i] = neighbors_[i];
    std::sort(sorted[i].begin(), sorted[i].end());
  }
  for (std::size_t i = 0; i < n; ++i)
    for (VertexIndex j : sorted[i])
      if (!std::binary_search(sorted[j].begin(), sorted[j].end(),
                              static_cast<VertexIndex>(i)))
        throw Error("mesh adjacency is not symmetric");

  std::vector<char> seen(n, 0);
  std::queue<VertexIndex> todo;
  todo.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    const VertexIndex i = todo.front();
    todo.pop();
    for (VertexIndex j : neighbors_[i])
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        todo.push(j);
      }
  }
  if (reached != n) throw Error("mesh adjacency graph is not connected");

  for (const Triangle& t : triangles_)
    for (VertexIndex i : t)
      if (i >= n) throw Error("mesh triangle index out of range");
}

SupportResult hill_climb(const ConvexMesh& mesh, const Vec3& d,
                         VertexIndex start) {
  const auto& verts = mesh.vertices();
  const auto& adj = mesh.neighbors();
  if (start >= verts.size()) throw Error("hint vertex index out of range");

  VertexIndex current = start;
  double best = dot3(verts[current], d);
  for (;;) {
    VertexIndex next = current;
    for (VertexIndex j : adj[current]) {
      const double r = dot3(verts[j], d);
      if (r < best) {
        best = r;
        next = j;
      }
    }
    if (next == current) break;
    current = next;
  }
  return {verts[current], current};
}

SupportResult brute_force_support(const ConvexMesh& mesh, const Vec3& d) {
  const auto& verts = mesh.vertices();
  if (verts.empty()) throw Error("mesh has no vertices");
  VertexIndex best_i = 0;
  double best = dot3(verts[0], d);
  for (VertexIndex i = 1; i < verts.size(); ++i) {
    const double r = dot3(verts[i], d);
    if (r < best) {
      best = r;
      best_i = i;
    }
  }
  return {verts[best_i], best_i};
}

// ---------------------------------------------------------------------------
// Dispatch

SupportResult support(const ConvexShape& shape, const Vec3& d,
                      std::optional<VertexIndex> hint) {
  require_direction(d);
  return std::visit(
      [&](const auto& s) -> SupportResult {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexMesh>) {
          return hill_climb(s, d, hint.value_or(0));
        } else {
          return {s.support(d), std::nullopt};
        }
      },
      shape);
}

SupportResult posed_support(const ConvexShape& shape, const Pose& pose,
                            const Vec3& d, std::optional<VertexIndex> hint) {
  SupportResult r = support(shape, pose.rotation.transpose() * d, hint);
  r.point = pose.apply(r.point);
  return r;
}

bool contains(const ConvexShape& shape, const Vec3& q, double tol) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ellipsoid>) {
          const double rho = std::sqrt(q.dot(s.matrix() * q));
          // Radial overshoot bounds the Euclidean distance to the surface.
          return rho <= 1.0 || q.norm() * (1.0 - 1.0 / rho) <= tol;
        } else if constexpr (std::is_same_v<T, Box>) {
          return (q.cwiseAbs() - s.half_extents()).maxCoeff() <= tol;
        } else if constexpr (std::is_same_v<T, Sphere>) {
          return q.norm() <= s.radius() + tol;
        } else {
          if (s.triangles().empty())
            throw Error("mesh membership test needs hull triangles");
          const auto& v = s.vertices();
          for (const auto& t : s.triangles()) {
            Vec3 n = (v[t[1]] - v[t[0]]).cross(v[t[2]] - v[t[0]]);
            const double len = n.norm();
            if (len == 0.0) continue;
            n /= len;
            if (n.dot(q - v[t[0]]) > tol) return false;
          }
          return true;
        }
      },
      shape);
}

std::string shape_name(const ConvexShape& shape) {
  switch (shape.index()) {
    case 0: return "ellipsoid";
    case 1: return "box";
    case 2: return "sphere";
    default: return "mesh";
  }
}

}  // namespace convexcd
