#include "oracles.hpp"

#include <convexcd/hull.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace convexcd::oracle {

Vec3 closest_on_segment(const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp(-a.dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

Vec3 closest_on_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a;
  const Vec3 n = ab.cross(ac);
  if (n.squaredNorm() <= 1e-24 * ab.squaredNorm() * ac.squaredNorm()) {
    Vec3 best = closest_on_segment(a, b);
    for (const Vec3& q : {closest_on_segment(b, c), closest_on_segment(a, c)})
      if (q.squaredNorm() < best.squaredNorm()) best = q;
    return best;
  }
  // Region tests with p = origin.
  const Vec3 ap = -a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0 && d2 <= 0) return a;
  const Vec3 bp = -b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + d1 / (d1 - d3) * ab;
  const Vec3 cp = -c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + d2 / (d2 - d6) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
    return b + (d4 - d3) / ((d4 - d3) + (d5 - d6)) * (c - b);
  // Interior: orthogonal projection onto the plane.
  return n * (a.dot(n) / n.squaredNorm());
}

Vec3 closest_on_small_hull(std::span<const Vec3> p) {
  switch (p.size()) {
    case 1: return p[0];
    case 2: return closest_on_segment(p[0], p[1]);
    case 3: return closest_on_triangle(p[0], p[1], p[2]);
    case 4: break;
    default: return qp_min_norm(p);
  }
  const double vol = (p[1] - p[0]).dot((p[2] - p[0]).cross(p[3] - p[0]));
  if (std::abs(vol) > 1e-12) {
    // Origin inside iff it lies on the inner side of all four faces.
    bool inside = true;
    const int faces[4][4] = {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 3, 1}, {1, 2, 3, 0}};
    for (const auto& f : faces) {
      const Vec3 n = (p[f[1]] - p[f[0]]).cross(p[f[2]] - p[f[0]]);
      const double side_opp = n.dot(p[f[3]] - p[f[0]]);
      const double side_origin = n.dot(-p[f[0]]);
      if (side_origin * side_opp < 0.0) inside = false;
    }
    if (inside) return Vec3::Zero();
  }
  Vec3 best = closest_on_triangle(p[0], p[1], p[2]);
  for (const Vec3& q : {closest_on_triangle(p[0], p[1], p[3]),
                        closest_on_triangle(p[0], p[2], p[3]),
                        closest_on_triangle(p[1], p[2], p[3])})
    if (q.squaredNorm() < best.squaredNorm()) best = q;
  return best;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(0.0, x - theta);
  return v;
}

Vec3 qp_min_norm(std::span<const Vec3> points, int iterations) {
  const std::size_t n = points.size();
  Eigen::MatrixXd P(3, n);
  for (std::size_t i = 0; i < n; ++i) P.col(static_cast<Eigen::Index>(i)) = points[i];
  const Eigen::MatrixXd G = P.transpose() * P;
  const double L = std::max(G.diagonal().sum(), 1e-300);

  auto to_vec = [](const Eigen::VectorXd& x) {
    return std::vector<double>(x.data(), x.data() + x.size());
  };
  auto from_vec = [](const std::vector<double>& x) {
    return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()))
        .eval();
  };

  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / n);
  Eigen::VectorXd y = lambda;
  double t = 1.0;
  for (int k = 0; k < iterations; ++k) {
    const Eigen::VectorXd next =
        from_vec(project_to_simplex(to_vec(y - (G * y) / L)));
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - lambda);
    lambda = next;
    t = t_next;
  }
  return P * lambda;
}

double polytope_distance(std::span<const Vec3> a, std::span<const Vec3> b) {
  std::vector<Vec3> diff;
  diff.reserve(a.size() * b.size());
  for (const Vec3& p : a)
    for (const Vec3& q : b) diff.push_back(p - q);
  const HullMesh hull = convex_hull(diff);

  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : hull.triangles) {
    const Vec3& p0 = hull.vertices[t[0]];
    const Vec3& p1 = hull.vertices[t[1]];
    const Vec3& p2 = hull.vertices[t[2]];
    const Vec3 n = (p1 - p0).cross(p2 - p0);
    if (n.dot(-p0) > 0.0) inside = false;
    best = std::min(best, closest_on_triangle(p0, p1, p2).norm());
  }
  return inside ? 0.0 : best;
}

Vec3 ellipsoid_support(const Mat3& A, const Vec3& d) {
  // x = Q diag(1/sqrt(l)) u with |u| <= 1; <x, d> = <u, diag(1/sqrt(l)) Q^T d>.
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(A);
  const Vec3 scale = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  const Vec3 v = scale.cwiseProduct(eig.eigenvectors().transpose() * d);
  const Vec3 u = -v / v.norm();
  return eig.eigenvectors() * scale.cwiseProduct(u);
}

double min_dot(std::span<const Vec3> vertices, const Vec3& d) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& v : vertices)
    best = std::min(best, v[0] * d[0] + v[1] * d[1] + v[2] * d[2]);
  return best;
}

}  // namespace convexcd::oracle
