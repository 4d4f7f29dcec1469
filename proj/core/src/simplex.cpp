#include "convexcd/simplex.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace convexcd {

void Simplex::push(const SupportPair& s) {
  if (rank >= 4) throw Error("simplex already holds four vertices");
  pairs[rank] = s;
  lambda[rank] = 0.0;
  ++rank;
}

Vec3 Simplex::point() const {
  Vec3 x = Vec3::Zero();
  for (int i = 0; i < rank; ++i) x += lambda[i] * pairs[i].p;
  return x;
}

Vec3 Simplex::witness1() const {
  Vec3 x = Vec3::Zero();
  for (int i = 0; i < rank; ++i) x += lambda[i] * pairs[i].w1;
  return x;
}

Vec3 Simplex::witness2() const {
  Vec3 x = Vec3::Zero();
  for (int i = 0; i < rank; ++i) x += lambda[i] * pairs[i].w2;
  return x;
}

namespace {

constexpr double kMinWeight = 1e-14;
constexpr double kCoincident2 = 1e-28;  // squared separation of equal points
// Squared sine of the angle (or normalized volume) below which a face is
// handled through its boundary.
constexpr double kFlat2 = 1e-16;

struct Face {
  int n = 0;
  std::array<int, 4> idx{};
  std::array<double, 4> lam{};
  Vec3 point = Vec3::Zero();
  double norm2 = 0.0;
};

class SubDistance {
 public:
  explicit SubDistance(std::span<const Vec3> p) : p_(p) {}

  Face vertex(int i) const {
    Face f;
    f.n = 1;
    f.idx[0] = i;
    f.lam[0] = 1.0;
    f.point = p_[i];
    f.norm2 = f.point.squaredNorm();
    return f;
  }

  Face segment(int i, int j) const {
    const Vec3& a = p_[i];
    const Vec3& b = p_[j];
    const Vec3 t = b - a;
    const double tt = t.squaredNorm();
    if (tt <= kCoincident2) return closer(vertex(i), vertex(j));
    const double u = -a.dot(t) / tt;
    if (u <= 0.0) return vertex(i);
    if (u >= 1.0) return vertex(j);
    Face f;
    f.n = 2;
    f.idx = {i, j, 0, 0};
    f.lam = {1.0 - u, u, 0.0, 0.0};
    f.point = u < 0.5 ? Vec3(a + u * t) : Vec3(b - (1.0 - u) * t);
    f.norm2 = f.point.squaredNorm();
    return f;
  }

  Face triangle(int i, int j, int k) const {
    const Vec3& a = p_[i];
    const Vec3 e1 = p_[j] - a;
    const Vec3 e2 = p_[k] - a;
    const Vec3 n = e1.cross(e2);
    const double nn = n.squaredNorm();
    const bool flat = nn <= kFlat2 * e1.squaredNorm() * e2.squaredNorm() ||
                      nn <= kCoincident2 * kCoincident2;

    std::array<double, 3> lam{};
    if (!flat) {
      // Signed areas of the sub-triangles formed with the origin, measured
      // along the normal.
      lam[1] = e2.cross(a).dot(n) / nn;
      lam[2] = a.cross(e1).dot(n) / nn;
      lam[0] = 1.0 - lam[1] - lam[2];
      if (lam[0] > 0.0 && lam[1] > 0.0 && lam[2] > 0.0) {
        Face f;
        f.n = 3;
        f.idx = {i, j, k, 0};
        f.lam = {lam[0], lam[1], lam[2], 0.0};
        f.point = a + lam[1] * e1 + lam[2] * e2;
        f.norm2 = f.point.squaredNorm();
        return f;
      }
    }
    const std::array<int, 3> v{i, j, k};
    Face best;
    bool have = false;
    for (int m = 0; m < 3; ++m) {
      if (!flat && lam[m] > 0.0) continue;
      int u = v[(m + 1) % 3], w = v[(m + 2) % 3];
      if (u > w) std::swap(u, w);
      const Face f = segment(u, w);
      best = have ? closer(best, f) : f;
      have = true;
    }
    return best;
  }

  Face tetrahedron(int i, int j, int k, int l) const {
    const Vec3& a = p_[i];
    const Vec3 e1 = p_[j] - a;
    const Vec3 e2 = p_[k] - a;
    const Vec3 e3 = p_[l] - a;
    const double det = e1.dot(e2.cross(e3));
    const double scale =
        e1.squaredNorm() * e2.squaredNorm() * e3.squaredNorm();
    const bool flat = det * det <= kFlat2 * scale ||
                      std::abs(det) <= kCoincident2 * kCoincident2;

    std::array<double, 4> lam{};
    if (!flat) {
      const Vec3 o = -a;
      lam[1] = o.dot(e2.cross(e3)) / det;
      lam[2] = e1.dot(o.cross(e3)) / det;
      lam[3] = e1.dot(e2.cross(o)) / det;
      lam[0] = 1.0 - lam[1] - lam[2] - lam[3];
      if (lam[0] > 0.0 && lam[1] > 0.0 && lam[2] > 0.0 && lam[3] > 0.0) {
        Face f;
        f.n = 4;
        f.idx = {i, j, k, l};
        f.lam = lam;
        f.point = Vec3::Zero();
        f.norm2 = 0.0;
        return f;
      }
    }
    const std::array<int, 4> v{i, j, k, l};
    Face best;
    bool have = false;
    for (int m = 0; m < 4; ++m) {
      if (!flat && lam[m] > 0.0) continue;
      std::array<int, 3> t{};
      for (int q = 0, c = 0; q < 4; ++q)
        if (q != m) t[c++] = v[q];
      const Face f = triangle(t[0], t[1], t[2]);
      best = have ? closer(best, f) : f;
      have = true;
    }
    return best;
  }

  // Lower rank wins ties.
  static Face closer(const Face& a, const Face& b) {
    const double tol = 1e-15 * std::max(a.norm2, b.norm2);
    if (b.norm2 < a.norm2 - tol) return b;
    if (a.norm2 < b.norm2 - tol) return a;
    return b.n < a.n ? b : a;
  }

 private:
  std::span<const Vec3> p_;
};

}  // namespace

MinNormPoint min_norm_point(std::span<const Vec3> points) {
  if (points.empty() || points.size() > 4)
    throw Error("min_norm_point expects between one and four points");
  const SubDistance sub(points);
  const Face f = [&] {
    switch (points.size()) {
      case 1: return sub.vertex(0);
      case 2: return sub.segment(0, 1);
      case 3: return sub.triangle(0, 1, 2);
      default: return sub.tetrahedron(0, 1, 2, 3);
    }
  }();

  MinNormPoint out;
  double total = 0.0;
  for (int m = 0; m < f.n; ++m) {
    if (f.lam[m] <= kMinWeight) continue;
    out.index[out.rank] = f.idx[m];
    out.lambda[out.rank] = f.lam[m];
    total += f.lam[m];
    ++out.rank;
  }
  if (out.rank == 0 || !std::isfinite(total)) throw SimplexDegeneracy();

  // Keep input order among retained vertices.
  for (int a = 1; a < out.rank; ++a)
    for (int b = a; b > 0 && out.index[b - 1] > out.index[b]; --b) {
      std::swap(out.index[b - 1], out.index[b]);
      std::swap(out.lambda[b - 1], out.lambda[b]);
    }
  for (int m = 0; m < out.rank; ++m) out.lambda[m] /= total;

  if (f.n == 4 && out.rank == 4) {
    out.point = Vec3::Zero();
  } else if (out.rank == f.n) {
    out.point = f.point;
  } else {
    out.point = Vec3::Zero();
    for (int m = 0; m < out.rank; ++m)
      out.point += out.lambda[m] * points[out.index[m]];
  }
  if (!out.point.allFinite()) throw SimplexDegeneracy();
  return out;
}

Projection project_origin(const Simplex& simplex) {
  if (simplex.rank < 1 || simplex.rank > 4)
    throw Error("simplex rank must be between one and four");
  std::array<Vec3, 4> pts;
  for (int i = 0; i < simplex.rank; ++i) pts[i] = simplex.pairs[i].p;
  const MinNormPoint mn =
      min_norm_point(std::span<const Vec3>(pts.data(), simplex.rank));

  Projection out;
  out.point = mn.point;
  out.reduced.rank = mn.rank;
  for (int m = 0; m < mn.rank; ++m) {
    out.reduced.pairs[m] = simplex.pairs[mn.index[m]];
    out.reduced.lambda[m] = mn.lambda[m];
  }
  return out;
}

bool contains_origin(const Simplex& simplex) {
  return project_origin(simplex).point.norm() <= kZeroThreshold;
}

BruteForceMinNorm brute_force_min_norm(std::span<const Vec3> points) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw Error("brute_force_min_norm needs at least one point");
  if (n > 8) throw Error("brute_force_min_norm accepts at most eight points");

  BruteForceMinNorm best;
  double best_n2 = std::numeric_limits<double>::infinity();

  for (int size = 1; size <= std::min(n, 4); ++size) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != size) continue;
      std::vector<int> ids;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) ids.push_back(i);

      const Vec3& p0 = points[ids[0]];
      Eigen::VectorXd mu;
      if (size > 1) {
        Eigen::Matrix<double, 3, Eigen::Dynamic> E(3, size - 1);
        for (int c = 1; c < size; ++c) E.col(c - 1) = points[ids[c]] - p0;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(E, Eigen::ComputeThinU |
                                                     Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        if (!(sv(sv.size() - 1) > 1e-9 * sv(0))) continue;  // not independent
        mu = svd.solve(-p0);
      }
      std::vector<double> lam(n, 0.0);
      double rest = 1.0;
      for (int c = 1; c < size; ++c) {
        lam[ids[c]] = mu(c - 1);
        rest -= mu(c - 1);
      }
      lam[ids[0]] = rest;
      bool feasible = true;
      for (int i : ids) feasible = feasible && lam[i] >= -1e-12;
      if (!feasible) continue;

      Vec3 x = p0;
      for (int c = 1; c < size; ++c) x += mu(c - 1) * (points[ids[c]] - p0);
      const double n2 = x.squaredNorm();
      // Smaller subsets are visited first and keep ties.
      if (n2 < best_n2 * (1.0 - 1e-15)) {
        best_n2 = n2;
        best.point = x;
        best.lambda = std::move(lam);
      }
    }
  }
  return best;
}

}  // namespace convexcd
