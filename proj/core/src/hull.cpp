#include "convexcd/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>

namespace convexcd {

namespace {

struct Face {
  std::array<std::uint32_t, 3> v;
  Vec3 normal;
  double offset;
  bool alive = true;
  bool visible = false;
  std::vector<std::uint32_t> outside;
};

class Quickhull {
 public:
  Quickhull(std::span<const Vec3> pts, double tol) : pts_(pts), tol_(tol) {}

  HullMesh run() {
    build_initial();
    // New faces are appended, so this sweep reaches every face once.
    for (std::size_t f = 0; f < faces_.size(); ++f)
      if (faces_[f].alive && !faces_[f].outside.empty())
        add_point(static_cast<std::uint32_t>(f));
    return extract();
  }

 private:
  static std::uint64_t key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  double dist(const Face& f, std::uint32_t p) const {
    return f.normal.dot(pts_[p]) - f.offset;
  }

  std::uint32_t make_face(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    Face f;
    f.v = {a, b, c};
    Vec3 n = (pts_[b] - pts_[a]).cross(pts_[c] - pts_[a]);
    const double len = n.norm();
    f.normal = len > 0.0 ? Vec3(n / len) : Vec3::Zero();
    f.offset = f.normal.dot(pts_[a]);
    const auto id = static_cast<std::uint32_t>(faces_.size());
    faces_.push_back(std::move(f));
    edges_[key(a, b)] = id;
    edges_[key(b, c)] = id;
    edges_[key(c, a)] = id;
    return id;
  }

  void build_initial() {
    const std::size_t n = pts_.size();
    if (n < 4) throw Error("convex hull needs at least four points");
    for (const Vec3& p : pts_)
      if (!p.allFinite()) throw Error("convex hull input is not finite");

    Vec3 lo = pts_[0], hi = pts_[0];
    std::array<std::uint32_t, 3> imin{}, imax{};
    for (std::uint32_t i = 0; i < n; ++i)
      for (int a = 0; a < 3; ++a) {
        if (pts_[i][a] < lo[a]) { lo[a] = pts_[i][a]; imin[a] = i; }
        if (pts_[i][a] > hi[a]) { hi[a] = pts_[i][a]; imax[a] = i; }
      }
    const Vec3 extent = hi - lo;
    eps_ = tol_ * std::max(extent.maxCoeff(),
                           std::max(lo.cwiseAbs().maxCoeff(),
                                    hi.cwiseAbs().maxCoeff()));
    int axis = 0;
    extent.maxCoeff(&axis);
    const std::uint32_t i0 = imin[axis], i1 = imax[axis];
    if (!(extent[axis] > eps_)) throw Error("point cloud is degenerate");

    const Vec3 line = (pts_[i1] - pts_[i0]).normalized();
    std::uint32_t i2 = i0;
    double best = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      const double d = (pts_[i] - pts_[i0]).cross(line).norm();
      if (d > best) { best = d; i2 = i; }
    }
    if (!(best > eps_)) throw Error("point cloud is collinear");

    const Vec3 plane =
        (pts_[i1] - pts_[i0]).cross(pts_[i2] - pts_[i0]).normalized();
    std::uint32_t i3 = i0;
    best = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      const double d = std::abs(plane.dot(pts_[i] - pts_[i0]));
      if (d > best) { best = d; i3 = i; }
    }
    if (!(best > eps_))
      throw Error("point cloud has fewer than four non-coplanar points");

    std::uint32_t a = i0, b = i1, c = i2;
    if (plane.dot(pts_[i3] - pts_[i0]) > 0.0) std::swap(b, c);
    make_face(a, b, c);
    make_face(a, i3, b);
    make_face(b, i3, c);
    make_face(c, i3, a);

    for (std::uint32_t i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      assign(i, 0);
    }
  }

  // Hands point p to the first face from `first` on that sees it.
  void assign(std::uint32_t p, std::size_t first) {
    for (std::size_t f = first; f < faces_.size(); ++f) {
      if (!faces_[f].alive) continue;
      if (dist(faces_[f], p) > eps_) {
        faces_[f].outside.push_back(p);
        return;
      }
    }
  }

  std::uint32_t neighbor(std::uint32_t a, std::uint32_t b) const {
    auto it = edges_.find(key(b, a));
    if (it == edges_.end()) throw Error("convex hull lost manifoldness");
    return it->second;
  }

  void add_point(std::uint32_t start) {
    Face& sf = faces_[start];
    std::uint32_t apex = sf.outside.front();
    double far = dist(sf, apex);
    for (std::uint32_t p : sf.outside) {
      const double d = dist(sf, p);
      if (d > far) { far = d; apex = p; }
    }

    std::vector<std::uint32_t> visible{start};
    faces_[start].visible = true;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> horizon;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const auto v = faces_[visible[q]].v;
      for (int e = 0; e < 3; ++e) {
        const std::uint32_t a = v[e], b = v[(e + 1) % 3];
        const std::uint32_t g = neighbor(a, b);
        if (faces_[g].visible) continue;
        if (dist(faces_[g], apex) > eps_) {
          faces_[g].visible = true;
          visible.push_back(g);
        }
      }
    }
    for (std::uint32_t f : visible) {
      const auto v = faces_[f].v;
      for (int e = 0; e < 3; ++e) {
        const std::uint32_t a = v[e], b = v[(e + 1) % 3];
        if (!faces_[neighbor(a, b)].visible) horizon.emplace_back(a, b);
      }
    }

    std::vector<std::uint32_t> orphans;
    for (std::uint32_t f : visible) {
      Face& face = faces_[f];
      for (std::uint32_t p : face.outside)
        if (p != apex) orphans.push_back(p);
      face.outside.clear();
      face.outside.shrink_to_fit();
      face.alive = false;
      for (int e = 0; e < 3; ++e) edges_.erase(key(face.v[e], face.v[(e + 1) % 3]));
    }

    const std::size_t first_new = faces_.size();
    for (const auto& [a, b] : horizon) make_face(a, b, apex);
    for (std::uint32_t p : orphans) assign(p, first_new);
  }

  HullMesh extract() const {
    HullMesh out;
    std::vector<std::int64_t> remap(pts_.size(), -1);
    for (const Face& f : faces_) {
      if (!f.alive) continue;
      ConvexMesh::Triangle t{};
      for (int e = 0; e < 3; ++e) {
        if (remap[f.v[e]] < 0) {
          remap[f.v[e]] = static_cast<std::int64_t>(out.vertices.size());
          out.vertices.push_back(pts_[f.v[e]]);
        }
        t[e] = static_cast<VertexIndex>(remap[f.v[e]]);
      }
      out.triangles.push_back(t);
    }
    return out;
  }

  std::span<const Vec3> pts_;
  double tol_;
  double eps_ = 0.0;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
};

}  // namespace

HullMesh convex_hull(std::span<const Vec3> points, double relative_tolerance) {
  return Quickhull(points, relative_tolerance).run();
}

std::vector<std::vector<VertexIndex>> edge_adjacency(
    std::size_t vertex_count, std::span<const ConvexMesh::Triangle> triangles) {
  std::vector<std::vector<VertexIndex>> adj(vertex_count);
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e) {
      adj[t[e]].push_back(t[(e + 1) % 3]);
      adj[t[(e + 1) % 3]].push_back(t[e]);
    }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

std::vector<std::vector<VertexIndex>> polytope_adjacency(
    std::span<const Vec3> vertices,
    std::span<const ConvexMesh::Triangle> triangles) {
  // Opposite vertex of each triangle across each directed edge.
  std::map<std::pair<VertexIndex, VertexIndex>, std::vector<VertexIndex>> opposite;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e) {
      const VertexIndex a = t[e], b = t[(e + 1) % 3];
      opposite[{std::min(a, b), std::max(a, b)}].push_back(t[(e + 2) % 3]);
    }
  std::vector<std::vector<VertexIndex>> adj(vertices.size());
  for (const auto& [edge, opp] : opposite) {
    if (opp.size() == 2) {
      const Vec3& a = vertices[edge.first];
      const Vec3 u = vertices[edge.second] - a;
      const Vec3 v = vertices[opp[0]] - a;
      const Vec3 w = vertices[opp[1]] - a;
      // Diagonal of a flat face: not an edge of the polytope.
      if (std::abs(u.cross(v).dot(w)) <= 1e-13 * u.norm() * v.norm() * w.norm())
        continue;
    }
    adj[edge.first].push_back(edge.second);
    adj[edge.second].push_back(edge.first);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

ConvexMesh make_convex_mesh(std::span<const Vec3> points) {
  HullMesh hull = convex_hull(points);
  auto adj = polytope_adjacency(hull.vertices, hull.triangles);
  return ConvexMesh(std::move(hull.vertices), std::move(adj),
                    std::move(hull.triangles));
}

}  // namespace convexcd
