#pragma once

#include "convexcd/shapes.hpp"

#include <span>
#include <vector>

namespace convexcd {

/// Triangulated boundary of the convex hull of a point cloud. Only extreme
/// points survive; triangles are oriented with outward normals.
struct HullMesh {
  std::vector<Vec3> vertices;
  std::vector<ConvexMesh::Triangle> triangles;
};

/// Quickhull. Points closer than `relative_tolerance * extent` to a face
/// plane count as lying on it. Throws Error when the cloud does not span
/// three dimensions.
HullMesh convex_hull(std::span<const Vec3> points,
                     double relative_tolerance = 1e-10);

/// Vertex adjacency induced by the triangle edges.
std::vector<std::vector<VertexIndex>> edge_adjacency(
    std::size_t vertex_count, std::span<const ConvexMesh::Triangle> triangles);

/// Edges of the polytope itself: triangle edges minus the diagonals of flat
/// faces (both incident triangles coplanar).
std::vector<std::vector<VertexIndex>> polytope_adjacency(
    std::span<const Vec3> vertices,
    std::span<const ConvexMesh::Triangle> triangles);

/// Hull of `points` as a ConvexMesh carrying polytope edges and hull triangles.
ConvexMesh make_convex_mesh(std::span<const Vec3> points);

}  // namespace convexcd
