#pragma once

#include "convexcd/minkowski.hpp"

#include <array>
#include <span>
#include <vector>

namespace convexcd {

/// |x| at or below this is treated as the origin.
inline constexpr double kZeroThreshold = 1e-12;

/// Raised when the sub-distance computation cannot produce a finite point.
class SimplexDegeneracy : public Error {
 public:
  SimplexDegeneracy() : Error("simplex degeneracy") {}
};

/// Active set of GJK: up to four points of D with barycentric weights.
struct Simplex {
  std::array<SupportPair, 4> pairs{};
  std::array<double, 4> lambda{};
  int rank = 0;

  static Simplex single(const SupportPair& s) {
    Simplex out;
    out.pairs[0] = s;
    out.lambda[0] = 1.0;
    out.rank = 1;
    return out;
  }

  /// Appends a vertex with zero weight. Throws Error when already full.
  void push(const SupportPair& s);

  Vec3 point() const;
  Vec3 witness1() const;
  Vec3 witness2() const;
};

/// Closest point to the origin of the hull of 1..4 points, expressed on the
/// smallest face containing it.
struct MinNormPoint {
  Vec3 point = Vec3::Zero();
  int rank = 0;
  std::array<int, 4> index{};       // into the input span, ascending
  std::array<double, 4> lambda{};   // all > 1e-14, summing to one
};

/// Signed-volume sub-distance routine. Accepts degenerate input (repeated,
/// collinear, coplanar points) and never returns weights on vertices that do
/// not support the result. Throws SimplexDegeneracy on non-finite output.
MinNormPoint min_norm_point(std::span<const Vec3> points);

struct Projection {
  Vec3 point = Vec3::Zero();
  Simplex reduced;
};

/// Projects the origin onto conv(simplex) and discards unused vertices.
Projection project_origin(const Simplex& simplex);

bool contains_origin(const Simplex& simplex);

struct BruteForceMinNorm {
  Vec3 point = Vec3::Zero();
  std::vector<double> lambda;
};

/// Exhaustive reference: solves the least-norm problem on the affine hull of
/// every affinely independent subset of at most four points and keeps the
/// best feasible one. At most eight input points.
BruteForceMinNorm brute_force_min_norm(std::span<const Vec3> points);

}  // namespace convexcd
