#pragma once

#include "convexcd/shapes.hpp"

#include <memory>
#include <optional>

namespace convexcd {

/// Two posed shapes. The pair owns the warm-start hints of its meshes; the
/// shapes themselves are shared and immutable, so copying a pair for a
/// concurrent query only duplicates poses and hints.
struct CollisionPair {
  std::shared_ptr<const ConvexShape> shape1;
  std::shared_ptr<const ConvexShape> shape2;
  Pose pose1;
  Pose pose2;
  std::optional<VertexIndex> hint1;
  std::optional<VertexIndex> hint2;

  CollisionPair() = default;
  /// Throws Error on a null shape or an invalid pose.
  CollisionPair(std::shared_ptr<const ConvexShape> s1, const Pose& p1,
                std::shared_ptr<const ConvexShape> s2, const Pose& p2);
};

/// A point of D = A1 - A2 with the witnesses it came from.
struct SupportPair {
  Vec3 w1 = Vec3::Zero();
  Vec3 w2 = Vec3::Zero();
  Vec3 p = Vec3::Zero();  // always w1 - w2
  std::optional<VertexIndex> hint1;
  std::optional<VertexIndex> hint2;

  static SupportPair from_witnesses(const Vec3& w1, const Vec3& w2) {
    SupportPair s;
    s.w1 = w1;
    s.w2 = w2;
    s.p = w1 - w2;
    return s;
  }
};

/// argmin over D of <x, d>, i.e. s_A1(d) - s_A2(-d). Updates the pair's hints.
SupportPair support_difference(CollisionPair& pair, const Vec3& d);

/// Frank-Wolfe gap <x, x - s> of 1/2 |x|^2 at x, with s the support of D in
/// direction x.
inline double duality_gap(const Vec3& x, const Vec3& s) {
  return x.dot(x - s);
}

}  // namespace convexcd
