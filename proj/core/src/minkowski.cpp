#include "convexcd/minkowski.hpp"

namespace convexcd {

CollisionPair::CollisionPair(std::shared_ptr<const ConvexShape> s1,
                             const Pose& p1,
                             std::shared_ptr<const ConvexShape> s2,
                             const Pose& p2)
    : shape1(std::move(s1)), shape2(std::move(s2)), pose1(p1), pose2(p2) {
  if (!shape1 || !shape2) throw Error("collision pair needs two shapes");
  if (!pose1.is_valid() || !pose2.is_valid())
    throw Error("collision pair pose is not a rigid transform");
}

SupportPair support_difference(CollisionPair& pair, const Vec3& d) {
  const SupportResult a = posed_support(*pair.shape1, pair.pose1, d, pair.hint1);
  const SupportResult b =
      posed_support(*pair.shape2, pair.pose2, -d, pair.hint2);
  SupportPair s = SupportPair::from_witnesses(a.point, b.point);
  s.hint1 = a.vertex_index;
  s.hint2 = b.vertex_index;
  if (a.vertex_index) pair.hint1 = a.vertex_index;
  if (b.vertex_index) pair.hint2 = b.vertex_index;
  return s;
}

}  // namespace convexcd
