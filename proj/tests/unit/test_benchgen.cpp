#include <convexcd/benchgen.hpp>

#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <sstream>

using namespace convexcd;
using convexcd::testutil::share;

namespace {

CollisionPair spheres_apart(double d) {
  return CollisionPair(share(Sphere(1.0)), Pose::identity(), share(Sphere(1.0)),
                       Pose::from_translation(Vec3(d, 0, 0)));
}

SuiteConfig small_config(ShapeFamily family = ShapeFamily::Ellipsoids) {
  SuiteConfig c;
  c.seed = 7;
  c.n_pairs = 2;
  c.poses_per_pair = 3;
  c.distance_grid = {0.01, 1.0};
  c.family = family;
  if (family == ShapeFamily::Meshes) c.mesh_paths = list_mesh_files(CONVEXCD_TEST_MESH_DIR);
  return c;
}

bool same_problem(const Problem& a, const Problem& b) {
  return a.pair_id == b.pair_id && a.pose_id == b.pose_id &&
         a.target_distance == b.target_distance && a.pair.pose1.rotation == b.pair.pose1.rotation &&
         a.pair.pose1.translation == b.pair.pose1.translation &&
         a.pair.pose2.rotation == b.pair.pose2.rotation &&
         a.pair.pose2.translation == b.pair.pose2.translation;
}

}  // namespace

TEST(Rng, SeededStreamsRepeat) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(Rng(42).next(), Rng(43).next());
}

TEST(SampleEllipsoid, DeterministicForSeed) {
  Rng a(42), b(42);
  EXPECT_EQ(sample_ellipsoid(a).matrix(), sample_ellipsoid(b).matrix());
}

TEST(SampleEllipsoid, EigenvaluesInRangeAndSymmetric) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Mat3 A = sample_ellipsoid(rng).matrix();
    EXPECT_EQ((A - A.transpose()).cwiseAbs().maxCoeff(), 0.0);
    const Vec3 ev = Eigen::SelfAdjointEigenSolver<Mat3>(A).eigenvalues();
    EXPECT_GE(ev.minCoeff(), 1.0 - 1e-9);
    EXPECT_LE(ev.maxCoeff(), 400.0 * (1 + 1e-9));
  }
}

TEST(SampleRotation, IsProperRotation) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Pose p = sample_pose(rng);
    EXPECT_TRUE(p.is_valid());
    EXPECT_LE(p.translation.norm(), kMaxPoseRadius);
  }
}

TEST(SetSeparation, SphereTargets) {
  const Problem far = set_separation(spheres_apart(4.0), 1.0);
  EXPECT_NEAR(far.pair.pose2.translation.x(), 3.0, 1e-9);
  EXPECT_EQ(far.target_distance, 1.0);
  const Problem overlap = set_separation(spheres_apart(4.0), -0.1);
  EXPECT_NEAR(overlap.pair.pose2.translation.x(), 1.9, 1e-9);
}

TEST(SetSeparation, EllipsoidTargetIsReached) {
  Rng rng(3);
  int done = 0;
  while (done < 20) {
    CollisionPair pair(share(sample_ellipsoid(rng)), sample_pose(rng),
                       share(sample_ellipsoid(rng)), sample_pose(rng));
    if (solve_gjk(pair, generation_solver_config()).status != Status::Separated) continue;
    const Problem p = set_separation(pair, 0.01);
    EXPECT_NEAR(solve_gjk(p.pair, generation_solver_config()).distance, 0.01, 1e-6);
    ++done;
  }
}

TEST(SetSeparation, TouchingPairIsRejected) {
  EXPECT_THROW(set_separation(spheres_apart(2.0), 0.5), SeparationError);
}

TEST(GenerateSuite, CountAndDeterminism) {
  const auto a = generate_suite(small_config());
  const auto b = generate_suite(small_config());
  ASSERT_EQ(a.size(), 12u);
  ASSERT_EQ(b.size(), 12u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(same_problem(a[i], b[i]));
  // Ordering: pair, pose, target.
  EXPECT_EQ(a[0].pair_id, 0u);
  EXPECT_EQ(a[1].target_distance, 1.0);
  EXPECT_EQ(a[2].pose_id, 1u);
  EXPECT_EQ(a[6].pair_id, 1u);
}

TEST(GenerateSuite, TargetsAreAchieved) {
  SuiteConfig c = small_config();
  c.n_pairs = 10;
  c.poses_per_pair = 2;
  c.distance_grid = {-0.1, 0.01, 1.0};
  for (const Problem& p : generate_suite(c)) {
    const QueryResult r = solve_gjk(p.pair, generation_solver_config());
    if (p.target_distance >= 0) {
      EXPECT_NEAR(r.distance, p.target_distance, 1e-6);
    } else {
      EXPECT_EQ(r.status, Status::Intersecting);
    }
  }
}

TEST(GenerateSuite, CubesAndMeshes) {
  for (ShapeFamily f : {ShapeFamily::Cubes, ShapeFamily::Meshes}) {
    const auto problems = generate_suite(small_config(f));
    ASSERT_EQ(problems.size(), 12u);
    for (const Problem& p : problems) {
      if (f == ShapeFamily::Meshes) {
        EXPECT_TRUE(std::holds_alternative<ConvexMesh>(*p.pair.shape1));
        EXPECT_TRUE(std::holds_alternative<ConvexMesh>(*p.pair.shape2));
      }
      EXPECT_NEAR(solve_gjk(p.pair, generation_solver_config()).distance,
                  p.target_distance, 1e-6);
    }
  }
}

TEST(SuiteConfig, Validation) {
  SuiteConfig c = small_config();
  c.distance_grid = {1.5};
  EXPECT_THROW(generate_suite(c), Error);
  c = small_config();
  c.n_pairs = 0;
  EXPECT_THROW(generate_suite(c), Error);
  c = small_config();
  c.distance_grid.clear();
  EXPECT_THROW(generate_suite(c), Error);
  c = small_config(ShapeFamily::Meshes);
  c.mesh_paths.clear();
  EXPECT_THROW(generate_suite(c), Error);
}

TEST(Family, Names) {
  for (ShapeFamily f : {ShapeFamily::Ellipsoids, ShapeFamily::Cubes, ShapeFamily::Meshes})
    EXPECT_EQ(parse_family(to_string(f)), f);
  EXPECT_THROW(parse_family("tori"), Error);
}

TEST(Manifest, RoundTripAndVerify) {
  const SuiteConfig c = small_config();
  const auto problems = generate_suite(c);
  std::stringstream buf;
  write_manifest(buf, make_manifest(c, problems));
  const Manifest back = read_manifest(buf);
  EXPECT_EQ(back.entries.size(), problems.size());
  EXPECT_EQ(back.config.seed, c.seed);
  EXPECT_EQ(back.config.distance_grid, c.distance_grid);
  EXPECT_TRUE(verify_manifest(back));

  Manifest tampered = back;
  tampered.entries[3].translation2.x() += 1e-3;
  EXPECT_FALSE(verify_manifest(tampered));

  std::istringstream junk("{not json");
  EXPECT_THROW(read_manifest(junk), Error);
}
