#include "aggregate.hpp"
#include "bench.hpp"
#include "cli.hpp"
#include "specs.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace convexcd;
using namespace convexcd::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("convexcd_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
          "_" + name);
}

BenchRecord record(std::size_t pair, Algorithm algo, double target, std::size_t iters,
                   double time) {
  BenchRecord r;
  r.pair_id = pair;
  r.algo = algo;
  r.dist_target = target;
  r.iters = iters;
  r.time_ns = time;
  r.status = Status::Separated;
  r.dist = target;
  return r;
}

std::vector<double> trace_gaps(const std::string& csv) {
  std::vector<double> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) rows.push_back(std::stod(line.substr(line.find(',') + 1)));
  return rows;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST(Query, SeparatedSpheres) {
  const CliRun r = run_cli({"query", "--shape1", "sphere:1", "--shape2", "sphere:1", "--pose2",
                         "3,0,0"});
  EXPECT_EQ(r.code, kExitSeparated);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "separated 1.000000");
  EXPECT_NE(r.out.find("witness1 "), std::string::npos);
  EXPECT_NE(r.out.find("iterations "), std::string::npos);
}

TEST(Query, IdenticalCubesIntersect) {
  const CliRun r = run_cli({"query", "--shape1", "cube:1", "--shape2", "cube:1"});
  EXPECT_EQ(r.code, kExitIntersecting);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "intersecting");
}

TEST(Query, EveryAlgorithmAndMode) {
  for (const char* algo : {"fw", "gjk", "nesterov"})
    for (const char* mode : {"distance", "boolean"}) {
      const CliRun r = run_cli({"query", "--shape1", "ellipsoid:0.3,0.2,0.1", "--shape2",
                             "sphere:0.2", "--pose2", "1,0.2,0,0.3,0.1,0", "--algo",
                             algo, "--mode", mode});
      EXPECT_EQ(r.code, kExitSeparated) << algo << ' ' << mode << r.err;
    }
}

TEST(Query, ErrorsExitTwo) {
  EXPECT_EQ(run_cli({"query", "--shape1", "mesh:/no/such.obj", "--shape2", "sphere:1"}).code,
            kExitError);
  EXPECT_EQ(run_cli({"query", "--shape1", "torus:1", "--shape2", "sphere:1"}).code, kExitError);
  EXPECT_EQ(run_cli({"query", "--shape1", "sphere:-1", "--shape2", "sphere:1"}).code,
            kExitError);
  EXPECT_EQ(run_cli({"query", "--shape1", "sphere:1"}).code, kExitError);
  EXPECT_EQ(run_cli({"query", "--shape1", "sphere:1", "--shape2", "sphere:1", "--epsilon",
                     "0"}).code,
            kExitError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitError);
  EXPECT_EQ(run_cli({}).code, kExitError);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Query, NonConvergedExitsTwo) {
  const CliRun r = run_cli({"query", "--shape1", "cube:1", "--shape2", "cube:1", "--pose2",
                         "0.3,0.2,1.01", "--algo", "fw", "--max-iters", "5"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_EQ(r.out.substr(0, r.out.find(' ')), "max_iterations");
}

TEST(Query, MeshFile) {
  const std::string cube = std::string(CONVEXCD_TEST_MESH_DIR) + "/cube.obj";
  ASSERT_TRUE(std::filesystem::exists(cube));
  const CliRun r = run_cli({"query", "--shape1", "mesh:" + cube, "--shape2", "sphere:0.5",
                         "--pose2", "0,0,5"});
  EXPECT_EQ(r.code, kExitSeparated) << r.err;
}

TEST(Specs, Parsing) {
  EXPECT_TRUE(std::holds_alternative<Sphere>(*parse_shape("sphere:2")));
  EXPECT_EQ(std::get<Box>(*parse_shape("cube:1")).half_extents(), Vec3::Constant(0.5));
  EXPECT_THROW(parse_shape("box:1,2"), Error);
  EXPECT_THROW(parse_shape("sphere"), Error);
  EXPECT_THROW(parse_numbers("1,nan"), Error);
  EXPECT_THROW(parse_numbers("1,,2"), Error);
  EXPECT_EQ(parse_numbers("-0.1,1e-3"), (std::vector<double>{-0.1, 1e-3}));
  const Pose p = parse_pose("1,2,3,0,0,1.5707963267948966");
  EXPECT_TRUE(p.is_valid());
  EXPECT_LT((p.apply(Vec3(1, 0, 0)) - Vec3(1, 3, 3)).norm(), 1e-12);
  EXPECT_THROW(parse_pose("1,2"), Error);
}

TEST(Bench, KeptSamples) {
  EXPECT_EQ(kept_samples(100), 90u);
  EXPECT_EQ(kept_samples(1), 1u);
  EXPECT_EQ(kept_samples(5), 4u);
  std::vector<double> samples;
  for (int i = 1; i <= 100; ++i) samples.push_back(i);
  EXPECT_DOUBLE_EQ(low_mean(samples), 45.5);
}

TEST(Bench, SmokeSuiteRowCount) {
  const CliRun r = run_cli({"bench", "--seed", "7", "--pairs", "5", "--poses", "1", "--dists",
                         "0.01,1", "--reps", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(r.out), 21u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), kBenchHeader);

  std::istringstream in(r.out);
  const auto rows = read_bench_csv(in);
  ASSERT_EQ(rows.size(), 20u);
  for (const BenchRecord& b : rows) {
    EXPECT_GE(b.iters, 1u);
    EXPECT_GT(b.time_ns, 0.0);
    EXPECT_EQ(b.status, Status::Separated);
    EXPECT_NEAR(b.dist, b.dist_target, 2e-5);
  }
}

TEST(Bench, UnwritableOutputExitsTwo) {
  EXPECT_EQ(run_cli({"bench", "--pairs", "1", "--poses", "1", "--dists", "0.1", "--reps", "1",
                     "--out", "/nonexistent/dir/out.csv"})
                .code,
            kExitError);
}

TEST(Bench, CsvRoundTripThroughAggregate) {
  const auto csv = temp_path("bench.csv");
  const auto summary = temp_path("summary.csv");
  ASSERT_EQ(run_cli({"bench", "--pairs", "3", "--poses", "2", "--reps", "2", "--out",
                     csv.string()})
                .code,
            0);
  const CliRun agg = run_cli({"aggregate", csv.string(), "--out", summary.string()});
  EXPECT_EQ(agg.code, 0) << agg.err;
  std::ifstream in(summary);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kAggregateHeader);
  // One bucket per default target and algorithm.
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, default_distance_grid().size() * 2);
  std::filesystem::remove(csv);
  std::filesystem::remove(summary);
}

TEST(Aggregate, HandWrittenCsv) {
  std::istringstream in(
      "pair_id,pose_id,algo,mode,dist_target,iters,time_ns,status,dist\n"
      "0,0,gjk,distance,0.01,10,100,separated,0.01\n"
      "0,0,nesterov,distance,0.01,5,80,separated,0.01\n"
      "1,0,gjk,distance,0.01,20,300,separated,0.01\n"
      "1,0,nesterov,distance,0.01,5,100,separated,0.01\n");
  const auto stats = aggregate(read_bench_csv(in));
  ASSERT_EQ(stats.size(), 2u);
  const BucketStats& g = stats[0].algo == Algorithm::GJK ? stats[0] : stats[1];
  const BucketStats& n = stats[0].algo == Algorithm::GJK ? stats[1] : stats[0];
  EXPECT_EQ(g.count, 2u);
  EXPECT_DOUBLE_EQ(g.iters_mean, 15.0);
  EXPECT_DOUBLE_EQ(g.iters_std, 5.0);
  EXPECT_DOUBLE_EQ(g.time_mean_ns, 200.0);
  EXPECT_DOUBLE_EQ(n.iters_mean, 5.0);
  EXPECT_DOUBLE_EQ(n.iters_std, 0.0);
  EXPECT_DOUBLE_EQ(n.time_mean_ns, 90.0);
  EXPECT_DOUBLE_EQ(*n.iter_ratio, (2.0 + 4.0) / 2);
  EXPECT_DOUBLE_EQ(*n.time_ratio, (1.25 + 3.0) / 2);
  EXPECT_DOUBLE_EQ(*g.iter_ratio, 1.0);
}

TEST(Aggregate, PerProblemRatioDiffersFromRatioOfMeans) {
  const std::vector<BenchRecord> rows{
      record(0, Algorithm::GJK, 0.1, 2, 10), record(0, Algorithm::NesterovGJK, 0.1, 1, 10),
      record(1, Algorithm::GJK, 0.1, 100, 10), record(1, Algorithm::NesterovGJK, 0.1, 100, 10)};
  const auto stats = aggregate(rows);
  const BucketStats& n = stats[0].algo == Algorithm::NesterovGJK ? stats[0] : stats[1];
  const double ratio_of_means = (2.0 + 100.0) / (1.0 + 100.0);
  const double per_problem = (2.0 / 1.0 + 100.0 / 100.0) / 2.0;
  ASSERT_NE(ratio_of_means, per_problem);
  EXPECT_DOUBLE_EQ(*n.iter_ratio, per_problem);
}

TEST(Aggregate, DuplicateRecordsThrow) {
  const std::vector<BenchRecord> rows{record(0, Algorithm::GJK, 0.1, 2, 10),
                                      record(0, Algorithm::GJK, 0.1, 3, 10)};
  EXPECT_THROW(aggregate(rows), Error);
}

TEST(Aggregate, SchemaMismatchExitsTwo) {
  const auto csv = temp_path("bad.csv");
  {
    std::ofstream f(csv);
    f << "pair,pose,algo\n0,0,gjk\n";
  }
  EXPECT_EQ(run_cli({"aggregate", csv.string()}).code, kExitError);
  {
    std::ofstream f(csv);
    f << kBenchHeader << "\n0,0,gjk,distance,0.1,abc,10,separated,0.1\n";
  }
  EXPECT_EQ(run_cli({"aggregate", csv.string()}).code, kExitError);
  std::filesystem::remove(csv);
  EXPECT_EQ(run_cli({"aggregate", "/no/such/file.csv"}).code, kExitError);
}

TEST(Trace, IntersectingEndsAtOrigin) {
  const CliRun r = run_cli({"trace", "--seed", "3", "--dist", "-0.05"});
  EXPECT_EQ(r.code, kExitIntersecting);
  std::istringstream in(r.out);
  std::string line, last;
  std::getline(in, line);
  EXPECT_EQ(line, "iter,gap,norm_x,dx,dy,dz,momentum");
  while (std::getline(in, line)) last = line;
  const std::size_t a = last.find(',');
  const std::size_t b = last.find(',', a + 1);
  const std::size_t c = last.find(',', b + 1);
  EXPECT_LE(std::stod(last.substr(b + 1, c - b - 1)), 1e-12);
}

TEST(Trace, NesterovShorterWhenCloseLongerWhenDistant) {
  std::vector<double> close_g, close_n, far_g, far_n;
  for (int seed = 0; seed < 20; ++seed) {
    const std::string s = std::to_string(seed);
    auto rows = [&](const char* algo, const char* dist) {
      const CliRun r = run_cli({"trace", "--seed", s, "--dist", dist, "--algo", algo});
      EXPECT_EQ(r.code, 0) << r.err;
      return static_cast<double>(trace_gaps(r.out).size());
    };
    close_g.push_back(rows("gjk", "0.01"));
    close_n.push_back(rows("nesterov", "0.01"));
    far_g.push_back(rows("gjk", "1"));
    far_n.push_back(rows("nesterov", "1"));
  }
  EXPECT_LT(median(close_n), median(close_g));
  EXPECT_GT(median(far_n), median(far_g));
}

TEST(GenSuite, ManifestVerifies) {
  const auto manifest = temp_path("manifest.json");
  ASSERT_EQ(run_cli({"gen-suite", "--pairs", "2", "--poses", "2", "--dists", "0.01,-0.05",
                     "--out", manifest.string()})
                .code,
            0);
  EXPECT_EQ(run_cli({"verify-suite", manifest.string()}).code, 0);
  std::filesystem::remove(manifest);
}
