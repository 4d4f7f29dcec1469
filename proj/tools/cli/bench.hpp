#pragma once

#include <convexcd/benchgen.hpp>
#include <convexcd/solvers.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace convexcd::cli {

inline constexpr std::string_view kBenchHeader =
    "pair_id,pose_id,algo,mode,dist_target,iters,time_ns,status,dist";

struct BenchRecord {
  std::size_t pair_id = 0;
  std::size_t pose_id = 0;
  Algorithm algo = Algorithm::GJK;
  QueryMode mode = QueryMode::Distance;
  double dist_target = 0.0;
  std::size_t iters = 0;
  double time_ns = 0.0;
  Status status = Status::NumericalFailure;
  double dist = 0.0;
};

struct BenchOptions {
  std::vector<Algorithm> algos{Algorithm::GJK, Algorithm::NesterovGJK};
  SolverConfig config;
  std::size_t reps = 100;
};

/// Number of samples kept by the timing protocol: the lowest 90%, at least 1.
std::size_t kept_samples(std::size_t reps);

/// Mean of the kept_samples(n) smallest values.
double low_mean(std::vector<double> samples);

/// Per problem and algorithm: iterations from one solve, time from `reps`
/// further solves (trace recording off).
std::vector<BenchRecord> run_bench(const std::vector<Problem>& problems,
                                   const BenchOptions& options);

/// Shortest decimal text that reads back to the same double.
std::string shortest(double v);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows);

/// Throws Error when the header or any row does not follow the schema.
std::vector<BenchRecord> read_bench_csv(std::istream& in);

}  // namespace convexcd::cli
