#pragma once

#include "bench.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace convexcd::cli {

/// Statistics of one (mode, target distance, algorithm) bucket. Standard
/// deviations are population deviations.
struct BucketStats {
  QueryMode mode = QueryMode::Distance;
  double dist_target = 0.0;
  Algorithm algo = Algorithm::GJK;
  std::size_t count = 0;
  double iters_mean = 0.0;
  double iters_std = 0.0;
  double time_mean_ns = 0.0;
  double time_std_ns = 0.0;
  /// Mean over problems of N_gjk / N_algo and T_gjk / T_algo, computed on
  /// problems that have a gjk record. Empty when there is none.
  std::optional<double> iter_ratio;
  std::optional<double> time_ratio;
};

/// Buckets ordered by mode, then target, then algorithm. Throws Error on two
/// records for the same problem and algorithm.
std::vector<BucketStats> aggregate(const std::vector<BenchRecord>& rows);

inline constexpr std::string_view kAggregateHeader =
    "mode,dist_target,algo,count,iters_mean,iters_std,time_mean_ns,"
    "time_std_ns,iter_ratio_gjk,time_ratio_gjk";

void write_aggregate_csv(std::ostream& out, const std::vector<BucketStats>& stats);
void print_aggregate_table(std::ostream& out,
                           const std::vector<BucketStats>& stats);

}  // namespace convexcd::cli
