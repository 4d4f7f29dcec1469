#include "aggregate.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <tuple>

namespace convexcd::cli {

namespace {

using BucketKey = std::tuple<QueryMode, double, Algorithm>;
using ProblemKey = std::tuple<QueryMode, double, std::size_t, std::size_t>;

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double stddev() const {
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / static_cast<double>(n) - m * m));
  }
};

}  // namespace

std::vector<BucketStats> aggregate(const std::vector<BenchRecord>& rows) {
  std::map<BucketKey, std::pair<Moments, Moments>> buckets;
  std::map<ProblemKey, std::map<Algorithm, const BenchRecord*>> problems;

  for (const BenchRecord& r : rows) {
    auto& [iters, time] = buckets[{r.mode, r.dist_target, r.algo}];
    iters.add(static_cast<double>(r.iters));
    time.add(r.time_ns);
    auto& slot = problems[{r.mode, r.dist_target, r.pair_id, r.pose_id}][r.algo];
    if (slot)
      throw Error("duplicate record for problem (" + std::to_string(r.pair_id) +
                  ", " + std::to_string(r.pose_id) + ") and algorithm " +
                  std::string(to_string(r.algo)));
    slot = &r;
  }

  std::map<BucketKey, std::pair<Moments, Moments>> ratios;
  for (const auto& [key, by_algo] : problems) {
    const auto gjk = by_algo.find(Algorithm::GJK);
    if (gjk == by_algo.end()) continue;
    for (const auto& [algo, rec] : by_algo) {
      auto& [ri, rt] = ratios[{std::get<0>(key), std::get<1>(key), algo}];
      if (rec->iters > 0)
        ri.add(static_cast<double>(gjk->second->iters) /
               static_cast<double>(rec->iters));
      if (rec->time_ns > 0.0) rt.add(gjk->second->time_ns / rec->time_ns);
    }
  }

  std::vector<BucketStats> out;
  for (const auto& [key, m] : buckets) {
    BucketStats s;
    std::tie(s.mode, s.dist_target, s.algo) = key;
    s.count = m.first.n;
    s.iters_mean = m.first.mean();
    s.iters_std = m.first.stddev();
    s.time_mean_ns = m.second.mean();
    s.time_std_ns = m.second.stddev();
    if (auto it = ratios.find(key); it != ratios.end()) {
      if (it->second.first.n) s.iter_ratio = it->second.first.mean();
      if (it->second.second.n) s.time_ratio = it->second.second.mean();
    }
    out.push_back(s);
  }
  return out;
}

void write_aggregate_csv(std::ostream& out, const std::vector<BucketStats>& stats) {
  const auto prec = out.precision(10);
  out << kAggregateHeader << '\n';
  for (const BucketStats& s : stats) {
    out << to_string(s.mode) << ',' << s.dist_target << ',' << to_string(s.algo)
        << ',' << s.count << ',' << s.iters_mean << ',' << s.iters_std << ','
        << s.time_mean_ns << ',' << s.time_std_ns << ',';
    if (s.iter_ratio) out << *s.iter_ratio;
    out << ',';
    if (s.time_ratio) out << *s.time_ratio;
    out << '\n';
  }
  out.precision(prec);
}

void print_aggregate_table(std::ostream& out,
                           const std::vector<BucketStats>& stats) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-9s %10s %-9s %7s %17s %21s %10s %10s\n",
                "mode", "dist", "algo", "count", "iters", "time_ns",
                "N_gjk/N", "T_gjk/T");
  out << buf;
  auto opt = [](const std::optional<double>& v) {
    char b[32];
    if (v)
      std::snprintf(b, sizeof b, "%.3f", *v);
    else
      std::snprintf(b, sizeof b, "-");
    return std::string(b);
  };
  for (const BucketStats& s : stats) {
    std::snprintf(buf, sizeof buf,
                  "%-9s %10g %-9s %7zu %8.2f +- %-6.2f %10.1f +- %-8.1f %10s %10s\n",
                  std::string(to_string(s.mode)).c_str(), s.dist_target,
                  std::string(to_string(s.algo)).c_str(), s.count, s.iters_mean,
                  s.iters_std, s.time_mean_ns, s.time_std_ns,
                  opt(s.iter_ratio).c_str(), opt(s.time_ratio).c_str());
    out << buf;
  }
}

}  // namespace convexcd::cli
