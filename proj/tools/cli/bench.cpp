#include "bench.hpp"

#include "specs.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace convexcd::cli {

namespace {
// Keeps timed solves observable to the optimizer.
volatile std::size_t g_sink = 0;
}  // namespace

std::size_t kept_samples(std::size_t reps) {
  return std::max<std::size_t>(1, reps * 9 / 10);
}

double low_mean(std::vector<double> samples) {
  if (samples.empty()) throw Error("no timing samples");
  const std::size_t keep = std::min(kept_samples(samples.size()), samples.size());
  std::nth_element(samples.begin(), samples.begin() + (keep - 1), samples.end());
  std::sort(samples.begin(), samples.begin() + keep);
  return std::accumulate(samples.begin(), samples.begin() + keep, 0.0) /
         static_cast<double>(keep);
}

std::vector<BenchRecord> run_bench(const std::vector<Problem>& problems,
                                   const BenchOptions& options) {
  if (options.reps == 0) throw Error("repetitions must be at least one");
  if (options.algos.empty()) throw Error("no algorithm selected");
  options.config.validate();

  SolverConfig timed = options.config;
  timed.record_trace = false;

  std::vector<BenchRecord> rows;
  rows.reserve(problems.size() * options.algos.size());
  std::vector<double> samples(options.reps);
  for (const Problem& p : problems) {
    for (Algorithm algo : options.algos) {
      const QueryResult r = solve(p.pair, options.config, algo);
      for (double& t : samples) {
        const auto t0 = std::chrono::steady_clock::now();
        g_sink = solve(p.pair, timed, algo).iterations;
        const auto t1 = std::chrono::steady_clock::now();
        t = static_cast<double>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
      }
      rows.push_back({p.pair_id, p.pose_id, algo, options.config.mode,
                      p.target_distance, r.iterations, low_mean(samples),
                      r.status, r.distance});
    }
  }
  return rows;
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& rows) {
  out << kBenchHeader << '\n';
  for (const BenchRecord& r : rows)
    out << r.pair_id << ',' << r.pose_id << ',' << to_string(r.algo) << ','
        << to_string(r.mode) << ',' << shortest(r.dist_target) << ','
        << r.iters << ',' << shortest(r.time_ns) << ','
        << to_string(r.status) << ',' << shortest(r.dist) << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::size_t parse_count(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s.front() == '-')
    throw Error("expected a non-negative integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& s) {
  const std::vector<double> v = parse_numbers(s);
  return v.front();
}

}  // namespace

std::vector<BenchRecord> read_bench_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("empty bench CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBenchHeader)
    throw Error("bench CSV header mismatch: expected '" +
                std::string(kBenchHeader) + "'");

  std::vector<BenchRecord> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    try {
      if (f.size() != 9) throw Error("expected 9 fields");
      BenchRecord r;
      r.pair_id = parse_count(f[0]);
      r.pose_id = parse_count(f[1]);
      r.algo = parse_algorithm(f[2]);
      r.mode = parse_mode(f[3]);
      r.dist_target = parse_real(f[4]);
      r.iters = parse_count(f[5]);
      r.time_ns = parse_real(f[6]);
      r.status = parse_status(f[7]);
      r.dist = parse_real(f[8]);
      rows.push_back(r);
    } catch (const Error& e) {
      throw Error("bench CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace convexcd::cli
