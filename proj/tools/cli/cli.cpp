#include "cli.hpp"

#include "aggregate.hpp"
#include "bench.hpp"
#include "specs.hpp"

#include <convexcd/benchgen.hpp>
#include <convexcd/solvers.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>

#ifndef CONVEXCD_DEFAULT_MESH_DIR
#define CONVEXCD_DEFAULT_MESH_DIR "data/meshes"
#endif

namespace convexcd::cli {

std::vector<double> default_distance_grid() {
  return {-0.1, -0.05, -0.01, 0.001, 0.01, 0.1, 1.0};
}

namespace {

struct SolverFlags {
  double epsilon = 1e-8;
  std::size_t max_iters = 0;  // 0: per-algorithm default
  std::string mode = "distance";
  std::string normalize = "auto";

  void add_to(CLI::App& app) {
    app.add_option("--epsilon", epsilon, "Duality-gap tolerance")
        ->capture_default_str();
    app.add_option("--max-iters", max_iters,
                   "Iteration cap (default: 1000, or 50000 for fw)");
    app.add_option("--mode", mode, "distance or boolean")
        ->check(CLI::IsMember({"distance", "boolean"}))
        ->capture_default_str();
    app.add_option("--normalize", normalize,
                   "Momentum direction normalization: auto, on or off")
        ->check(CLI::IsMember({"auto", "on", "off"}))
        ->capture_default_str();
  }

  SolverConfig config() const {
    SolverConfig c;
    c.epsilon = epsilon;
    if (max_iters > 0) c.max_iterations = max_iters;
    c.mode = parse_mode(mode);
    c.normalize_support_directions = parse_normalization(normalize);
    c.validate();
    return c;
  }
};

struct SuiteFlags {
  std::uint64_t seed = 0;
  std::size_t pairs = 1000;
  std::size_t poses = 100;
  std::string dists;
  std::string family = "ellipsoids";
  std::string meshes = CONVEXCD_DEFAULT_MESH_DIR;

  void add_to(CLI::App& app) {
    app.add_option("--seed", seed, "Random seed")->capture_default_str();
    app.add_option("--pairs", pairs, "Number of shape pairs")->capture_default_str();
    app.add_option("--poses", poses, "Poses per pair")->capture_default_str();
    app.add_option("--dists", dists,
                   "Comma-separated signed target distances in m "
                   "(default -0.1,-0.05,-0.01,0.001,0.01,0.1,1)");
    app.add_option("--family", family, "ellipsoids, cubes or meshes")
        ->check(CLI::IsMember({"ellipsoids", "cubes", "meshes"}))
        ->capture_default_str();
    app.add_option("--meshes", meshes, "Directory of OBJ meshes (meshes family)")
        ->capture_default_str();
  }

  SuiteConfig config() const {
    SuiteConfig c;
    c.seed = seed;
    c.n_pairs = pairs;
    c.poses_per_pair = poses;
    c.distance_grid = dists.empty() ? default_distance_grid() : parse_numbers(dists);
    c.family = parse_family(family);
    if (c.family == ShapeFamily::Meshes) c.mesh_paths = list_mesh_files(meshes);
    c.validate();
    return c;
  }
};

struct PairFlags {
  std::string shape1;
  std::string shape2;
  std::string pose1 = "0,0,0";
  std::string pose2 = "0,0,0";

  void add_to(CLI::App& app, bool required) {
    auto* s1 = app.add_option("--shape1", shape1,
                              "sphere:R | box:HX,HY,HZ | cube:S | "
                              "ellipsoid:A,B,C | mesh:PATH");
    auto* s2 = app.add_option("--shape2", shape2, "Second shape, same syntax");
    if (required) {
      s1->required();
      s2->required();
    }
    app.add_option("--pose1", pose1, "TX,TY,TZ[,RX,RY,RZ] (rotation vector)")
        ->capture_default_str();
    app.add_option("--pose2", pose2, "TX,TY,TZ[,RX,RY,RZ] (rotation vector)")
        ->capture_default_str();
  }

  CollisionPair pair() const {
    return CollisionPair(parse_shape(shape1), parse_pose(pose1),
                         parse_shape(shape2), parse_pose(pose2));
  }
};

// Opens `path` for writing; "-" means `fallback`.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) throw Error("cannot open '" + path + "' for writing");
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }
  void close() {
    stream_->flush();
    if (file_.is_open()) {
      file_.close();
      if (!file_) throw Error("error while writing output");
    }
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string vec_str(const Vec3& v) {
  return fixed6(v[0]) + " " + fixed6(v[1]) + " " + fixed6(v[2]);
}

int exit_code(Status s) {
  switch (s) {
    case Status::Separated: return kExitSeparated;
    case Status::Intersecting: return kExitIntersecting;
    default: return kExitError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Convex collision detection and distance computation"};
  app.name("convexcd");
  app.require_subcommand(1);

  std::function<int()> action;

  // query -----------------------------------------------------------------
  auto* query = app.add_subcommand("query", "Solve a single collision problem");
  PairFlags q_pair;
  SolverFlags q_solver;
  std::string q_algo = "gjk";
  q_pair.add_to(*query, true);
  q_solver.add_to(*query);
  query->add_option("--algo", q_algo, "fw, gjk or nesterov")
      ->check(CLI::IsMember({"fw", "gjk", "nesterov"}))
      ->capture_default_str();
  query->callback([&] {
    action = [&] {
      const CollisionPair pair = q_pair.pair();
      const QueryResult r = solve(pair, q_solver.config(), parse_algorithm(q_algo));
      out << to_string(r.status);
      if (r.status != Status::Intersecting) out << ' ' << fixed6(r.distance);
      out << '\n'
          << "witness1 " << vec_str(r.witness1) << '\n'
          << "witness2 " << vec_str(r.witness2) << '\n'
          << "iterations " << r.iterations << '\n';
      return exit_code(r.status);
    };
  });

  // bench -----------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Benchmark solvers on a generated suite");
  SuiteFlags b_suite;
  SolverFlags b_solver;
  std::vector<std::string> b_algos;
  std::size_t b_reps = 100;
  std::string b_out = "-";
  std::string b_manifest;
  b_suite.add_to(*bench);
  b_solver.add_to(*bench);
  bench->add_option("--algo", b_algos, "Algorithm, repeatable (default gjk and nesterov)")
      ->check(CLI::IsMember({"fw", "gjk", "nesterov"}))
      ->delimiter(',');
  bench->add_option("--reps", b_reps, "Timed repetitions per problem")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--out", b_out, "CSV output path ('-' for stdout)")
      ->capture_default_str();
  bench->add_option("--manifest", b_manifest, "Also write the suite manifest here");
  bench->callback([&] {
    action = [&] {
      const SuiteConfig suite = b_suite.config();
      BenchOptions opt;
      opt.config = b_solver.config();
      opt.reps = b_reps;
      if (!b_algos.empty()) {
        opt.algos.clear();
        for (const auto& a : b_algos) opt.algos.push_back(parse_algorithm(a));
      }
      Output csv(b_out, out);
      const std::vector<Problem> problems = generate_suite(suite);
      if (!b_manifest.empty()) {
        Output m(b_manifest, out);
        write_manifest(m.stream(), make_manifest(suite, problems));
        m.close();
      }
      write_bench_csv(csv.stream(), run_bench(problems, opt));
      csv.close();
      return 0;
    };
  });

  // trace -----------------------------------------------------------------
  auto* trace = app.add_subcommand(
      "trace", "Per-iteration convergence trace of one problem as CSV");
  PairFlags t_pair;
  SolverFlags t_solver;
  std::string t_algo = "nesterov";
  std::uint64_t t_seed = 0;
  double t_dist = 0.01;
  std::string t_family = "ellipsoids";
  std::string t_meshes = CONVEXCD_DEFAULT_MESH_DIR;
  std::string t_out = "-";
  t_pair.add_to(*trace, false);
  t_solver.add_to(*trace);
  trace->add_option("--algo", t_algo, "fw, gjk or nesterov")
      ->check(CLI::IsMember({"fw", "gjk", "nesterov"}))
      ->capture_default_str();
  trace->add_option("--seed", t_seed, "Seed of a generated problem (no --shape1/2)")
      ->capture_default_str();
  trace->add_option("--dist", t_dist, "Target distance of a generated problem")
      ->capture_default_str();
  trace->add_option("--family", t_family, "ellipsoids, cubes or meshes")
      ->check(CLI::IsMember({"ellipsoids", "cubes", "meshes"}))
      ->capture_default_str();
  trace->add_option("--meshes", t_meshes, "Directory of OBJ meshes")
      ->capture_default_str();
  trace->add_option("--out", t_out, "CSV output path ('-' for stdout)")
      ->capture_default_str();
  trace->callback([&] {
    action = [&] {
      if (t_pair.shape1.empty() != t_pair.shape2.empty())
        throw Error("--shape1 and --shape2 must be given together");
      CollisionPair pair;
      if (!t_pair.shape1.empty()) {
        pair = t_pair.pair();
      } else {
        SuiteConfig suite;
        suite.seed = t_seed;
        suite.n_pairs = 1;
        suite.poses_per_pair = 1;
        suite.distance_grid = {t_dist};
        suite.family = parse_family(t_family);
        if (suite.family == ShapeFamily::Meshes)
          suite.mesh_paths = list_mesh_files(t_meshes);
        pair = generate_suite(suite).front().pair;
      }
      SolverConfig cfg = t_solver.config();
      cfg.record_trace = true;
      const QueryResult r = solve(pair, cfg, parse_algorithm(t_algo));
      Output csv(t_out, out);
      write_trace_csv(csv.stream(), *r.trace);
      csv.close();
      return exit_code(r.status);
    };
  });

  // aggregate -------------------------------------------------------------
  auto* agg = app.add_subcommand("aggregate", "Summarize a bench CSV per distance bucket");
  std::string a_in;
  std::string a_out;
  agg->add_option("csv", a_in, "Bench CSV file")->required();
  agg->add_option("--out", a_out, "Also write the summary as CSV");
  agg->callback([&] {
    action = [&] {
      std::ifstream in(a_in);
      if (!in) throw Error("cannot open '" + a_in + "'");
      const auto stats = aggregate(read_bench_csv(in));
      print_aggregate_table(out, stats);
      if (!a_out.empty()) {
        Output csv(a_out, out);
        write_aggregate_csv(csv.stream(), stats);
        csv.close();
      }
      return 0;
    };
  });

  // gen-suite / verify-suite ------------------------------------------------
  auto* gen = app.add_subcommand("gen-suite", "Generate a suite and write its manifest");
  SuiteFlags g_suite;
  std::string g_out = "-";
  g_suite.add_to(*gen);
  gen->add_option("--out", g_out, "Manifest path ('-' for stdout)")
      ->capture_default_str();
  gen->callback([&] {
    action = [&] {
      const SuiteConfig suite = g_suite.config();
      const auto problems = generate_suite(suite);
      Output m(g_out, out);
      write_manifest(m.stream(), make_manifest(suite, problems));
      m.close();
      return 0;
    };
  });

  auto* verify = app.add_subcommand(
      "verify-suite", "Regenerate a manifest's suite and compare it entry by entry");
  std::string v_in;
  verify->add_option("manifest", v_in, "Manifest file")->required();
  verify->callback([&] {
    action = [&] {
      std::ifstream in(v_in);
      if (!in) throw Error("cannot open '" + v_in + "'");
      if (verify_manifest(read_manifest(in))) {
        out << "suite matches manifest\n";
        return 0;
      }
      out << "suite differs from manifest\n";
      return kExitMismatch;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace convexcd::cli
