#include "convexcd/solvers.hpp"

#include "convexcd/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace convexcd {

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  if (max_iterations && *max_iterations == 0)
    throw Error("max_iterations must be at least one");
}

std::size_t default_max_iterations(Algorithm algo) {
  return algo == Algorithm::FrankWolfe ? 50000 : 1000;
}

namespace {

const Vec3 kInitialDirection = Vec3::UnitX();

// Iterate of D tracked together with the witnesses that produce it.
struct Iterate {
  Vec3 x;
  Vec3 w1;
  Vec3 w2;
};

QueryResult finish(QueryResult res, Status status, const Iterate& it) {
  res.status = status;
  res.witness1 = it.w1;
  res.witness2 = it.w2;
  res.separation_vector = it.w1 - it.w2;
  res.distance = status == Status::Intersecting ? 0.0 : it.x.norm();
  return res;
}

// Gap termination. Separation is only claimed with a certificate: the
// support plane in direction x must leave the origin strictly outside.
Status converged_status(const Vec3& x, const Vec3& s) {
  return x.dot(s) > 0.0 ? Status::Separated : Status::Intersecting;
}

void record(QueryResult& res, std::size_t k, double gap, double norm_x,
            const Vec3& dir, bool momentum) {
  if (!res.trace) return;
  const double n = dir.norm();
  res.trace->push_back(
      {k, gap, norm_x, n > 0.0 ? Vec3(dir / n) : Vec3::Zero(), momentum});
}

Iterate iterate_of(const Simplex& s) {
  return {s.point(), s.witness1(), s.witness2()};
}

QueryResult run_gjk(const CollisionPair& input, const SolverConfig& config,
                    bool accelerate) {
  config.validate();
  const std::size_t max_iters = config.max_iterations.value_or(
      default_max_iterations(accelerate ? Algorithm::NesterovGJK
                                        : Algorithm::GJK));
  const bool boolean_mode = config.mode == QueryMode::Boolean;
  const bool normalize = normalizes_directions(input, config);

  CollisionPair pair = input;
  QueryResult res;
  if (config.record_trace) res.trace.emplace();

  Simplex simplex = Simplex::single(support_difference(pair, kInitialDirection));
  Vec3 x = simplex.pairs[0].p;
  Vec3 last_support = x;
  // d_{-1} is the direction that produced x_0.
  Vec3 last_direction = kInitialDirection;
  bool momentum = accelerate;

  for (std::size_t k = 0; k < max_iters; ++k) {
    res.iterations = k + 1;
    const double x_norm = x.norm();
    if (x_norm <= kZeroThreshold)
      return finish(std::move(res), Status::Intersecting, iterate_of(simplex));

    Vec3 dir = x;
    if (momentum) {
      const double delta = (static_cast<double>(k) + 1.0) /
                           (static_cast<double>(k) + 3.0);
      const Vec3 y = delta * x + (1.0 - delta) * last_support;
      const double y_norm = y.norm();
      Vec3 blended;
      if (normalize) {
        blended = delta * last_direction / last_direction.norm() +
                  (1.0 - delta) * y / y_norm;
      } else {
        blended = delta * last_direction + (1.0 - delta) * y;
      }
      if (y_norm > kZeroThreshold && blended.norm() > kZeroThreshold &&
          blended.allFinite()) {
        dir = blended;
      } else {
        momentum = false;
      }
    }

    const SupportPair s = support_difference(pair, dir);
    const double gap = duality_gap(x, s.p);

    if (res.trace) {
      double true_gap = gap;
      if (momentum) {
        CollisionPair scratch = pair;
        true_gap = duality_gap(x, support_difference(scratch, x).p);
      }
      record(res, k, true_gap, x_norm, dir, momentum);
    }

    if (boolean_mode && s.p.dot(dir) > 0.0)
      return finish(std::move(res), Status::Separated, iterate_of(simplex));

    if (gap <= config.epsilon) {
      if (momentum) {
        // Fixed point of the momentum sequence: continue as plain GJK.
        momentum = false;
        continue;
      }
      return finish(std::move(res), converged_status(x, s.p),
                    iterate_of(simplex));
    }

    Simplex candidate = simplex;
    candidate.push(s);
    Projection proj;
    try {
      proj = project_origin(candidate);
    } catch (const SimplexDegeneracy&) {
      return finish(std::move(res), Status::NumericalFailure,
                    iterate_of(simplex));
    }

    if (proj.point.norm() <= kZeroThreshold) {
      if (res.trace) record(res, k + 1, 0.0, 0.0, dir, momentum);
      return finish(std::move(res), Status::Intersecting,
                    iterate_of(proj.reduced));
    }

    const double old_norm2 = x.squaredNorm();
    const double new_norm2 = proj.point.squaredNorm();
    if (!momentum && new_norm2 >= old_norm2) {
      // Rounding floor reached before the gap test could pass.
      return finish(std::move(res), converged_status(x, s.p),
                    iterate_of(simplex));
    }
    if (new_norm2 <= old_norm2) {
      simplex = proj.reduced;
      x = proj.point;
    }
    last_support = s.p;
    last_direction = dir;
  }
  return finish(std::move(res), Status::MaxIterations, iterate_of(simplex));
}

}  // namespace

QueryResult solve_fw(const CollisionPair& input, const SolverConfig& config) {
  config.validate();
  const std::size_t max_iters =
      config.max_iterations.value_or(default_max_iterations(Algorithm::FrankWolfe));
  const bool boolean_mode = config.mode == QueryMode::Boolean;

  CollisionPair pair = input;
  QueryResult res;
  if (config.record_trace) res.trace.emplace();

  const SupportPair s0 = support_difference(pair, kInitialDirection);
  Iterate it{s0.p, s0.w1, s0.w2};

  for (std::size_t k = 0; k < max_iters; ++k) {
    res.iterations = k + 1;
    const double x_norm = it.x.norm();
    if (x_norm <= kZeroThreshold)
      return finish(std::move(res), Status::Intersecting, it);

    const SupportPair s = support_difference(pair, it.x);
    const double gap = duality_gap(it.x, s.p);
    record(res, k, gap, x_norm, it.x, false);

    if (boolean_mode && s.p.dot(it.x) > 0.0)
      return finish(std::move(res), Status::Separated, it);
    if (gap <= config.epsilon)
      return finish(std::move(res), converged_status(it.x, s.p), it);

    const Vec3 step = it.x - s.p;
    const double gamma = std::clamp(gap / step.squaredNorm(), 0.0, 1.0);
    it.x = (1.0 - gamma) * it.x + gamma * s.p;
    it.w1 = (1.0 - gamma) * it.w1 + gamma * s.w1;
    it.w2 = (1.0 - gamma) * it.w2 + gamma * s.w2;
  }
  return finish(std::move(res), Status::MaxIterations, it);
}

QueryResult solve_gjk(const CollisionPair& pair, const SolverConfig& config) {
  return run_gjk(pair, config, false);
}

QueryResult solve_nesterov_gjk(const CollisionPair& pair,
                               const SolverConfig& config) {
  return run_gjk(pair, config, true);
}

QueryResult solve(const CollisionPair& pair, const SolverConfig& config,
                  Algorithm algo) {
  switch (algo) {
    case Algorithm::FrankWolfe: return solve_fw(pair, config);
    case Algorithm::GJK: return solve_gjk(pair, config);
    case Algorithm::NesterovGJK: return solve_nesterov_gjk(pair, config);
  }
  throw Error("unknown algorithm");
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::FrankWolfe: return "fw";
    case Algorithm::GJK: return "gjk";
    case Algorithm::NesterovGJK: return "nesterov";
  }
  return "?";
}

std::string_view to_string(QueryMode mode) {
  return mode == QueryMode::Distance ? "distance" : "boolean";
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Separated: return "separated";
    case Status::Intersecting: return "intersecting";
    case Status::MaxIterations: return "max_iterations";
    case Status::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::Auto: return "auto";
    case Normalization::On: return "on";
    case Normalization::Off: return "off";
  }
  return "?";
}

Normalization parse_normalization(std::string_view name) {
  if (name == "auto") return Normalization::Auto;
  if (name == "on") return Normalization::On;
  if (name == "off") return Normalization::Off;
  throw Error("unknown normalization '" + std::string(name) + "'");
}

bool normalizes_directions(const CollisionPair& pair,
                           const SolverConfig& config) {
  switch (config.normalize_support_directions) {
    case Normalization::On: return true;
    case Normalization::Off: return false;
    case Normalization::Auto: break;
  }
  auto polytope = [](const ConvexShape& s) {
    return std::holds_alternative<Box>(s) || std::holds_alternative<ConvexMesh>(s);
  };
  return polytope(*pair.shape1) && polytope(*pair.shape2);
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "fw") return Algorithm::FrankWolfe;
  if (name == "gjk") return Algorithm::GJK;
  if (name == "nesterov") return Algorithm::NesterovGJK;
  throw Error("unknown algorithm '" + std::string(name) + "'");
}

QueryMode parse_mode(std::string_view name) {
  if (name == "distance") return QueryMode::Distance;
  if (name == "boolean") return QueryMode::Boolean;
  throw Error("unknown mode '" + std::string(name) + "'");
}

Status parse_status(std::string_view name) {
  for (Status s : {Status::Separated, Status::Intersecting,
                   Status::MaxIterations, Status::NumericalFailure})
    if (to_string(s) == name) return s;
  throw Error("unknown status '" + std::string(name) + "'");
}

void write_trace_csv(std::ostream& out, const std::vector<TraceStep>& trace) {
  const auto flags = out.flags();
  const auto prec = out.precision(17);
  out << "iter,gap,norm_x,dx,dy,dz,momentum\n";
  for (const TraceStep& t : trace) {
    out << t.iteration << ',' << t.duality_gap << ',' << t.norm_x << ','
        << t.support_direction[0] << ',' << t.support_direction[1] << ','
        << t.support_direction[2] << ',' << (t.momentum_active ? 1 : 0)
        << '\n';
  }
  out.precision(prec);
  out.flags(flags);
}

}  // namespace convexcd
