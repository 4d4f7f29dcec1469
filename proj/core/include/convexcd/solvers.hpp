#pragma once

#include "convexcd/minkowski.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace convexcd {

enum class Algorithm { FrankWolfe, GJK, NesterovGJK };
enum class QueryMode { Distance, Boolean };
enum class Status { Separated, Intersecting, MaxIterations, NumericalFailure };

/// Unit-normalization of the momentum directions of Nesterov GJK. Auto
/// normalizes only when both shapes are polytopes (boxes or meshes), whose
/// support maps jump between vertices; smooth shapes keep the raw recursion.
enum class Normalization { Auto, On, Off };

struct SolverConfig {
  double epsilon = 1e-8;
  /// Unset means the per-algorithm default (see default_max_iterations).
  std::optional<std::size_t> max_iterations;
  Normalization normalize_support_directions = Normalization::Auto;
  QueryMode mode = QueryMode::Distance;
  bool record_trace = false;

  /// Throws Error when epsilon <= 0 or max_iterations == 0.
  void validate() const;
};

std::size_t default_max_iterations(Algorithm algo);

/// One row per iterate x_k.
struct TraceStep {
  std::size_t iteration = 0;
  double duality_gap = 0.0;  // <x_k, x_k - s_D(x_k)>
  double norm_x = 0.0;
  Vec3 support_direction = Vec3::Zero();  // unit
  bool momentum_active = false;
};

struct QueryResult {
  Status status = Status::NumericalFailure;
  /// |x| at termination; 0 when intersecting. In Boolean mode an early
  /// separation exit reports the current iterate, an upper bound.
  double distance = 0.0;
  Vec3 separation_vector = Vec3::Zero();  // witness1 - witness2
  Vec3 witness1 = Vec3::Zero();
  Vec3 witness2 = Vec3::Zero();
  std::size_t iterations = 0;
  std::optional<std::vector<TraceStep>> trace;
};

/// Frank-Wolfe with exact line-search on 1/2 |x|^2 over D.
QueryResult solve_fw(const CollisionPair& pair, const SolverConfig& config);

/// GJK: Frank-Wolfe with a fully-corrective step on the active simplex.
QueryResult solve_gjk(const CollisionPair& pair, const SolverConfig& config);

/// GJK whose support directions follow a Nesterov momentum sequence. Falls
/// back to plain GJK (once) when the momentum direction stalls.
QueryResult solve_nesterov_gjk(const CollisionPair& pair,
                               const SolverConfig& config);

QueryResult solve(const CollisionPair& pair, const SolverConfig& config,
                  Algorithm algo);

std::string_view to_string(Algorithm algo);
std::string_view to_string(QueryMode mode);
std::string_view to_string(Status status);
std::string_view to_string(Normalization n);
/// Accepts "fw", "gjk" and "nesterov".
Algorithm parse_algorithm(std::string_view name);
QueryMode parse_mode(std::string_view name);
Status parse_status(std::string_view name);
/// Accepts "auto", "on" and "off".
Normalization parse_normalization(std::string_view name);

/// Whether `config` normalizes momentum directions on this pair.
bool normalizes_directions(const CollisionPair& pair, const SolverConfig& config);

/// Trace CSV with header `iter,gap,norm_x,dx,dy,dz,momentum`.
void write_trace_csv(std::ostream& out, const std::vector<TraceStep>& trace);

}  // namespace convexcd
