#pragma once

#include <convexcd/shapes.hpp>

#include <memory>
#include <string>
#include <vector>

namespace convexcd::cli {

/// Parses "sphere:R", "box:HX,HY,HZ" (half extents), "cube:SIDE",
/// "ellipsoid:A,B,C" (semi-axes) or "mesh:PATH" (OBJ file).
/// Throws Error on anything else.
std::shared_ptr<const ConvexShape> parse_shape(const std::string& spec);

/// Parses "TX,TY,TZ" or "TX,TY,TZ,RX,RY,RZ" where (RX,RY,RZ) is a rotation
/// vector in radians.
Pose parse_pose(const std::string& spec);

/// Comma-separated list of finite numbers.
std::vector<double> parse_numbers(const std::string& text);

}  // namespace convexcd::cli
