#include "specs.hpp"

#include <convexcd/benchgen.hpp>

#include <charconv>
#include <cmath>

namespace convexcd::cli {

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() ||
        !std::isfinite(v))
      throw Error("malformed number '" + item + "' in '" + text + "'");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

namespace {

std::vector<double> expect_numbers(const std::string& kind,
                                   const std::string& args, std::size_t n) {
  std::vector<double> v = parse_numbers(args);
  if (v.size() != n)
    throw Error(kind + " expects " + std::to_string(n) + " value(s), got '" +
                args + "'");
  return v;
}

}  // namespace

std::shared_ptr<const ConvexShape> parse_shape(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw Error("shape spec '" + spec + "' has no ':'");
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);

  if (kind == "sphere") {
    const auto v = expect_numbers(kind, args, 1);
    return std::make_shared<const ConvexShape>(Sphere(v[0]));
  }
  if (kind == "box") {
    const auto v = expect_numbers(kind, args, 3);
    return std::make_shared<const ConvexShape>(Box(Vec3(v[0], v[1], v[2])));
  }
  if (kind == "cube") {
    const auto v = expect_numbers(kind, args, 1);
    return std::make_shared<const ConvexShape>(Box(Vec3::Constant(0.5 * v[0])));
  }
  if (kind == "ellipsoid") {
    const auto v = expect_numbers(kind, args, 3);
    return std::make_shared<const ConvexShape>(
        Ellipsoid::from_semi_axes(Vec3(v[0], v[1], v[2])));
  }
  if (kind == "mesh") {
    if (args.empty()) throw Error("mesh spec needs a file path");
    return std::make_shared<const ConvexShape>(load_convex_mesh(args));
  }
  throw Error("unknown shape kind '" + kind + "'");
}

Pose parse_pose(const std::string& spec) {
  const std::vector<double> v = parse_numbers(spec);
  if (v.size() != 3 && v.size() != 6)
    throw Error("pose '" + spec + "' needs 3 or 6 values");
  Pose p = Pose::from_translation(Vec3(v[0], v[1], v[2]));
  if (v.size() == 6) {
    const Vec3 r(v[3], v[4], v[5]);
    const double angle = r.norm();
    if (angle > 0.0)
      p.rotation = Eigen::AngleAxisd(angle, r / angle).toRotationMatrix();
  }
  return p;
}

}  // namespace convexcd::cli
