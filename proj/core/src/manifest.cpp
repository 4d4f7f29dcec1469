#include "convexcd/benchgen.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>

namespace convexcd {

namespace {

constexpr const char* kFormat = "convexcd-suite";
constexpr int kVersion = 1;

}  // namespace

Manifest make_manifest(const SuiteConfig& config,
                       const std::vector<Problem>& problems) {
  Manifest m;
  m.config = config;
  m.entries.reserve(problems.size());
  for (const Problem& p : problems)
    m.entries.push_back(
        {p.pair_id, p.pose_id, p.target_distance, p.pair.pose2.translation});
  return m;
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
  using nlohmann::json;
  const SuiteConfig& c = manifest.config;
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["seed"] = c.seed;
  j["n_pairs"] = c.n_pairs;
  j["poses_per_pair"] = c.poses_per_pair;
  j["distance_grid"] = c.distance_grid;
  j["family"] = std::string(to_string(c.family));
  j["mesh_paths"] = c.mesh_paths;
  json problems = json::array();
  for (const auto& e : manifest.entries)
    problems.push_back({{"pair_id", e.pair_id},
                        {"pose_id", e.pose_id},
                        {"target", e.target_distance},
                        {"translation2",
                         {e.translation2[0], e.translation2[1],
                          e.translation2[2]}}});
  j["problems"] = std::move(problems);
  out << j.dump(1) << '\n';
}

Manifest read_manifest(std::istream& in) {
  using nlohmann::json;
  Manifest m;
  try {
    const json j = json::parse(in);
    if (j.at("format").get<std::string>() != kFormat)
      throw Error("not a suite manifest");
    if (j.at("version").get<int>() != kVersion)
      throw Error("unsupported manifest version");
    SuiteConfig& c = m.config;
    c.seed = j.at("seed").get<std::uint64_t>();
    c.n_pairs = j.at("n_pairs").get<std::size_t>();
    c.poses_per_pair = j.at("poses_per_pair").get<std::size_t>();
    c.distance_grid = j.at("distance_grid").get<std::vector<double>>();
    c.family = parse_family(j.at("family").get<std::string>());
    c.mesh_paths = j.at("mesh_paths").get<std::vector<std::string>>();
    for (const json& e : j.at("problems")) {
      const auto t = e.at("translation2").get<std::vector<double>>();
      if (t.size() != 3) throw Error("manifest translation must have 3 entries");
      m.entries.push_back({e.at("pair_id").get<std::size_t>(),
                           e.at("pose_id").get<std::size_t>(),
                           e.at("target").get<double>(),
                           Vec3(t[0], t[1], t[2])});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed suite manifest: ") + e.what());
  }
  return m;
}

bool verify_manifest(const Manifest& manifest) {
  const std::vector<Problem> problems = generate_suite(manifest.config);
  if (problems.size() != manifest.entries.size()) return false;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto& e = manifest.entries[i];
    const auto& p = problems[i];
    if (p.pair_id != e.pair_id || p.pose_id != e.pose_id ||
        p.target_distance != e.target_distance ||
        p.pair.pose2.translation != e.translation2)
      return false;
  }
  return true;
}

}  // namespace convexcd
