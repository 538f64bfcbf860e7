#include "pillow/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pillow/error.hpp"

namespace pillow {

Json to_json(const Su2Elem& q) { return Json::array({q.w(), q.x(), q.y(), q.z()}); }

Su2Elem su2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::Malformed, "quaternion must be [w, x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

Json to_json(const PillowCurve& c) {
  Json pts = Json::array();
  for (const CylinderPoint& p : c.points()) pts.push_back(Json::array({p.alpha, p.beta}));
  Json j;
  j["label"] = c.label();
  j["closed"] = c.closed();
  j["points"] = std::move(pts);
  j["lifts"] = c.lifts();
  return j;
}

PillowCurve curve_from_json(const Json& j) {
  try {
    std::vector<CylinderPoint> pts;
    for (const Json& p : j.at("points")) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::Malformed, "point must be [alpha, beta]");
      pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    std::vector<int> lifts;
    if (j.contains("lifts")) {
      lifts = j.at("lifts").get<std::vector<int>>();
    } else {
      lifts.assign(pts.size(), 0);
    }
    return PillowCurve::from_stored(std::move(pts), std::move(lifts), j.value("closed", false),
                                    j.value("label", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Malformed, std::string("curve JSON: ") + e.what());
  }
}

Json to_json(const KnotPresentation& k) {
  Json j;
  j["label"] = k.label;
  j["generators"] = k.generators;
  j["relators"] = k.relators;
  j["meridian"] = k.meridian;
  j["longitude"] = k.longitude;
  return j;
}

KnotPresentation knot_from_json(const Json& j) {
  try {
    KnotPresentation k;
    k.label = j.value("label", std::string{"custom"});
    k.generators = j.at("generators").get<std::vector<std::string>>();
    k.relators = j.at("relators").get<std::vector<Word>>();
    k.meridian = j.at("meridian").get<Word>();
    k.longitude = j.at("longitude").get<Word>();
    const auto check = [&](const Word& w) {
      for (int g : w) {
        if (g == 0 || static_cast<std::size_t>(std::abs(g)) > k.generators.size()) {
          throw Error(ErrorKind::Malformed, "generator index " + std::to_string(g) + " out of range");
        }
      }
    };
    for (const Word& r : k.relators) check(r);
    check(k.meridian);
    check(k.longitude);
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Malformed, std::string("presentation JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

KnotPresentation read_knot_json(const std::string& path) { return knot_from_json(read_json_file(path)); }

PillowCurve read_curve_json(const std::string& path) { return curve_from_json(read_json_file(path)); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorKind::Io, "rename to '" + path + "' failed: " + ec.message());
}

}  // namespace pillow
