#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "surflab/surface.hpp"

namespace surflab {

// Surface description file:
// {
//   "kind": "maxface" | "cmc",
//   "g": "<expression>",
//   "omega": "<expression>",          // maxface: required; cmc: optional
//   "H": <non-zero real>,             // cmc only
//   "domain": {"shape": "disk", "center": [re, im], "radius": r}
//           | {"shape": "annulus", "center": [re, im], "r_in": a, "r_out": b}
//           | {"shape": "halfplane", "axis": "u>|u<|v>|v<", "bound": c}
//           | {"shape": "rectangle", "u_min": ., "u_max": ., "v_min": ., "v_max": .},
//   "resolution": 64,                 // optional sampling resolution
//   "seeds": [[re, im], ...],         // optional tracer seeds
//   "allow_multiply_connected": false,
//   "view": {"u_min": ., "u_max": ., "v_min": ., "v_max": .}  // halfplane builds
// }
struct Config {
  SurfaceData data;
  int resolution = 64;
  std::vector<Complex> seeds;
  std::optional<RectangleDomain> view;
};

namespace detail {

inline DomainSpec parse_domain(const nlohmann::json& j) {
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "disk") {
    const auto& c = j.at("center");
    return DomainSpec::disk(Complex(c.at(0).get<double>(), c.at(1).get<double>()),
                            j.at("radius").get<double>());
  }
  if (shape == "annulus") {
    const auto& c = j.at("center");
    return DomainSpec::annulus(Complex(c.at(0).get<double>(), c.at(1).get<double>()),
                               j.at("r_in").get<double>(), j.at("r_out").get<double>());
  }
  if (shape == "halfplane")
    return DomainSpec::halfplane(j.at("axis").get<std::string>(), j.at("bound").get<double>());
  if (shape == "rectangle")
    return DomainSpec::rectangle(j.at("u_min").get<double>(), j.at("u_max").get<double>(),
                                 j.at("v_min").get<double>(), j.at("v_max").get<double>());
  throw SurfError(Errc::InvalidData, "unknown domain shape '" + shape + "'");
}

}  // namespace detail

inline Config load_config_json(const nlohmann::json& j);

namespace detail {
inline Config load_config_json_unchecked(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  DomainSpec domain = detail::parse_domain(j.at("domain"));
  const bool allow_mc = j.value("allow_multiply_connected", false);

  Config cfg;
  if (kind == "maxface") {
    if (!j.contains("omega"))
      throw SurfError(Errc::InvalidData, "maxface config requires an omega expression");
    cfg.data = SurfaceData::maxface(parse(j.at("g").get<std::string>()),
                                    parse(j.at("omega").get<std::string>()), domain, allow_mc);
  } else if (kind == "cmc") {
    std::optional<Ast> omega;
    if (j.contains("omega")) omega = parse(j.at("omega").get<std::string>());
    cfg.data = SurfaceData::cmc(parse(j.at("g").get<std::string>()), j.at("H").get<double>(),
                                domain, std::move(omega));
  } else {
    throw SurfError(Errc::InvalidData, "kind must be 'maxface' or 'cmc'");
  }

  cfg.resolution = j.value("resolution", 64);
  if (cfg.resolution < 2) throw SurfError(Errc::InvalidData, "resolution must be >= 2");
  if (j.contains("seeds"))
    for (const auto& s : j.at("seeds"))
      cfg.seeds.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
  if (j.contains("view")) {
    const auto& v = j.at("view");
    cfg.view = RectangleDomain{v.at("u_min").get<double>(), v.at("u_max").get<double>(),
                               v.at("v_min").get<double>(), v.at("v_max").get<double>()};
  }
  return cfg;
}
}  // namespace detail

inline Config load_config_json(const nlohmann::json& j) {
  try {
    return detail::load_config_json_unchecked(j);
  } catch (const nlohmann::json::exception& e) {
    throw SurfError(Errc::InvalidData, std::string("config schema error: ") + e.what());
  }
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SurfError(Errc::InvalidData, "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SurfError(Errc::InvalidData, std::string("config is not valid JSON: ") + e.what());
  }
  return load_config_json(j);
}

}  // namespace surflab
