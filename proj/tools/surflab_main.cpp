// surflab: builds surfaces from Weierstrass-type and Kenmotsu-type data,
// traces and classifies their singular curves, and verifies the curvature
// invariants along them.
//
//   surflab build      --config cfg.json [--resolution N] [--out mesh.obj]
//   surflab singular   --config cfg.json [--seed re,im]... [--out report.json]
//   surflab invariants --config cfg.json [--seed re,im] [--out table.csv]
//   surflab verify     --config cfg.json
//
// Exit codes: 0 success, 1 property/tracing failure, 2 usage or eval error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "surflab/surflab.hpp"

namespace {

using namespace surflab;

std::vector<Complex> parse_seeds(const std::vector<std::string>& raw) {
  std::vector<Complex> seeds;
  for (const std::string& s : raw) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
      throw SurfError(Errc::InvalidData, "seed must be re,im: '" + s + "'");
    try {
      seeds.emplace_back(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
    } catch (const std::exception&) {
      throw SurfError(Errc::InvalidData, "seed must be re,im: '" + s + "'");
    }
  }
  return seeds;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw SurfError(Errc::InvalidData, "cannot open output file '" + path + "'");
  return file;
}

void warn_validation(const Config& cfg) {
  const DataValidationReport r = validate_surface_data(cfg.data, 64);
  for (const auto& v : r.omega_zero_points)
    std::cerr << "warning: (1+|g|^2)^2 |omega|^2 vanishes near (" << v.real() << ", "
              << v.imag() << ")\n";
  if (r.g_modulus_one_identically)
    std::cerr << "warning: 1-|g|^2 vanishes identically on the sample grid\n";
}

int cmd_build(const std::string& config_path, int resolution_override,
              const std::string& out_path) {
  Config cfg = load_config(config_path);
  warn_validation(cfg);
  const int res = resolution_override > 0 ? resolution_override : cfg.resolution;
  if (res < 2) throw SurfError(Errc::InvalidData, "resolution must be >= 2");
  Mesh mesh = build_mesh(cfg, res);
  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  write_obj(os, mesh);
  return 0;
}

nlohmann::json sample_to_json(const CurveSample& s) {
  nlohmann::json j;
  j["t"] = s.t;
  j["z"] = {s.z.real(), s.z.imag()};
  j["type"] = singularity_name(s.type);
  return j;
}

int cmd_singular(const std::string& config_path, std::vector<Complex> seeds,
                 const std::string& out_path) {
  Config cfg = load_config(config_path);
  warn_validation(cfg);
  if (seeds.empty()) seeds = cfg.seeds;
  if (seeds.empty()) throw SurfError(Errc::InvalidData, "singular needs at least one --seed");

  bool any_failed = false;
  nlohmann::json curves = nlohmann::json::array();
  for (const Complex& seed : seeds) {
    nlohmann::json entry;
    entry["seed"] = {seed.real(), seed.imag()};
    try {
      SingularCurve c = trace_singular_curve(cfg.data, seed);
      entry["closed"] = c.closed;
      nlohmann::json samples = nlohmann::json::array();
      for (const CurveSample& s : c.samples) samples.push_back(sample_to_json(s));
      entry["samples"] = samples;

      // special points: zero crossings of Im(phi) and Re(phi) along the curve
      // (the strict conditions whose sign change switches the verdict)
      auto condition = [&](const Complex& z, bool imag_part) {
        PointJets pj = jets_at(cfg.data, z, 1);
        const Complex phi = phi_value(pj);
        return imag_part ? phi.imag() : phi.real();
      };
      std::vector<Complex> candidates;
      auto add_candidate = [&](Complex z) {
        for (const Complex& q : candidates)
          if (std::abs(q - z) < 1e-6) return;
        candidates.push_back(z);
      };
      const std::size_t pair_count = c.samples.size() - 1 + (c.closed ? 1 : 0);
      for (bool imag_part : {true, false}) {
        for (std::size_t k = 0; k < pair_count; ++k) {
          const Complex z_a = c.samples[k].z;
          const Complex z_b = c.samples[(k + 1) % c.samples.size()].z;
          double fa = condition(z_a, imag_part);
          double fb = condition(z_b, imag_part);
          if (std::abs(fa) < 1e-12) {
            add_candidate(z_a);
            continue;
          }
          if (std::abs(fb) < 1e-12 || fa * fb >= 0.0) continue;
          Complex za = z_a, zb = z_b;
          for (int it = 0; it < 80; ++it) {
            const Complex zm =
                detail::project_to_singular_set(cfg.data, 0.5 * (za + zb), Tolerances{});
            const double fm = condition(zm, imag_part);
            if (fa * fm <= 0.0) {
              zb = zm;
            } else {
              za = zm;
              fa = fm;
            }
          }
          add_candidate(detail::project_to_singular_set(cfg.data, 0.5 * (za + zb), Tolerances{}));
        }
      }
      nlohmann::json specials = nlohmann::json::array();
      for (const Complex& p : candidates)
        specials.push_back(to_json(classify(cfg.data, p)));
      entry["special_points"] = specials;
    } catch (const SurfError& e) {
      entry["error"] = e.what();
      any_failed = true;
    }
    curves.push_back(entry);
  }
  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  os << curves.dump(2) << "\n";
  return any_failed ? 1 : 0;
}

int cmd_invariants(const std::string& config_path, std::vector<Complex> seeds,
                   const std::string& out_path) {
  Config cfg = load_config(config_path);
  warn_validation(cfg);
  if (seeds.empty()) seeds = cfg.seeds;
  if (seeds.empty()) throw SurfError(Errc::InvalidData, "invariants needs a --seed");

  SingularCurve curve = trace_singular_curve(cfg.data, seeds.front());
  locus_curvature(curve, cfg.data);

  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  write_invariants_csv(os, curve);
  return 0;
}

int cmd_verify(const std::string& config_path) {
  Config cfg = load_config(config_path);
  warn_validation(cfg);
  const auto results = run_verification(cfg);
  bool all_pass = true;
  for (const PropertyResult& r : results) {
    if (!r.applicable) {
      std::cout << "[ -- ] " << r.name << ": not applicable (no singular samples)\n";
      continue;
    }
    std::cout << (r.pass ? "[ ok ] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    if (!r.pass)
      std::cout << " at (" << fmt17(r.location.real()) << ", " << fmt17(r.location.imag())
                << ")";
    std::cout << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surface construction, singularity classification, and invariants"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::vector<std::string> seed_args;
  int resolution = 0;

  auto* build = app.add_subcommand("build", "sample the surface into an OBJ mesh");
  build->add_option("--config", config_path, "surface description file")->required();
  build->add_option("--resolution", resolution, "lattice resolution override");
  build->add_option("--out", out_path, "output OBJ path (default stdout)");

  auto* singular = app.add_subcommand("singular", "trace and classify singular curves");
  singular->add_option("--config", config_path, "surface description file")->required();
  singular->add_option("--seed", seed_args, "tracer seed re,im (repeatable)");
  singular->add_option("--out", out_path, "output JSON path (default stdout)");

  auto* invariants = app.add_subcommand("invariants", "invariant table along a singular curve");
  invariants->add_option("--config", config_path, "surface description file")->required();
  invariants->add_option("--seed", seed_args, "tracer seed re,im");
  invariants->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the property suite");
  verify->add_option("--config", config_path, "surface description file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build(config_path, resolution, out_path);
    if (singular->parsed()) return cmd_singular(config_path, parse_seeds(seed_args), out_path);
    if (invariants->parsed())
      return cmd_invariants(config_path, parse_seeds(seed_args), out_path);
    if (verify->parsed()) return cmd_verify(config_path);
  } catch (const SurfError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
