#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "surflab/config.hpp"
#include "surflab/mesh.hpp"
#include "surflab/verify.hpp"

using namespace surflab;

namespace {

std::string config_path(const char* name) {
  return std::string(SURFLAB_SOURCE_DIR) + "/configs/" + name;
}

}  // namespace

TEST_CASE("shipped configs load and validate") {
  for (const char* name : {"enneper.json", "circle.json", "butterfly.json", "s1minus.json",
                           "cmc_tanh.json", "cmc_enneper.json"}) {
    INFO(name);
    Config cfg = load_config(config_path(name));
    CHECK(cfg.resolution >= 2);
  }
  Config enneper = load_config(config_path("enneper.json"));
  CHECK(enneper.data.kind() == Pipeline::Maxface);
  CHECK(enneper.resolution == 64);
  REQUIRE(enneper.seeds.size() == 1);
  CHECK(std::abs(enneper.seeds[0] - Complex(1.1, 0.0)) < 1e-15);

  Config tanh_cfg = load_config(config_path("cmc_tanh.json"));
  CHECK(tanh_cfg.data.kind() == Pipeline::Cmc);
  CHECK(tanh_cfg.data.H() == 1.0);
  CHECK(tanh_cfg.data.omega_mode() == OmegaMode::Formula);
}

TEST_CASE("config errors are reported") {
  CHECK_THROWS_AS(load_config("/nonexistent/path.json"), SurfError);
  CHECK_THROWS_AS(load_config_json(nlohmann::json{{"kind", "maxface"}}), SurfError);
  nlohmann::json bad = {
      {"kind", "cmc"},
      {"g", "z"},
      {"H", 0.0},
      {"domain", {{"shape", "disk"}, {"center", {0, 0}}, {"radius", 1.0}}},
  };
  CHECK_THROWS_AS(load_config_json(bad), SurfError);
}

TEST_CASE("Enneper mesh: lattice, attributes, and the z=1 vertex") {
  Config cfg = load_config(config_path("enneper.json"));
  Mesh mesh = build_mesh(cfg, 64);

  // polar lattice: center + 63 rings x 64 sectors, plus polyline vertices
  const int grid_vertices = 1 + 63 * 64;
  CHECK(static_cast<int>(mesh.vertices.size()) > grid_vertices);
  CHECK(mesh.attributes.size() == mesh.vertices.size());
  CHECK(mesh.faces.size() == 64u + 2u * 62u * 64u);

  // vertex at lattice point z = 1 (ring 42, sector 0): f = (-1, 4/3, 0)
  const int idx = 1 + 41 * 64;
  CHECK(std::abs(mesh.vertices[idx].x + 1.0) < 1e-10);
  CHECK(std::abs(mesh.vertices[idx].y - 4.0 / 3.0) < 1e-10);
  CHECK(std::abs(mesh.vertices[idx].z) < 1e-10);
  CHECK(std::abs(mesh.attributes[idx].lambda_hat) < 1e-12);
  CHECK(std::isnan(mesh.attributes[idx].gauss_L));  // omitted on the singular set
  CHECK(std::abs(mesh.attributes[idx].gauss_E + 1.0 / 16.0) < 1e-12);

  // face indices in range and non-degenerate
  for (const auto& f : mesh.faces) {
    for (int c : f) {
      CHECK(c >= 0);
      CHECK(c < static_cast<int>(mesh.vertices.size()));
    }
    CHECK(f[0] != f[1]);
    CHECK(f[1] != f[2]);
    CHECK(f[0] != f[2]);
  }

  // singular polyline vertices lie on the singular set
  REQUIRE(mesh.polylines.size() == 1);
  CHECK(mesh.polylines[0].size() > 100);
  for (int idx2 : mesh.polylines[0]) {
    CHECK(idx2 >= 0);
    CHECK(idx2 < static_cast<int>(mesh.vertices.size()));
    CHECK(std::abs(mesh.attributes[idx2].lambda_hat) < 1e-8);
  }
}

TEST_CASE("obj output is deterministic and carries v/f/l records") {
  Config cfg = load_config(config_path("circle.json"));
  Mesh mesh = build_mesh(cfg, 24);
  std::ostringstream a, b;
  write_obj(a, mesh);
  write_obj(b, build_mesh(cfg, 24));
  CHECK(a.str() == b.str());
  CHECK(a.str().find("\nv ") != std::string::npos);
  CHECK(a.str().find("\nf ") != std::string::npos);
  CHECK(a.str().find("\nl ") != std::string::npos);
  CHECK(a.str().find("# vattr 1 ") != std::string::npos);
}

TEST_CASE("cmc tanh mesh has no singular polylines") {
  Config cfg = load_config(config_path("cmc_tanh.json"));
  Mesh mesh = build_mesh(cfg, 16);
  CHECK(mesh.polylines.empty());
  CHECK(mesh.vertices.size() == 1u + 15u * 16u);
}

TEST_CASE("rectangle-domain mesh builds") {
  nlohmann::json j = {
      {"kind", "maxface"},
      {"g", "z"},
      {"omega", "1"},
      {"domain",
       {{"shape", "rectangle"}, {"u_min", -0.5}, {"u_max", 0.5}, {"v_min", -0.5},
        {"v_max", 0.5}}},
  };
  Config cfg = load_config_json(j);
  Mesh mesh = build_mesh(cfg, 9);
  CHECK(mesh.vertices.size() == 81u);
  CHECK(mesh.faces.size() == 2u * 8u * 8u);
}

TEST_CASE("halfplane mesh requires a view rectangle") {
  nlohmann::json j = {
      {"kind", "maxface"},
      {"g", "z"},
      {"omega", "1"},
      {"domain", {{"shape", "halfplane"}, {"axis", "u>"}, {"bound", 0.0}}},
  };
  Config cfg = load_config_json(j);
  CHECK_THROWS_AS(build_mesh(cfg, 8), SurfError);
  j["view"] = {{"u_min", 0.1}, {"u_max", 1.0}, {"v_min", -0.5}, {"v_max", 0.5}};
  Config with_view = load_config_json(j);
  Mesh mesh = build_mesh(with_view, 8);
  // 64 lattice vertices plus the traced arc of |z| = 1 inside the view
  CHECK(mesh.vertices.size() >= 64u);
  CHECK(mesh.faces.size() == 2u * 7u * 7u);
  CHECK(mesh.polylines.size() == 1u);
}

TEST_CASE("csv writer emits the documented column order deterministically") {
  Config cfg = load_config(config_path("circle.json"));
  SingularCurve c = trace_singular_curve(cfg.data, cfg.seeds.front());
  locus_curvature(c, cfg.data);
  std::ostringstream a;
  write_invariants_csv(a, c);
  const std::string first_line = a.str().substr(0, a.str().find('\n'));
  CHECK(first_line ==
        "t,re_z,im_z,kappa_s_closed,kappa_s_general,kappa_nu,kappa_locus,type,epsilon_gamma");
  std::ostringstream b;
  SingularCurve c2 = trace_singular_curve(cfg.data, cfg.seeds.front());
  locus_curvature(c2, cfg.data);
  write_invariants_csv(b, c2);
  CHECK(a.str() == b.str());
}

TEST_CASE("verification suite passes on the maxface corpus") {
  for (const char* name : {"enneper.json", "circle.json", "butterfly.json", "s1minus.json"}) {
    INFO(name);
    Config cfg = load_config(config_path(name));
    for (const PropertyResult& r : run_verification(cfg)) {
      INFO(r.name << ": " << r.detail);
      if (r.applicable) CHECK(r.pass);
    }
  }
}

TEST_CASE("verification suite passes on the harmonic tanh strip") {
  Config cfg = load_config(config_path("cmc_tanh.json"));
  for (const PropertyResult& r : run_verification(cfg)) {
    INFO(r.name << ": " << r.detail);
    if (r.applicable) CHECK(r.pass);
  }
}
