#pragma once

#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <vector>

#include "surflab/config.hpp"
#include "surflab/format.hpp"
#include "surflab/invariants.hpp"

namespace surflab {

struct VertexAttributes {
  double gauss_E = std::numeric_limits<double>::quiet_NaN();
  double lambda_hat = std::numeric_limits<double>::quiet_NaN();
  // omitted (NaN) within the on-set tolerance of the singular set
  double gauss_L = std::numeric_limits<double>::quiet_NaN();
};

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<VertexAttributes> attributes;  // one per vertex
  std::vector<std::array<int, 3>> faces;     // 0-based indices
  std::vector<std::vector<int>> polylines;   // singular loci, 0-based indices
};

namespace detail {

inline Vec3 surface_point(const SurfaceData& data, const PathSpec& path, const Tolerances& tol) {
  return data.kind() == Pipeline::Maxface ? integrate(data, path, tol)
                                          : integrate_cmc(data, path, tol);
}

inline VertexAttributes attributes_at(const SurfaceData& data, Complex z,
                                      const Tolerances& tol) {
  VertexAttributes a;
  try {
    PointJets pj = jets_at(data, z, 1, tol);
    a.lambda_hat = lambda_hat_of(pj);
    a.gauss_E = data.kind() == Pipeline::Maxface
                    ? gaussian_curvature_E_from_jets(pj, tol)
                    : gaussian_curvature_E_cmc_from_jets(pj, data.H(), tol);
    if (std::abs(a.lambda_hat) >= tol.on_singular_set && data.kind() == Pipeline::Maxface)
      a.gauss_L = gaussian_curvature_L_from_jets(pj, tol);
  } catch (const SurfError&) {
    // leave NaN attributes; the vertex itself is still meshed
  }
  return a;
}

// Polar lattice point paths: radial from the center (disk) or mid-annulus
// arc followed by a radial leg (annulus), staying inside the domain.
inline PathSpec polar_path(Complex center, double r_base, double r, double theta,
                           bool through_arc) {
  PathSpec p;
  p.points.push_back(center + Complex(r_base, 0.0));
  auto push = [&](Complex q) {
    if (std::abs(q - p.points.back()) > 0.0) p.points.push_back(q);
  };
  if (through_arc) {
    const int arc_steps = std::max(1, static_cast<int>(std::ceil(std::abs(theta) / 0.3)));
    for (int k = 1; k <= arc_steps; ++k) push(center + std::polar(r_base, theta * k / arc_steps));
  } else {
    push(center + std::polar(r_base, theta));
  }
  push(center + std::polar(r, theta));
  return p;
}

inline PathSpec site_path(Complex basepoint, Complex z) {
  if (std::abs(z - basepoint) == 0.0) return PathSpec{{z}};
  return PathSpec::segment(basepoint, z);
}

inline void append_singular_polylines(Mesh& mesh, const SurfaceData& data,
                                      const std::vector<Complex>& edge_crossings, double step,
                                      const Tolerances& tol) {
  std::vector<std::vector<Complex>> curves;
  auto near_existing = [&](Complex z) {
    for (const auto& c : curves)
      for (const Complex& q : c)
        if (std::abs(q - z) < 2.0 * step) return true;
    return false;
  };
  for (const Complex& seed : edge_crossings) {
    if (curves.size() >= 8) break;
    if (near_existing(seed)) continue;
    try {
      SingularCurve c = trace_singular_curve(data, seed, step, 4000, tol);
      if (c.samples.size() < 2) continue;
      std::vector<Complex> pts;
      pts.reserve(c.samples.size());
      for (const CurveSample& s : c.samples) pts.push_back(s.z);
      if (c.closed) pts.push_back(c.samples.front().z);
      curves.push_back(std::move(pts));
    } catch (const SurfError&) {
      continue;  // seed failed; other crossings may still work
    }
  }

  for (const auto& pts : curves) {
    std::vector<int> line;
    line.reserve(pts.size());
    Vec3 acc{};
    try {
      acc = surface_point(data, site_path(data.domain().basepoint(), pts.front()), tol);
    } catch (const SurfError&) {
      continue;
    }
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k > 0) {
        try {
          acc += surface_point(data, PathSpec::segment(pts[k - 1], pts[k]), tol);
        } catch (const SurfError&) {
          break;
        }
      }
      line.push_back(static_cast<int>(mesh.vertices.size()));
      mesh.vertices.push_back(acc);
      mesh.attributes.push_back(attributes_at(data, pts[k], tol));
    }
    if (line.size() >= 2) mesh.polylines.push_back(std::move(line));
  }
}

}  // namespace detail

// Samples the surface over the domain (polar lattice for disks and annuli,
// rectangular lattice otherwise), evaluates the construction integral at
// every lattice point, and appends traced singular loci as polylines.
inline Mesh build_mesh(const Config& cfg, int resolution,
                       const Tolerances& tol = default_tolerances()) {
  if (resolution < 2) throw SurfError(Errc::InvalidData, "resolution must be >= 2");
  const SurfaceData& data = cfg.data;
  Mesh mesh;
  std::vector<Complex> sites;      // lattice points, row-major
  std::vector<Complex> crossings;  // lambda_hat sign changes along edges
  double trace_step = 0.02;

  auto row_range_eval = [&](const std::vector<PathSpec>& paths) {
    std::vector<Vec3> out(paths.size());
    const int workers = 4;
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    std::size_t chunk = (paths.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk, hi = std::min(paths.size(), (w + 1) * chunk);
      if (lo >= hi) break;
      futures.push_back(std::async(std::launch::async, [&, lo, hi] {
        for (std::size_t k = lo; k < hi; ++k)
          out[k] = detail::surface_point(data, paths[k], tol);
      }));
    }
    for (auto& f : futures) f.get();
    return out;
  };

  if (const auto* disk = std::get_if<DiskDomain>(&data.domain().shape())) {
    // rings 0..res-1 (ring 0 collapsed to the center vertex), res sectors
    const int res = resolution;
    const double dr = disk->radius / (res - 1);
    trace_step = 0.75 * dr;
    std::vector<PathSpec> paths;
    sites.push_back(disk->center);
    for (int i = 1; i < res; ++i)
      for (int j = 0; j < res; ++j) {
        const double r = dr * i * (i == res - 1 ? 0.999999 : 1.0);  // stay interior
        sites.push_back(disk->center + std::polar(r, 2.0 * 3.14159265358979323846 * j / res));
      }
    paths.reserve(sites.size());
    for (const Complex& z : sites)
      paths.push_back(detail::site_path(data.domain().basepoint(), z));
    mesh.vertices = row_range_eval(paths);

    auto ring_index = [&](int i, int j) { return 1 + (i - 1) * res + ((j % res + res) % res); };
    for (int j = 0; j < res; ++j) mesh.faces.push_back({0, ring_index(1, j), ring_index(1, j + 1)});
    for (int i = 1; i < res - 1; ++i)
      for (int j = 0; j < res; ++j) {
        const int a = ring_index(i, j), b = ring_index(i + 1, j), c = ring_index(i + 1, j + 1),
                  d = ring_index(i, j + 1);
        mesh.faces.push_back({a, b, c});
        mesh.faces.push_back({a, c, d});
      }
  } else if (const auto* ann = std::get_if<AnnulusDomain>(&data.domain().shape())) {
    const int res = resolution;
    const double pi = 3.14159265358979323846;
    const double dr = (ann->r_out - ann->r_in) / (res - 1);
    const double r_mid = 0.5 * (ann->r_in + ann->r_out);
    trace_step = 0.75 * dr;
    std::vector<PathSpec> paths;
    for (int i = 0; i < res; ++i)
      for (int j = 0; j < res; ++j) {
        double r = ann->r_in + dr * i;
        if (i == 0) r += 1e-6 * dr;
        if (i == res - 1) r -= 1e-6 * dr;
        const double theta = 2.0 * pi * j / res;
        sites.push_back(ann->center + std::polar(r, theta));
        paths.push_back(detail::polar_path(ann->center, r_mid, r, theta, true));
      }
    mesh.vertices = row_range_eval(paths);
    auto at = [&](int i, int j) { return i * res + ((j % res + res) % res); };
    for (int i = 0; i < res - 1; ++i)
      for (int j = 0; j < res; ++j) {
        mesh.faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
        mesh.faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
      }
  } else {
    RectangleDomain rect{};
    if (const auto* rc = std::get_if<RectangleDomain>(&data.domain().shape())) {
      rect = *rc;
    } else if (cfg.view) {
      rect = *cfg.view;
    } else {
      throw SurfError(Errc::InvalidData,
                      "halfplane domains need a 'view' rectangle for mesh building");
    }
    const int res = resolution;
    const double du = (rect.u_max - rect.u_min) / (res - 1);
    const double dv = (rect.v_max - rect.v_min) / (res - 1);
    trace_step = 0.75 * std::min(du, dv);
    const double eps = 1e-6;
    std::vector<PathSpec> paths;
    for (int i = 0; i < res; ++i)
      for (int j = 0; j < res; ++j) {
        const double uu = rect.u_min + du * (i == 0 ? eps : i == res - 1 ? i - eps : i);
        const double vv = rect.v_min + dv * (j == 0 ? eps : j == res - 1 ? j - eps : j);
        const Complex z(uu, vv);
        if (!data.domain().contains(z))
          throw SurfError(Errc::InvalidData, "view rectangle leaves the domain");
        sites.push_back(z);
        paths.push_back(detail::site_path(data.domain().basepoint(), z));
      }
    mesh.vertices = row_range_eval(paths);
    auto at = [&](int i, int j) { return i * res + j; };
    for (int i = 0; i < res - 1; ++i)
      for (int j = 0; j < res - 1; ++j) {
        mesh.faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
        mesh.faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
      }
  }

  mesh.attributes.reserve(sites.size());
  for (const Complex& z : sites) mesh.attributes.push_back(detail::attributes_at(data, z, tol));

  // lambda_hat sign changes along lattice edges seed the singular loci
  for (const auto& face : mesh.faces)
    for (int e = 0; e < 3; ++e) {
      const int a = face[e], b = face[(e + 1) % 3];
      const double la = mesh.attributes[a].lambda_hat, lb = mesh.attributes[b].lambda_hat;
      if (std::isnan(la) || std::isnan(lb)) continue;
      if (la * lb < 0.0 && crossings.size() < 4096)
        crossings.push_back(0.5 * (sites[a] + sites[b]));
    }
  detail::append_singular_polylines(mesh, data, crossings, trace_step, tol);
  return mesh;
}

// OBJ with v/f/l records; per-vertex scalar attributes ride in deterministic
// comment lines so any OBJ viewer still loads the geometry.
inline void write_obj(std::ostream& os, const Mesh& mesh) {
  os << "# surflab surface mesh\n";
  os << "# counts v=" << mesh.vertices.size() << " f=" << mesh.faces.size()
     << " l=" << mesh.polylines.size() << "\n";
  for (const Vec3& v : mesh.vertices)
    os << "v " << fmt17(v.x) << " " << fmt17(v.y) << " " << fmt17(v.z) << "\n";
  for (std::size_t i = 0; i < mesh.attributes.size(); ++i) {
    const VertexAttributes& a = mesh.attributes[i];
    os << "# vattr " << i + 1 << " K_E=" << fmt17(a.gauss_E)
       << " lambda_hat=" << fmt17(a.lambda_hat);
    if (!std::isnan(a.gauss_L)) os << " K_L=" << fmt17(a.gauss_L);
    os << "\n";
  }
  for (const auto& f : mesh.faces)
    os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
  for (const auto& line : mesh.polylines) {
    os << "l";
    for (int idx : line) os << " " << idx + 1;
    os << "\n";
  }
}

}  // namespace surflab
