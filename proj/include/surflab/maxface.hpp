#pragma once

#include <cmath>
#include <vector>

#include "surflab/quadrature.hpp"
#include "surflab/surface.hpp"

namespace surflab {

// Polyline of waypoints from the base point to a target.
struct PathSpec {
  std::vector<Complex> points;

  static PathSpec segment(Complex from, Complex to) { return PathSpec{{from, to}}; }

  void validate(const DomainSpec& domain) const {
    if (points.size() < 1) throw SurfError(Errc::EvalError, "empty path");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!domain.contains(points[i]))
        throw SurfError(Errc::LeftDomain, "path waypoint outside the domain");
      if (i > 0 && std::abs(points[i] - points[i - 1]) == 0.0)
        throw SurfError(Errc::EvalError, "consecutive path waypoints coincide");
    }
  }
};

namespace detail {

// Line integral of the exact 1-form 2 Re(f_z dz) along a polyline; shared by
// both construction formulas (maxface f_z = W omega/2, cmc f_z = W omega/H).
template <class FzFn>
Vec3 integrate_exact_form(const FzFn& fz_at, const PathSpec& path, double tol) {
  Vec3 total{};
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    const Complex a = path.points[i], b = path.points[i + 1];
    const Complex dz = 0.5 * (b - a);  // d z / d s on [-1,1]
    auto integrand = [&](double s) {
      const Complex z = 0.5 * (a + b) + s * dz;
      const CVec3 fz = fz_at(z);
      return Vec3{2.0 * (fz[0] * dz).real(), 2.0 * (fz[1] * dz).real(),
                  2.0 * (fz[2] * dz).real()};
    };
    total += integrate_adaptive(integrand, -1.0, 1.0, tol);
  }
  return total;
}

}  // namespace detail

// f(z) - f(z0) by Eq-style quadrature of Re((-2g, 1+g^2, i(1-g^2)) omega dz);
// path independent on the (simply-connected) domain since the integrand is
// holomorphic.
inline Vec3 integrate(const SurfaceData& data, const PathSpec& path,
                      const Tolerances& tol = default_tolerances()) {
  if (data.kind() != Pipeline::Maxface)
    throw SurfError(Errc::EvalError, "integrate expects maxface data");
  path.validate(data.domain());
  auto fz_at = [&](Complex z) {
    PointJets pj;
    pj.g = eval_jet(data.g(), z, 0);
    pj.omega = eval_jet(*data.omega(), z, 0);
    return fz_values(Pipeline::Maxface, pj);
  };
  return detail::integrate_exact_form(fz_at, path, tol.quadrature);
}

// K_E = -4 |g_z|^2 / (((1+|g|^2)^2 + 4|g|^2)^2 |omega|^2); strictly negative
// wherever g_z != 0.
inline double gaussian_curvature_E_from_jets(const PointJets& pj,
                                             const Tolerances& tol = default_tolerances()) {
  const double w2 = std::norm(pj.omega.value());
  if (w2 < tol.machine_zero)
    throw SurfError(Errc::DivisionByZero, "gaussian curvature undefined where omega = 0");
  const double a2 = std::norm(pj.g.value());
  const double q = (1.0 + a2) * (1.0 + a2) + 4.0 * a2;
  return -4.0 * std::norm(pj.g.partial(1, 0)) / (q * q * w2);
}

inline double gaussian_curvature_E(const SurfaceData& data, Complex z,
                                   const Tolerances& tol = default_tolerances()) {
  return gaussian_curvature_E_from_jets(jets_at(data, z, 1, tol), tol);
}

// Lorentzian Gaussian curvature K_L = |g_z|^2 / ((1-|g|^2)^4 |omega|^2) on
// the set of regular points; diverges on the singular set.
inline double gaussian_curvature_L_from_jets(const PointJets& pj,
                                             const Tolerances& tol = default_tolerances()) {
  const double a2 = std::norm(pj.g.value());
  if (std::abs(a2 - 1.0) < tol.on_singular_set)
    throw SurfError(Errc::OnSingularSet, "K_L diverges on the singular set");
  const double w2 = std::norm(pj.omega.value());
  if (w2 < tol.machine_zero)
    throw SurfError(Errc::DivisionByZero, "K_L undefined where omega = 0");
  const double d = 1.0 - a2;
  return std::norm(pj.g.partial(1, 0)) / (d * d * d * d * w2);
}

inline double gaussian_curvature_L(const SurfaceData& data, Complex z,
                                   const Tolerances& tol = default_tolerances()) {
  return gaussian_curvature_L_from_jets(jets_at(data, z, 1, tol), tol);
}

// Closed-form nu_z of the Gauss map (the maxface pipeline); nu_zbar is the
// componentwise conjugate.
inline CVec3 nu_z_from_jets(const PointJets& pj) {
  const Complex g = pj.g.value();
  const Complex gz = pj.g.partial(1, 0);
  const double a2 = std::norm(g);
  const double q = (1.0 + a2) * (1.0 + a2) + 4.0 * a2;
  const double rho_hat = -(3.0 + a2) / q;
  const Complex gb = std::conj(g);
  const Complex I(0.0, 1.0);
  const Complex c = gz / std::sqrt(q);
  return {c * (gb * (1.0 + rho_hat * (1.0 + a2))),
          c * (2.0 * rho_hat * gb * g.real() + 1.0),
          c * (2.0 * rho_hat * gb * g.imag() - I)};
}

// Directional derivative of nu along the complex direction dir (identified
// with dir d/dz + conj(dir) d/dzbar); real since nu is real.
inline Vec3 dnu_along(const PointJets& pj, Complex dir) {
  const CVec3 nz = nu_z_from_jets(pj);
  return Vec3{2.0 * (dir * nz[0]).real(), 2.0 * (dir * nz[1]).real(),
              2.0 * (dir * nz[2]).real()};
}

struct PsiReport {
  double psi = 0.0;       // -|omega|^2 Im(phi) Re(phi)
  double psi_det = 0.0;   // determinant route, normalized to match psi
  std::array<double, 3> conditions{};  // Re phi, Im((g/g_z) phi_z), Re((g/g_z)((g/g_z) phi_z)_z)
  double a_value = 0.0;   // 32 |omega|^2 Im(phi)^5 * conditions[2]
};

// The psi/a machinery of the no-cS_k theorem, evaluated both from the
// determinant definition (with dnu from the closed-form nu jets) and from the
// closed form. The determinant det(xi f, nu, dnu(eta)) equals exactly twice
// the closed form with the stated xi/eta normalizations, so the det route
// carries a constant 1/2 to report the same quantity.
inline PsiReport psi_analysis_from_jets(const PointJets& pj,
                                        const Tolerances& tol = default_tolerances()) {
  if (std::abs(pj.g.partial(1, 0)) <= tol.zero_test)
    throw SurfError(Errc::Degenerate, "psi analysis needs a non-degenerate point");
  if (pj.g.order() < 3 || pj.omega.order() < 2)
    throw SurfError(Errc::InsufficientJetOrder, "psi analysis needs g to order 3");

  const Jet phi = phi_jet(pj);  // order >= 2
  const Complex phi0 = phi.value();
  const double w2 = std::norm(pj.omega.value());

  const Jet gz = d_z(pj.g);
  const Jet T = pj.g.truncated(gz.order()) / gz;  // g/g_z, order 2
  const Jet Tphi_z = T.truncated(1) * d_z(phi).truncated(1);
  const Complex second = Tphi_z.value();
  const Complex third = T.value() * Tphi_z.partial(1, 0);

  PsiReport r;
  r.conditions = {phi0.real(), second.imag(), third.real()};
  r.psi = -w2 * phi0.imag() * phi0.real();
  r.a_value = 32.0 * w2 * std::pow(phi0.imag(), 5) * third.real();

  // determinant route: gamma-hat' = xi f, nu, dnu(eta)
  const Complex xi = xi_value(pj);
  const Complex eta = eta_value(pj);
  const CVec3 fz = fz_values(Pipeline::Maxface, pj);
  const Vec3 xif{2.0 * (xi * fz[0]).real(), 2.0 * (xi * fz[1]).real(),
                 2.0 * (xi * fz[2]).real()};
  const Vec3 nu = unit_normal(pj.g.value());
  const Vec3 dnu_eta = dnu_along(pj, eta);
  r.psi_det = 0.5 * det3(xif, nu, dnu_eta);
  return r;
}

inline PsiReport psi_analysis(const SurfaceData& data, Complex p,
                              const Tolerances& tol = default_tolerances()) {
  if (data.kind() != Pipeline::Maxface)
    throw SurfError(Errc::EvalError, "psi analysis applies to the maxface pipeline");
  return psi_analysis_from_jets(jets_at(data, p, 3, tol), tol);
}

}  // namespace surflab
