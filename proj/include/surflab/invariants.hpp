#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <vector>

#include "surflab/classify.hpp"
#include "surflab/format.hpp"
#include "surflab/cmc.hpp"
#include "surflab/maxface.hpp"

namespace surflab {

struct CurveSample {
  double t = 0.0;  // parameter with d/dt = i(conj(g_z/g) d_z - (g_z/g) d_zbar)
  Complex z;
  Complex xi, eta;
  double kappa_s_closed = std::numeric_limits<double>::quiet_NaN();
  double kappa_s_general = std::numeric_limits<double>::quiet_NaN();
  double kappa_nu = std::numeric_limits<double>::quiet_NaN();
  double kappa_locus = std::numeric_limits<double>::quiet_NaN();
  SingularityType type = SingularityType::Unclassified;
  int epsilon_gamma = 0;  // 0 where not first kind
};

struct SingularCurve {
  std::vector<CurveSample> samples;
  bool closed = false;
};

// Closed-form singular curvature along first-kind points.
inline double kappa_s_closed_from_jets(Pipeline kind, const PointJets& pj, double H,
                                       const Tolerances& tol = default_tolerances()) {
  const Complex phi = phi_value(pj);
  if (std::abs(phi.imag()) < tol.zero_test)
    throw SurfError(Errc::NotFirstKind, "kappa_s needs a first-kind point");
  const double gz2 = std::norm(pj.g.partial(1, 0));
  const double w2 = std::norm(pj.omega.value());
  if (kind == Pipeline::Maxface) return -gz2 / (4.0 * std::abs(phi.imag()) * w2);
  // Harmonic pipeline: the coefficient 8 makes the closed form agree with the
  // determinant route for f_z = (1/H) W omega (see the jets route below).
  return -std::abs(H) * gz2 / (8.0 * std::abs(phi.imag()) * w2);
}

inline double kappa_s_closed(const SurfaceData& data, Complex p,
                             const Tolerances& tol = default_tolerances()) {
  return kappa_s_closed_from_jets(data.kind(), jets_at(data, p, 1, tol), data.H(), tol);
}

struct InvariantSample {
  double kappa_s = 0.0;
  double kappa_nu = 0.0;
  int epsilon_gamma = -1;
  double det_value = 0.0;   // det(xi f, xi xi f, nu)
  double xif_norm = 0.0;
  Vec3 xif{}, xixif{};
};

// General-formula evaluation of the invariants from analytic jets: the field
// Xi = i conj(g_z/g) is differentiated through f, so xi xi f is the honest
// second directional derivative, independent of the closed-form expansions.
inline InvariantSample kappa_general_from_jets(Pipeline kind, const PointJets& pj, double H,
                                               const Tolerances& tol = default_tolerances()) {
  const Complex phi = phi_value(pj);
  if (std::abs(phi.imag()) < tol.zero_test)
    throw SurfError(Errc::NotFirstKind, "kappa invariants need a first-kind point");
  if (pj.g.order() < 2 || pj.omega.order() < 1)
    throw SurfError(Errc::InsufficientJetOrder, "kappa_general needs order-2 jets");

  const Jet Xi = xi_jet(pj);  // order >= 1
  const auto F = fz_jets(kind, pj, H);
  const int n = std::min(Xi.order(), F[0].order());

  InvariantSample s;
  double first[3], second[3];
  for (int c = 0; c < 3; ++c) {
    const Jet prod = Xi.truncated(n) * F[c].truncated(n);
    const Jet xf = prod + conj(prod);  // real-valued: (xi f)_c as a function
    const Complex xival = Xi.value();
    const Complex dd = xival * xf.partial(1, 0) + std::conj(xival) * xf.partial(0, 1);
    first[c] = xf.value().real();
    second[c] = dd.real();
  }
  const Vec3 xif{first[0], first[1], first[2]};
  const Vec3 xixif{second[0], second[1], second[2]};
  const Vec3 nu = unit_normal(pj.g.value());

  // epsilon_gamma = sgn(det(xi, eta) * eta lambda_hat), both from jets
  const Complex eta = eta_value(pj);
  const Jet lam = abs2(pj.g.truncated(std::min(pj.g.order(), 1)));
  const Complex lam_z = lam.partial(1, 0);
  const double eta_lambda = 2.0 * (eta * lam_z).real();
  const double det_xieta = (std::conj(xi_value(pj)) * eta).imag();
  s.epsilon_gamma = (det_xieta * eta_lambda < 0.0) ? -1 : 1;

  s.xif = xif;
  s.xixif = xixif;
  s.xif_norm = norm(xif);
  s.det_value = det3(xif, xixif, nu);
  s.kappa_s = s.epsilon_gamma * s.det_value / (s.xif_norm * s.xif_norm * s.xif_norm);
  s.kappa_nu = dot(xixif, nu) / (s.xif_norm * s.xif_norm);
  return s;
}

inline InvariantSample kappa_general(const SurfaceData& data, Complex p,
                                     const Tolerances& tol = default_tolerances()) {
  return kappa_general_from_jets(data.kind(), jets_at(data, p, 3, tol), data.H(), tol);
}

namespace detail {

// One Newton projection onto {lambda_hat = 0} along the identifier gradient.
// Newton projection onto {lambda_hat = 0}. Drives the residual to machine
// level (invariant evaluation near second-kind points divides by |Im phi|^2,
// so the curve_projection tolerance alone is not tight enough there).
inline Complex project_to_singular_set(const SurfaceData& data, Complex z, const Tolerances& tol,
                                       int max_iters = 60) {
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iters; ++it) {
    if (!data.domain().contains(z))
      throw SurfError(Errc::LeftDomain, "projection onto the singular set left the domain");
    PointJets pj = jets_at(data, z, 1, tol);
    const double lam = lambda_hat_of(pj);
    const double resid = std::abs(lam);
    if (resid <= 1e-14) return z;
    if (resid <= 0.1 * tol.curve_projection && resid >= 0.5 * best) return z;  // stalled
    best = std::min(best, resid);
    const auto [gu, gv] = identifier_gradient_from_jets(pj);
    const double g2 = gu * gu + gv * gv;
    if (g2 < tol.machine_zero)
      throw SurfError(Errc::NonConvergence, "identifier gradient vanished during projection");
    z -= lam * Complex(gu, gv) / g2;
  }
  throw SurfError(Errc::NonConvergence, "Newton projection onto the singular set stalled");
}

inline Complex xi_field(const SurfaceData& data, Complex z, const Tolerances& tol) {
  PointJets pj = jets_at(data, z, 1, tol);
  return xi_value(pj);
}

}  // namespace detail

// Predictor-corrector tracing of {lambda_hat = 0}: an RK4 step of the flow
// dz/dt = i conj(g_z/g) (the parameter the invariant formulas assume), then a
// Newton projection back onto the set. Stops on domain exit; detects closure
// when the trace returns within step/2 of the start.
inline SingularCurve trace_singular_curve(const SurfaceData& data, Complex seed,
                                          double step = 0.02, int max_steps = 4000,
                                          const Tolerances& tol = default_tolerances()) {
  if (!data.domain().contains(seed))
    throw SurfError(Errc::LeftDomain, "seed outside the domain");
  if (!(step > 0.0)) throw SurfError(Errc::EvalError, "trace step must be positive");

  SingularCurve curve;
  Complex z = detail::project_to_singular_set(data, seed, tol);

  double t = 0.0;
  const Complex z_first = z;
  for (int k = 0; k < max_steps; ++k) {
    PointJets pj = jets_at(data, z, 3, tol);
    if (std::abs(pj.g.partial(1, 0)) <= tol.zero_test)
      throw SurfError(Errc::DegenerateOnCurve, "g_z vanished on the singular curve");

    CurveSample s;
    s.t = t;
    s.z = z;
    s.xi = xi_value(pj);
    s.eta = eta_value(pj);
    s.type = classify_from_jets(data.kind(), z, pj, tol).type;
    try {
      s.kappa_s_closed = kappa_s_closed_from_jets(data.kind(), pj, data.H(), tol);
      InvariantSample inv = kappa_general_from_jets(data.kind(), pj, data.H(), tol);
      s.kappa_s_general = inv.kappa_s;
      s.kappa_nu = inv.kappa_nu;
      s.epsilon_gamma = inv.epsilon_gamma;
    } catch (const SurfError& e) {
      if (e.code() != Errc::NotFirstKind) throw;
    }
    curve.samples.push_back(s);

    // RK4 predictor on dz/dt = xi(z)
    const double dt = step / std::abs(s.xi);
    auto field = [&](Complex w) { return detail::xi_field(data, w, tol); };
    Complex znew;
    try {
      const Complex k1 = field(z);
      const Complex k2 = field(z + 0.5 * dt * k1);
      const Complex k3 = field(z + 0.5 * dt * k2);
      const Complex k4 = field(z + dt * k3);
      znew = z + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!data.domain().contains(znew)) break;
      znew = detail::project_to_singular_set(data, znew, tol);
      if (!data.domain().contains(znew)) break;
    } catch (const SurfError& e) {
      if (e.code() == Errc::LeftDomain || e.code() == Errc::EvalError ||
          e.code() == Errc::DivisionByZero)
        break;  // curve truncated at the domain boundary
      throw;
    }
    z = znew;
    t += dt;
    if (k >= 5 && std::abs(z - z_first) < 0.5 * step) {
      curve.closed = true;
      break;
    }
  }
  return curve;
}

namespace detail {

// gamma(t0 + dt) from a sample: the same flow + projection as the tracer.
inline Complex curve_point_at(const SurfaceData& data, Complex z0, double dt,
                              const Tolerances& tol) {
  auto field = [&](Complex w) { return xi_field(data, w, tol); };
  const Complex k1 = field(z0);
  const Complex k2 = field(z0 + 0.5 * dt * k1);
  const Complex k3 = field(z0 + 0.5 * dt * k2);
  const Complex k4 = field(z0 + dt * k3);
  return project_to_singular_set(data, z0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), tol);
}

inline Vec3 locus_offset(const SurfaceData& data, Complex from, Complex to,
                         const Tolerances& tol) {
  if (std::abs(to - from) == 0.0) return Vec3{};
  const PathSpec seg{{from, to}};
  return data.kind() == Pipeline::Maxface ? integrate(data, seg, tol)
                                          : integrate_cmc(data, seg, tol);
}

struct LocusDerivatives {
  Vec3 d1, d2;  // d/dt and d^2/dt^2 of f(gamma(t))
};

// Central differences of the singular locus with one Richardson step;
// evaluation uses only point construction (quadrature), independent of the
// jet expansions it is used to cross-check.
inline LocusDerivatives locus_derivatives(const SurfaceData& data, Complex z0, double delta,
                                          const Tolerances& tol) {
  auto r_at = [&](double dt) {
    const Complex zt = curve_point_at(data, z0, dt, tol);
    return locus_offset(data, z0, zt, tol);
  };
  auto stencil = [&](double d, Vec3& d1, Vec3& d2) {
    const Vec3 plus = r_at(d), minus = r_at(-d);
    d1 = (plus - minus) / (2.0 * d);
    d2 = (plus + minus) / (d * d);
  };
  Vec3 d1a, d2a, d1b, d2b;
  stencil(delta, d1a, d2a);
  stencil(0.5 * delta, d1b, d2b);
  return {(4.0 * d1b - d1a) / 3.0, (4.0 * d2b - d2a) / 3.0};
}

}  // namespace detail

// Space-curve curvature of the singular locus by finite differences; fills
// the kappa_locus column of the curve samples.
inline void locus_curvature(SingularCurve& curve, const SurfaceData& data, double delta = 1e-3,
                            const Tolerances& tol = default_tolerances()) {
  if (curve.samples.size() < 5)
    throw SurfError(Errc::TooFewSamples, "locus curvature needs at least 5 samples");
  for (CurveSample& s : curve.samples) {
    if (std::isnan(s.kappa_s_closed)) continue;  // the locus has a cusp at second-kind points
    try {
      const auto d = detail::locus_derivatives(data, s.z, delta, tol);
      const double speed = norm(d.d1);
      s.kappa_locus = norm(cross(d.d1, d.d2)) / (speed * speed * speed);
    } catch (const SurfError&) {
      // leave NaN (e.g. the offset path left the domain near the boundary)
    }
  }
}

// Finite-difference fallback for the invariants themselves, same stencil as
// the locus curvature; used to cross-check the analytic-jet route.
inline InvariantSample kappa_fd(const SurfaceData& data, Complex p, double delta = 1e-3,
                                const Tolerances& tol = default_tolerances()) {
  PointJets pj = jets_at(data, p, 3, tol);
  const Complex phi = phi_value(pj);
  if (std::abs(phi.imag()) < tol.zero_test)
    throw SurfError(Errc::NotFirstKind, "kappa invariants need a first-kind point");
  const Complex z0 = detail::project_to_singular_set(data, p, tol);
  const auto d = detail::locus_derivatives(data, z0, delta, tol);
  const Vec3 nu = unit_normal(pj.g.value());

  InvariantSample s;
  const Complex eta = eta_value(pj);
  const Jet lam = abs2(pj.g.truncated(1));
  const double eta_lambda = 2.0 * (eta * lam.partial(1, 0)).real();
  const double det_xieta = (std::conj(xi_value(pj)) * eta).imag();
  s.epsilon_gamma = (det_xieta * eta_lambda < 0.0) ? -1 : 1;
  s.xif = d.d1;
  s.xixif = d.d2;
  s.xif_norm = norm(d.d1);
  s.det_value = det3(d.d1, d.d2, nu);
  s.kappa_s = s.epsilon_gamma * s.det_value / (s.xif_norm * s.xif_norm * s.xif_norm);
  s.kappa_nu = dot(d.d2, nu) / (s.xif_norm * s.xif_norm);
  return s;
}

// CSV table of a traced curve; column order is part of the public format.
inline void write_invariants_csv(std::ostream& os, const SingularCurve& curve) {
  os << "t,re_z,im_z,kappa_s_closed,kappa_s_general,kappa_nu,kappa_locus,type,epsilon_gamma\n";
  for (const CurveSample& s : curve.samples) {
    os << fmt17(s.t) << "," << fmt17(s.z.real()) << "," << fmt17(s.z.imag()) << ","
       << fmt17(s.kappa_s_closed) << "," << fmt17(s.kappa_s_general) << ","
       << fmt17(s.kappa_nu) << "," << fmt17(s.kappa_locus) << "," << singularity_name(s.type)
       << "," << s.epsilon_gamma << "\n";
  }
}

struct FoldVerdict {
  bool symmetric = false;
  double deviation = 0.0;
  double witness_u = 0.0, witness_v = 0.0;
};

// Numeric f(u,v) = f(u,-v) test on a grid around p in the given chart. The
// map is sampled as provided; callers supply adapted coordinates (the normal
// forms already are adapted). Symmetric certifies a fold by the
// characterization's "if" direction; Asymmetric only means no symmetry in
// the tested chart.
inline FoldVerdict fold_symmetry_test(const std::function<Vec3(double, double)>& map, double u0,
                                      double v0, double halfwidth, double tolerance,
                                      int grid = 21) {
  if (grid < 3 || !(halfwidth > 0.0))
    throw SurfError(Errc::EvalError, "fold test needs grid >= 3 and halfwidth > 0");
  FoldVerdict v;
  for (int i = 0; i < grid; ++i) {
    const double du = -halfwidth + 2.0 * halfwidth * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double dv = -halfwidth + 2.0 * halfwidth * j / (grid - 1);
      if (dv <= 0.0) continue;
      const Vec3 a = map(u0 + du, v0 + dv);
      const Vec3 b = map(u0 + du, v0 - dv);
      const Vec3 diff = a - b;
      const double dev = std::max({std::abs(diff.x), std::abs(diff.y), std::abs(diff.z)});
      if (dev > v.deviation) {
        v.deviation = dev;
        v.witness_u = u0 + du;
        v.witness_v = v0 + dv;
      }
    }
  }
  v.symmetric = v.deviation < tolerance;
  return v;
}

// Adapted-chart fold test for a surface: u runs along the traced singular
// curve through p, v along the unit null direction; the surface point comes
// from the construction integral, so the test is jet-free.
inline FoldVerdict fold_symmetry_test_surface(const SurfaceData& data, Complex p,
                                              double halfwidth, double tolerance, int grid = 21,
                                              const Tolerances& tol = default_tolerances()) {
  const Complex z0 = detail::project_to_singular_set(data, p, tol);
  PointJets pj = jets_at(data, z0, 2, tol);
  const Complex xi = xi_value(pj);
  const Complex eta = eta_value(pj);
  if (std::abs((std::conj(xi) * eta).imag()) <= tol.zero_test)
    throw SurfError(Errc::ChartFailure, "xi and eta are dependent at p (second kind)");

  auto chart = [&](double s, double t_off) {
    const Complex along = detail::curve_point_at(data, z0, s, tol);
    PointJets local = jets_at(data, along, 1, tol);
    const Complex eta_local = eta_value(local);
    return along + t_off * eta_local / std::abs(eta_local);
  };
  auto map = [&](double s, double t_off) {
    return detail::locus_offset(data, z0, chart(s, t_off), tol);
  };
  return fold_symmetry_test(map, 0.0, 0.0, halfwidth, tolerance, grid);
}

}  // namespace surflab
