#pragma once

#include <cmath>
#include <functional>

#include "surflab/maxface.hpp"
#include "surflab/surface.hpp"

namespace surflab {

struct HarmonicityReport {
  Complex residual;        // g_zzbar + 2 (1-|g|^2) gbar g_z conj(omega)
  Complex omega_value;
  bool omega_nonzero = false;
  bool g2omega_nonzero = false;
};

// omega-hat from the quotient formula; see omega_formula_value in surface.hpp.
inline Complex omega_from_g(const Jet& g_jet, const Tolerances& tol = default_tolerances()) {
  return omega_formula_value(g_jet, tol);
}

// Residual of the extended-harmonic-map equation at one point, with omega
// either from the quotient formula or an explicit rule.
inline HarmonicityReport harmonicity_residual_from_jets(
    const Jet& g_jet, Complex omega_value, const Tolerances& tol = default_tolerances()) {
  if (g_jet.order() < 2)
    throw SurfError(Errc::InsufficientJetOrder, "harmonicity residual needs g to order 2");
  HarmonicityReport r;
  r.omega_value = omega_value;
  const Complex g = g_jet.value();
  const double one_minus = 1.0 - std::norm(g);
  r.residual = g_jet.partial(1, 1) +
               2.0 * one_minus * std::conj(g) * g_jet.partial(1, 0) * std::conj(omega_value);
  r.omega_nonzero = std::abs(omega_value) > tol.zero_test;
  r.g2omega_nonzero = std::abs(g * g * omega_value) > tol.zero_test;
  return r;
}

inline HarmonicityReport harmonicity_residual(const SurfaceData& data, Complex z,
                                              const Tolerances& tol = default_tolerances()) {
  PointJets pj = jets_at(data, z, 3, tol);
  return harmonicity_residual_from_jets(pj.g, pj.omega.value(), tol);
}

struct ClosednessReport {
  CVec3 residual{};  // d/dzbar f_z - d/dz f_zbar, componentwise
  double max_abs = 0.0;
};

// Closedness of the 1-form 2 Re(f_z dz); vanishes exactly where the data is
// an extended harmonic map (with the formula omega), making the construction
// path independent.
inline ClosednessReport closedness_residual_from_jets(const PointJets& pj, double H) {
  const auto fz = fz_jets(Pipeline::Cmc, pj, H);
  if (fz[0].order() < 1)
    throw SurfError(Errc::InsufficientJetOrder, "closedness residual needs first-order jets");
  ClosednessReport r;
  for (int c = 0; c < 3; ++c) {
    // f_zbar = conj(f_z) as a function, so d/dz f_zbar = conj(d/dzbar f_z).
    const Complex dzbar_fz = fz[c].partial(0, 1);
    r.residual[c] = dzbar_fz - std::conj(dzbar_fz);
    r.max_abs = std::max(r.max_abs, std::abs(r.residual[c]));
  }
  return r;
}

inline ClosednessReport closedness_residual(const SurfaceData& data, Complex z,
                                            const Tolerances& tol = default_tolerances()) {
  return closedness_residual_from_jets(jets_at(data, z, 3, tol), data.H());
}

namespace detail {

// Generic CMC line integration over any jet source; the closedness gate
// samples the residual at fixed points per segment before integrating.
template <class JetsAt>
Vec3 integrate_cmc_impl(const JetsAt& jets_of, double H, const PathSpec& path,
                        const Tolerances& tol) {
  double worst = 0.0;
  Complex worst_at;
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    for (int k = 0; k <= 8; ++k) {
      const Complex z = path.points[i] +
                        (path.points[i + 1] - path.points[i]) * (k / 8.0);
      const ClosednessReport cr = closedness_residual_from_jets(jets_of(z), H);
      if (cr.max_abs > worst) {
        worst = cr.max_abs;
        worst_at = z;
      }
    }
  }
  if (worst > tol.closedness_gate)
    throw SurfError(Errc::NotClosed,
                    "closedness residual " + std::to_string(worst) + " at (" +
                        std::to_string(worst_at.real()) + ", " + std::to_string(worst_at.imag()) +
                        ") exceeds the gate");
  auto fz_at = [&](Complex z) { return fz_values(Pipeline::Cmc, jets_of(z), H); };
  return integrate_exact_form(fz_at, path, tol.quadrature);
}

}  // namespace detail

// f(z) - f(z0) for the harmonic pipeline, as the line integral of the exact
// form Re(f_z dz + f_zbar dzbar); refuses when the sampled closedness
// residual exceeds the gate.
inline Vec3 integrate_cmc(const SurfaceData& data, const PathSpec& path,
                          const Tolerances& tol = default_tolerances()) {
  if (data.kind() != Pipeline::Cmc)
    throw SurfError(Errc::EvalError, "integrate_cmc expects cmc data");
  path.validate(data.domain());
  return detail::integrate_cmc_impl(
      [&](Complex z) { return jets_at(data, z, 2, tol); }, data.H(), path, tol);
}

// Jet-source variant used by tests that integrate discrete or synthetic data.
inline Vec3 integrate_cmc_jets(const std::function<PointJets(Complex)>& jets_of, double H,
                               const PathSpec& path,
                               const Tolerances& tol = default_tolerances()) {
  return detail::integrate_cmc_impl(jets_of, H, path, tol);
}

// K_E = (|g_zbar|^2 - |g_z|^2) H^2 / (((1+|g|^2)^2 + 4|g|^2)^2 |omega|^2).
// Sign equals sign(|g_zbar| - |g_z|); strictly negative at non-degenerate
// singular points where g_zbar = 0 and g_z != 0.
inline double gaussian_curvature_E_cmc_from_jets(const PointJets& pj, double H,
                                                 const Tolerances& tol = default_tolerances()) {
  const double w2 = std::norm(pj.omega.value());
  if (w2 < tol.machine_zero)
    throw SurfError(Errc::DivisionByZero, "gaussian curvature undefined where omega = 0");
  const double a2 = std::norm(pj.g.value());
  const double q = (1.0 + a2) * (1.0 + a2) + 4.0 * a2;
  const double num = std::norm(pj.g.partial(0, 1)) - std::norm(pj.g.partial(1, 0));
  return num * H * H / (q * q * w2);
}

inline double gaussian_curvature_E_cmc(const SurfaceData& data, Complex z,
                                       const Tolerances& tol = default_tolerances()) {
  return gaussian_curvature_E_cmc_from_jets(jets_at(data, z, 1, tol), data.H(), tol);
}

// K_L = H^2 (|g_z/g_zbar|^2 - 1) on the set of regular points.
inline double gaussian_curvature_L_cmc_from_jets(const PointJets& pj, double H,
                                                 const Tolerances& tol = default_tolerances()) {
  const double a2 = std::norm(pj.g.value());
  if (std::abs(a2 - 1.0) < tol.on_singular_set)
    throw SurfError(Errc::OnSingularSet, "K_L diverges on the singular set");
  const double gzb2 = std::norm(pj.g.partial(0, 1));
  if (gzb2 < tol.machine_zero)
    throw SurfError(Errc::DivisionByZero, "K_L undefined where g_zbar = 0");
  return H * H * (std::norm(pj.g.partial(1, 0)) / gzb2 - 1.0);
}

struct ButterflyReport {
  bool verdict = false;
  double re_phi = 0.0, im_phi = 0.0;
  double sw_condition = 0.0;   // Re((g/g_z) phi_z) - Re(conj(g/g_z) phi_zbar)
  double cbf_condition = 0.0;  // the displayed third inequality, as LHS - RHS
};

// The cuspidal-butterfly criterion of the harmonic pipeline. All four
// condition values are reported; the verdict tests them at the zero-test
// tolerance. Needs phi to order 2, hence g to order 3 (or an order-2
// explicit omega jet).
inline ButterflyReport butterfly_test_cmc_from_jets(const PointJets& pj,
                                                    const Tolerances& tol = default_tolerances()) {
  const Complex gz = pj.g.partial(1, 0);
  if (std::abs(gz) <= tol.zero_test)
    throw SurfError(Errc::Degenerate, "butterfly test needs a non-degenerate point");
  if (pj.g.order() < 3 || pj.omega.order() < 2)
    throw SurfError(Errc::InsufficientJetOrder, "butterfly test needs second-order omega jets");

  const Jet phi = phi_jet(pj);  // order 2
  const Jet T = (pj.g.truncated(pj.g.order() - 1) / d_z(pj.g)).truncated(1);  // g/g_z
  const Jet Tc = conj(T);

  const Jet A = T * d_z(phi).truncated(1);          // (g/g_z) phi_z
  const Jet B = Tc * d_zbar(phi).truncated(1);      // conj(g/g_z) phi_zbar
  const Complex second_z = T.value() * A.partial(1, 0);       // (g/g_z)((g/g_z) phi_z)_z
  const Complex second_zb = Tc.value() * B.partial(0, 1);     // conj((g/g_z))(conj(..) phi_zbar)_zbar
  const Complex phi_zzb = phi.partial(1, 1);

  ButterflyReport r;
  r.re_phi = phi.value().real();
  r.im_phi = phi.value().imag();
  r.sw_condition = A.value().real() - B.value().real();
  r.cbf_condition =
      second_z.imag() + second_zb.imag() - phi_zzb.imag() / std::norm(gz);
  r.verdict = std::abs(r.re_phi) > tol.zero_test && std::abs(r.im_phi) <= tol.zero_test &&
              std::abs(r.sw_condition) <= tol.zero_test &&
              std::abs(r.cbf_condition) > tol.zero_test;
  return r;
}

inline ButterflyReport butterfly_test_cmc(const SurfaceData& data, Complex p,
                                          const Tolerances& tol = default_tolerances()) {
  return butterfly_test_cmc_from_jets(jets_at(data, p, 3, tol), tol);
}

}  // namespace surflab
