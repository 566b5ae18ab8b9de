#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "surflab/domain.hpp"
#include "surflab/errors.hpp"
#include "surflab/expr.hpp"
#include "surflab/tolerances.hpp"
#include "surflab/vec3.hpp"
#include "surflab/wirtinger.hpp"

namespace surflab {

enum class Pipeline { Maxface, Cmc };
enum class OmegaMode { Formula, Explicit };

// Sampled findings of the data-level validation (conditions (2) and (3) of
// the holomorphic-data definition, checked on a grid, not symbolically).
struct DataValidationReport {
  std::vector<HolomorphyViolation> g_structural;
  std::vector<HolomorphyViolation> omega_structural;
  std::vector<Complex> omega_zero_points;   // sampled zeros of (1+|g|^2)^2 |omega|^2
  bool g_modulus_one_identically = false;   // 1 - |g|^2 vanished at every sample
  std::vector<Complex> eval_failures;
  bool ok() const {
    return g_structural.empty() && omega_structural.empty() && omega_zero_points.empty() &&
           !g_modulus_one_identically;
  }
};

// Surface description: either holomorphic Weierstrass data (g, omega) or an
// extended-harmonic g with constant mean curvature H. For the harmonic kind
// omega defaults to the quotient formula gbar_z/(1-|g|^2)^2 off the singular
// set; crossing |g|=1 requires an explicit omega expression.
class SurfaceData {
 public:
  static SurfaceData maxface(Ast g, Ast omega, DomainSpec domain,
                             bool allow_multiply_connected = false) {
    SurfaceData d;
    d.kind_ = Pipeline::Maxface;
    d.g_ = std::move(g);
    d.omega_ = std::move(omega);
    d.omega_mode_ = OmegaMode::Explicit;
    d.domain_ = std::move(domain);
    d.allow_multiply_connected_ = allow_multiply_connected;
    auto gs = validate_holomorphic(d.g_);
    auto os = validate_holomorphic(*d.omega_);
    if (!gs.empty() || !os.empty()) {
      const auto& v = gs.empty() ? os.front() : gs.front();
      throw SurfError(Errc::InvalidData,
                      "maxface data must be holomorphic; found '" + v.node + "' node", v.offset);
    }
    if (!d.domain_.simply_connected() && !allow_multiply_connected)
      throw SurfError(Errc::InvalidData,
                      "maxface data requires a simply-connected domain "
                      "(set allow_multiply_connected to override)");
    return d;
  }

  static SurfaceData cmc(Ast g, double mean_curvature, DomainSpec domain,
                         std::optional<Ast> omega = std::nullopt) {
    if (mean_curvature == 0.0)
      throw SurfError(Errc::InvalidData, "cmc data requires a non-zero H");
    SurfaceData d;
    d.kind_ = Pipeline::Cmc;
    d.g_ = std::move(g);
    d.H_ = mean_curvature;
    d.omega_ = std::move(omega);
    d.omega_mode_ = d.omega_ ? OmegaMode::Explicit : OmegaMode::Formula;
    d.domain_ = std::move(domain);
    return d;
  }

  Pipeline kind() const { return kind_; }
  const Ast& g() const { return g_; }
  const std::optional<Ast>& omega() const { return omega_; }
  OmegaMode omega_mode() const { return omega_mode_; }
  double H() const { return H_; }
  const DomainSpec& domain() const { return domain_; }
  bool allow_multiply_connected() const { return allow_multiply_connected_; }

 private:
  Pipeline kind_ = Pipeline::Maxface;
  Ast g_;
  std::optional<Ast> omega_;
  OmegaMode omega_mode_ = OmegaMode::Explicit;
  double H_ = 0.0;
  DomainSpec domain_;
  bool allow_multiply_connected_ = false;
};

// Jets of g and omega-hat at one point; the currency all closed formulas
// consume. Synthetic jets can be fed directly to the *_from_jets entry points.
struct PointJets {
  Jet g{kMaxJetOrder};
  Jet omega{kMaxJetOrder};
};

inline double lambda_hat_of(const PointJets& pj) { return std::norm(pj.g.value()) - 1.0; }

// omega-hat = gbar_z / (1 - |g|^2)^2, the quotient rule of the harmonic kind.
// Pointwise value from an order->=1 g jet; jet form loses one order.
inline Complex omega_formula_value(const Jet& g_jet,
                                   const Tolerances& tol = default_tolerances()) {
  const double den = 1.0 - std::norm(g_jet.value());
  if (std::abs(den) < tol.on_singular_set)
    throw SurfError(Errc::OnSingularSet, "omega formula undefined on |g| = 1");
  const Complex gbar_z = std::conj(g_jet.partial(0, 1));
  return gbar_z / (den * den);
}

inline Jet omega_formula_jet(const Jet& g_jet, const Tolerances& tol = default_tolerances()) {
  const double den = 1.0 - std::norm(g_jet.value());
  if (std::abs(den) < tol.on_singular_set)
    throw SurfError(Errc::OnSingularSet, "omega formula undefined on |g| = 1");
  const Jet gbar_z = d_z(conj(g_jet));
  const int n = gbar_z.order();
  const Jet one_minus = Jet::constant(1.0, n) - (g_jet * conj(g_jet)).truncated(n);
  return gbar_z / (one_minus * one_minus);
}

// Evaluates the (g, omega) jets of a surface at z. The g jet has the given
// order; a formula-mode omega jet has one order less.
inline PointJets jets_at(const SurfaceData& data, Complex z, int order = kMaxJetOrder,
                         const Tolerances& tol = default_tolerances()) {
  PointJets pj;
  pj.g = eval_jet(data.g(), z, order);
  if (data.omega_mode() == OmegaMode::Explicit) {
    pj.omega = eval_jet(*data.omega(), z, order);
  } else {
    try {
      pj.omega = omega_formula_jet(pj.g, tol);
    } catch (const SurfError& e) {
      if (e.code() == Errc::OnSingularSet)
        throw SurfError(Errc::ExplicitOmegaRequired,
                        "harmonic data needs an explicit omega across |g| = 1");
      throw;
    }
  }
  return pj;
}

// f_z as jets: c * (-2g, 1+g^2, i(1-g^2)) * omega, with c = 1/2 (maxface)
// or 1/H (cmc). Components share the order min(g.order, omega.order).
inline std::array<Jet, 3> fz_jets(Pipeline kind, const PointJets& pj, double H = 0.0) {
  const int n = std::min(pj.g.order(), pj.omega.order());
  const Jet g = pj.g.truncated(n);
  const Jet w = pj.omega.truncated(n);
  const Complex c = (kind == Pipeline::Maxface) ? Complex(0.5, 0.0) : Complex(1.0 / H, 0.0);
  const Jet g2 = g * g;
  const Complex I(0.0, 1.0);
  return {c * (g * Complex(-2.0, 0.0) * w),
          c * ((Jet::constant(1.0, n) + g2) * w),
          c * ((Jet::constant(1.0, n) - g2) * I * w)};
}

inline CVec3 fz_values(Pipeline kind, const PointJets& pj, double H = 0.0) {
  const Complex g = pj.g.value(), w = pj.omega.value();
  const Complex c = (kind == Pipeline::Maxface) ? Complex(0.5, 0.0) : Complex(1.0 / H, 0.0);
  const Complex I(0.0, 1.0);
  return {c * (-2.0 * g * w), c * ((1.0 + g * g) * w), c * (I * (1.0 - g * g) * w)};
}

inline Vec3 unit_normal(const Complex& g) {
  const double a2 = std::norm(g);
  const double s = std::sqrt((1.0 + a2) * (1.0 + a2) + 4.0 * a2);
  return Vec3{1.0 + a2, 2.0 * g.real(), 2.0 * g.imag()} / s;
}

// Signed area density det(f_u, f_v, nu) in closed form:
// (|g|^2-1)|omega|^2 sqrt((1+|g|^2)^2+4|g|^2), times 4/H^2 for the cmc kind.
// The 4 makes the closed form equal to the determinant of the actual frame
// f_z = (1/H) (-2g, 1+g^2, i(1-g^2)) omega; it only rescales the positive
// factor mu, so the singular set and every sign statement are unchanged.
inline double signed_area_density(Pipeline kind, const PointJets& pj, double H = 0.0) {
  const double a2 = std::norm(pj.g.value());
  const double w2 = std::norm(pj.omega.value());
  double lam = (a2 - 1.0) * w2 * std::sqrt((1.0 + a2) * (1.0 + a2) + 4.0 * a2);
  if (kind == Pipeline::Cmc) lam *= 4.0 / (H * H);
  return lam;
}

// phi = g_z / (g^2 omega), the quantity every criterion is written in.
inline Jet phi_jet(const PointJets& pj) {
  const Jet gz = d_z(pj.g);
  const int n = std::min(gz.order(), pj.omega.order());
  const Jet denom = (pj.g * pj.g).truncated(n) * pj.omega.truncated(n);
  return gz.truncated(n) / denom;
}

inline Complex phi_value(const PointJets& pj) {
  const Complex g = pj.g.value();
  const Complex denom = g * g * pj.omega.value();
  if (std::abs(denom) < default_tolerances().machine_zero)
    throw SurfError(Errc::DivisionByZero, "phi undefined where g^2 omega = 0");
  return pj.g.partial(1, 0) / denom;
}

// Singular direction in the arc normalization i * conj(g_z/g); on the
// singular set this agrees with i g gbar_zbar up to a positive factor.
inline Complex xi_value(const PointJets& pj) {
  const Complex g = pj.g.value();
  if (std::abs(g) < default_tolerances().machine_zero)
    throw SurfError(Errc::DivisionByZero, "xi undefined where g = 0");
  return Complex(0.0, 1.0) * std::conj(pj.g.partial(1, 0) / g);
}

inline Jet xi_jet(const PointJets& pj) {
  const Jet gz = d_z(pj.g);
  return conj(gz / pj.g.truncated(gz.order())) * Complex(0.0, 1.0);
}

// Null direction eta = i / (g omega).
inline Complex eta_value(const PointJets& pj) {
  const Complex d = pj.g.value() * pj.omega.value();
  if (std::abs(d) < default_tolerances().machine_zero)
    throw SurfError(Errc::DivisionByZero, "eta undefined where g omega = 0");
  return Complex(0.0, 1.0) / d;
}

struct FrameSample {
  Complex z;
  CVec3 f_z{}, f_zbar{};
  Vec3 normal;
  double lambda = 0.0, lambda_hat = 0.0;
  std::optional<Complex> phi, xi, eta;
};

inline FrameSample frame_from_jets(Pipeline kind, Complex z, const PointJets& pj,
                                   double H = 0.0) {
  FrameSample fs;
  fs.z = z;
  fs.f_z = fz_values(kind, pj, H);
  fs.f_zbar = conj(fs.f_z);
  fs.normal = unit_normal(pj.g.value());
  fs.lambda = signed_area_density(kind, pj, H);
  fs.lambda_hat = lambda_hat_of(pj);
  const double tiny = 1e-14;
  const Complex g = pj.g.value(), w = pj.omega.value();
  if (std::abs(g) > tiny && std::abs(w) > tiny)
    fs.phi = pj.g.partial(1, 0) / (g * g * w);
  if (std::abs(g) > tiny) fs.xi = Complex(0.0, 1.0) * std::conj(pj.g.partial(1, 0) / g);
  if (std::abs(g * w) > tiny) fs.eta = Complex(0.0, 1.0) / (g * w);
  return fs;
}

inline FrameSample frame(const SurfaceData& data, Complex z,
                         const Tolerances& tol = default_tolerances()) {
  if (!data.domain().contains(z))
    throw SurfError(Errc::LeftDomain, "frame point outside the domain");
  PointJets pj = jets_at(data, z, kMaxJetOrder, tol);
  return frame_from_jets(data.kind(), z, pj, data.H());
}

// Real gradient (d/du, d/dv) of the singularity identifier |g|^2 - 1.
inline std::pair<double, double> identifier_gradient_from_jets(const PointJets& pj) {
  if (pj.g.order() < 1)
    throw SurfError(Errc::InsufficientJetOrder, "identifier gradient needs a first-order jet");
  const Jet lam = abs2(pj.g.truncated(1));
  const Complex lz = lam.partial(1, 0);
  return {2.0 * lz.real(), -2.0 * lz.imag()};
}

inline std::pair<double, double> identifier_gradient(const SurfaceData& data, Complex z,
                                                     const Tolerances& tol = default_tolerances()) {
  PointJets pj = jets_at(data, z, kMaxJetOrder, tol);
  return identifier_gradient_from_jets(pj);
}

// Grid-sampled checks of the holomorphic-data conditions (2) and (3); a
// violation is a warning unless the point is actually queried later.
inline DataValidationReport validate_surface_data(const SurfaceData& data, int grid = 64,
                                                  const Tolerances& tol = default_tolerances()) {
  DataValidationReport r;
  r.g_structural = validate_holomorphic(data.g());
  if (data.kind() == Pipeline::Cmc) r.g_structural.clear();  // zbar is legal for harmonic g
  if (data.omega() ) {
    if (data.kind() == Pipeline::Maxface)
      r.omega_structural = validate_holomorphic(*data.omega());
  }

  // Bounding box to sweep; unbounded domains use a window near the basepoint.
  double u0 = -2, u1 = 2, v0 = -2, v1 = 2;
  if (const auto* d = std::get_if<DiskDomain>(&data.domain().shape())) {
    u0 = d->center.real() - d->radius; u1 = d->center.real() + d->radius;
    v0 = d->center.imag() - d->radius; v1 = d->center.imag() + d->radius;
  } else if (const auto* a = std::get_if<AnnulusDomain>(&data.domain().shape())) {
    u0 = a->center.real() - a->r_out; u1 = a->center.real() + a->r_out;
    v0 = a->center.imag() - a->r_out; v1 = a->center.imag() + a->r_out;
  } else if (const auto* rc = std::get_if<RectangleDomain>(&data.domain().shape())) {
    u0 = rc->u_min; u1 = rc->u_max; v0 = rc->v_min; v1 = rc->v_max;
  } else {
    const Complex b = data.domain().basepoint();
    u0 = b.real() - 2; u1 = b.real() + 2; v0 = b.imag() - 2; v1 = b.imag() + 2;
  }

  bool modulus_one_everywhere = true;
  bool any_sample = false;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Complex z(u0 + (u1 - u0) * (i + 0.5) / grid, v0 + (v1 - v0) * (j + 0.5) / grid);
      if (!data.domain().contains(z)) continue;
      try {
        PointJets pj = jets_at(data, z, 1, tol);
        any_sample = true;
        const double a2 = std::norm(pj.g.value());
        const double w2 = std::norm(pj.omega.value());
        if ((1.0 + a2) * (1.0 + a2) * w2 < tol.zero_test) r.omega_zero_points.push_back(z);
        if (std::abs(1.0 - a2) > 1e-12) modulus_one_everywhere = false;
      } catch (const SurfError&) {
        r.eval_failures.push_back(z);
        modulus_one_everywhere = false;
      }
    }
  r.g_modulus_one_identically = any_sample && modulus_one_everywhere;
  return r;
}

}  // namespace surflab
