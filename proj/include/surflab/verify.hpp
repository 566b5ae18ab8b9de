#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "surflab/config.hpp"
#include "surflab/invariants.hpp"

namespace surflab {

struct PropertyResult {
  PropertyResult() = default;
  explicit PropertyResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  bool applicable = true;
  double worst = 0.0;
  Complex location;
  std::string detail;
};

namespace detail {

inline std::vector<Complex> auto_seeds(const SurfaceData& data, int grid,
                                       const Tolerances& tol) {
  // lambda_hat sign changes over a coarse sweep seed the tracer
  std::vector<Complex> seeds;
  double u0 = -2, u1 = 2, v0 = -2, v1 = 2;
  if (const auto* d = std::get_if<DiskDomain>(&data.domain().shape())) {
    u0 = d->center.real() - d->radius; u1 = d->center.real() + d->radius;
    v0 = d->center.imag() - d->radius; v1 = d->center.imag() + d->radius;
  } else if (const auto* a = std::get_if<AnnulusDomain>(&data.domain().shape())) {
    u0 = a->center.real() - a->r_out; u1 = a->center.real() + a->r_out;
    v0 = a->center.imag() - a->r_out; v1 = a->center.imag() + a->r_out;
  } else if (const auto* r = std::get_if<RectangleDomain>(&data.domain().shape())) {
    u0 = r->u_min; u1 = r->u_max; v0 = r->v_min; v1 = r->v_max;
  }
  const double du = (u1 - u0) / grid, dv = (v1 - v0) / grid;
  auto lam_at = [&](Complex z) -> double {
    if (!data.domain().contains(z)) return std::numeric_limits<double>::quiet_NaN();
    try {
      return lambda_hat_of(jets_at(data, z, 0, tol));
    } catch (const SurfError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  for (int i = 0; i < grid && seeds.size() < 16; ++i)
    for (int j = 0; j + 1 < grid && seeds.size() < 16; ++j) {
      const Complex a(u0 + du * (i + 0.5), v0 + dv * (j + 0.5));
      const Complex b(u0 + du * (i + 0.5), v0 + dv * (j + 1.5));
      const double la = lam_at(a), lb = lam_at(b);
      if (std::isnan(la) || std::isnan(lb) || la * lb >= 0.0) continue;
      bool dup = false;
      for (const Complex& s : seeds)
        if (std::abs(s - 0.5 * (a + b)) < 4.0 * dv) dup = true;
      if (!dup) seeds.push_back(0.5 * (a + b));
    }
  return seeds;
}

inline Complex random_point_in(const DomainSpec& domain, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double u0 = -1, u1 = 1, v0 = -1, v1 = 1;
  if (const auto* d = std::get_if<DiskDomain>(&domain.shape())) {
    u0 = d->center.real() - d->radius; u1 = d->center.real() + d->radius;
    v0 = d->center.imag() - d->radius; v1 = d->center.imag() + d->radius;
  } else if (const auto* a = std::get_if<AnnulusDomain>(&domain.shape())) {
    u0 = a->center.real() - a->r_out; u1 = a->center.real() + a->r_out;
    v0 = a->center.imag() - a->r_out; v1 = a->center.imag() + a->r_out;
  } else if (const auto* r = std::get_if<RectangleDomain>(&domain.shape())) {
    u0 = r->u_min; u1 = r->u_max; v0 = r->v_min; v1 = r->v_max;
  } else {
    const Complex b = domain.basepoint();
    u0 = b.real() - 1; u1 = b.real() + 1; v0 = b.imag() - 1; v1 = b.imag() + 1;
  }
  for (int tries = 0; tries < 256; ++tries) {
    const Complex z(u0 + (u1 - u0) * (0.5 + 0.4 * u(rng)), v0 + (v1 - v0) * (0.5 + 0.4 * u(rng)));
    if (domain.contains(z)) return z;
  }
  return domain.basepoint();
}

}  // namespace detail

// The property suite behind `surflab verify`: path independence of the
// construction, the curvature-invariant laws along traced singular curves,
// the psi identity, the Gauss-map fold determinant, and the sign
// correlation. Properties that need a singular curve are reported as not
// applicable when the data has no singular set in the domain.
inline std::vector<PropertyResult> run_verification(const Config& cfg,
                                                    const Tolerances& tol = default_tolerances()) {
  const SurfaceData& data = cfg.data;
  std::vector<PropertyResult> results;
  std::mt19937 rng(20240229);

  {  // path independence / closedness-gated two-path agreement
    PropertyResult pr;
    pr.name = data.kind() == Pipeline::Maxface ? "path_independence" : "closedness_two_path";
    const Complex base = data.domain().basepoint();
    try {
      for (int k = 0; k < 20; ++k) {
        const Complex target = detail::random_point_in(data.domain(), rng);
        const Complex via = detail::random_point_in(data.domain(), rng);
        if (std::abs(target - base) == 0.0 || std::abs(via - base) == 0.0 ||
            std::abs(via - target) == 0.0)
          continue;
        PathSpec direct{{base, target}};
        PathSpec detour{{base, via, target}};
        Vec3 a, b;
        if (data.kind() == Pipeline::Maxface) {
          a = integrate(data, direct, tol);
          b = integrate(data, detour, tol);
        } else {
          a = integrate_cmc(data, direct, tol);
          b = integrate_cmc(data, detour, tol);
        }
        const double diff = norm(a - b);
        if (diff > pr.worst) {
          pr.worst = diff;
          pr.location = target;
        }
      }
      const double bound = data.kind() == Pipeline::Maxface ? 1e-9 : 1e-6;
      pr.pass = pr.worst < bound;
      pr.detail = "worst two-path difference " + fmt17(pr.worst);
    } catch (const SurfError& e) {
      pr.pass = false;
      pr.detail = e.what();
    }
    results.push_back(pr);
  }

  if (data.kind() == Pipeline::Cmc) {  // harmonicity residual sampling
    PropertyResult pr;
    pr.name = "harmonicity_residual";
    try {
      for (int k = 0; k < 64; ++k) {
        const Complex z = detail::random_point_in(data.domain(), rng);
        const HarmonicityReport hr = harmonicity_residual(data, z, tol);
        if (std::abs(hr.residual) > pr.worst) {
          pr.worst = std::abs(hr.residual);
          pr.location = z;
        }
      }
      pr.pass = pr.worst < 1e-8;
      pr.detail = "worst residual " + fmt17(pr.worst);
    } catch (const SurfError& e) {
      pr.pass = false;
      pr.detail = e.what();
    }
    results.push_back(pr);
  }

  // singular-curve properties
  std::vector<Complex> seeds = cfg.seeds;
  if (seeds.empty()) seeds = detail::auto_seeds(data, 48, tol);

  PropertyResult ks_neg{"kappa_s_negative"};
  PropertyResult knu{"kappa_nu_vanishes"};
  PropertyResult eps{"epsilon_gamma_minus_one"};
  PropertyResult routes{"kappa_s_routes_agree"};
  PropertyResult sign_corr{"sign_kappa_s_equals_sign_K_E"};
  PropertyResult fold{"gauss_fold_determinant"};
  PropertyResult psi{"psi_det_equals_closed_form"};
  int first_kind_samples = 0;

  for (const Complex& seed : seeds) {
    SingularCurve curve;
    try {
      curve = trace_singular_curve(data, seed, 0.02, 4000, tol);
    } catch (const SurfError&) {
      continue;
    }
    for (const CurveSample& s : curve.samples) {
      PointJets pj;
      try {
        pj = jets_at(data, s.z, 3, tol);
      } catch (const SurfError&) {
        continue;
      }
      try {
        const GaussFoldReport fr = gauss_map_fold_from_jets(pj, tol);
        const double expect = -std::norm(pj.g.partial(1, 0) / pj.g.value());
        const double err = std::abs(fr.det - expect);
        if (err > fold.worst) {
          fold.worst = err;
          fold.location = s.z;
        }
        if (!fr.fold) fold.pass = false;
      } catch (const SurfError&) {
      }
      if (data.kind() == Pipeline::Maxface) {
        try {
          const PsiReport prr = psi_analysis_from_jets(pj, tol);
          const double err = std::abs(prr.psi_det - prr.psi);
          if (err > psi.worst) {
            psi.worst = err;
            psi.location = s.z;
          }
        } catch (const SurfError&) {
        }
      }
      if (std::isnan(s.kappa_s_closed)) continue;  // second kind
      ++first_kind_samples;
      if (!(s.kappa_s_closed < 0.0)) {
        ks_neg.pass = false;
        ks_neg.location = s.z;
      }
      if (std::abs(s.kappa_nu) > knu.worst) {
        knu.worst = std::abs(s.kappa_nu);
        knu.location = s.z;
      }
      if (s.epsilon_gamma != -1) {
        eps.pass = false;
        eps.location = s.z;
      }
      const double rel = std::abs(s.kappa_s_general - s.kappa_s_closed) /
                         std::abs(s.kappa_s_closed);
      if (rel > routes.worst) {
        routes.worst = rel;
        routes.location = s.z;
      }
      try {
        const double ke = data.kind() == Pipeline::Maxface
                              ? gaussian_curvature_E_from_jets(pj, tol)
                              : gaussian_curvature_E_cmc_from_jets(pj, data.H(), tol);
        if (!(ke < 0.0) || !(s.kappa_s_closed < 0.0)) {
          sign_corr.pass = false;
          sign_corr.location = s.z;
        }
      } catch (const SurfError&) {
      }
    }
  }

  knu.pass = knu.pass && knu.worst < 1e-8;
  routes.pass = routes.pass && routes.worst < 1e-7;
  fold.pass = fold.pass && fold.worst < 1e-10;
  psi.pass = psi.pass && psi.worst < 1e-8;
  knu.detail = "worst |kappa_nu| " + fmt17(knu.worst);
  routes.detail = "worst relative gap " + fmt17(routes.worst);
  fold.detail = "worst |det + |g_z/g|^2| " + fmt17(fold.worst);
  psi.detail = "worst |psi_det - psi| " + fmt17(psi.worst);
  ks_neg.detail = std::to_string(first_kind_samples) + " first-kind samples";
  eps.detail = ks_neg.detail;

  if (first_kind_samples == 0) {
    for (PropertyResult* p : {&ks_neg, &knu, &eps, &routes, &sign_corr, &fold})
      p->applicable = false;
    psi.applicable = data.kind() == Pipeline::Maxface && psi.worst > 0.0;
  }
  results.push_back(ks_neg);
  results.push_back(knu);
  results.push_back(eps);
  results.push_back(routes);
  results.push_back(sign_corr);
  results.push_back(fold);
  if (data.kind() == Pipeline::Maxface) results.push_back(psi);
  return results;
}

}  // namespace surflab
