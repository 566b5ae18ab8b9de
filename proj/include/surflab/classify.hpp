#pragma once

#include <cmath>
#include <map>
#include <string>

#include <json.hpp>

#include "surflab/cmc.hpp"
#include "surflab/maxface.hpp"
#include "surflab/surface.hpp"

namespace surflab {

enum class SingularityType {
  CuspidalEdge,
  Swallowtail,
  CuspidalButterfly,
  CuspidalCrossCap,
  CuspidalS1Minus,
  Degenerate,
  SecondKindUnresolved,
  Unclassified,
};

inline const char* singularity_name(SingularityType t) {
  switch (t) {
    case SingularityType::CuspidalEdge: return "CuspidalEdge";
    case SingularityType::Swallowtail: return "Swallowtail";
    case SingularityType::CuspidalButterfly: return "CuspidalButterfly";
    case SingularityType::CuspidalCrossCap: return "CuspidalCrossCap";
    case SingularityType::CuspidalS1Minus: return "CuspidalS1Minus";
    case SingularityType::Degenerate: return "Degenerate";
    case SingularityType::SecondKindUnresolved: return "SecondKindUnresolved";
    case SingularityType::Unclassified: return "Unclassified";
  }
  return "Unknown";
}

enum class PointKind { First, Second };

struct ClassifyReport {
  Complex point;
  bool nondegenerate = false;
  PointKind kind = PointKind::First;
  bool is_front = false;
  SingularityType type = SingularityType::Unclassified;
  std::map<std::string, double> conditions;
  double zero_tol = 0.0, guard_tol = 0.0;
  bool ambiguous = false;  // some strict test landed inside the guard band
};

namespace detail {

enum class ZeroClass { Zero, NonZero, Ambiguous };

inline ZeroClass classify_value(double v, const Tolerances& tol) {
  const double a = std::abs(v);
  if (a <= tol.zero_test) return ZeroClass::Zero;
  if (a >= tol.guard_factor * tol.zero_test) return ZeroClass::NonZero;
  return ZeroClass::Ambiguous;
}

}  // namespace detail

// Full decision tree over the phi-based criteria. The maxface tree uses the
// holomorphic-data criteria (front/CE/SW/CBF/CCR/cS1-); the cmc tree the
// harmonic ones (front/CE/SW/CCR plus the butterfly theorem, whose extra
// terms carry zbar-derivatives of phi). Strict-inequality values that land
// inside the guard band yield Unclassified, never a silent resolution.
inline ClassifyReport classify_from_jets(Pipeline kind, Complex p, const PointJets& pj,
                                         const Tolerances& tol = default_tolerances()) {
  using detail::ZeroClass;
  ClassifyReport r;
  r.point = p;
  r.zero_tol = tol.zero_test;
  r.guard_tol = tol.guard_factor * tol.zero_test;

  const Complex gz = pj.g.partial(1, 0);
  r.nondegenerate = std::abs(gz) > tol.zero_test;
  if (!r.nondegenerate) {
    r.type = SingularityType::Degenerate;
    return r;
  }

  const Jet phi = phi_jet(pj);  // needs order 2 for the deep tests
  const Complex phi0 = phi.value();
  r.conditions["re_phi"] = phi0.real();
  r.conditions["im_phi"] = phi0.imag();
  r.kind = std::abs(phi0.imag()) > tol.zero_test ? PointKind::First : PointKind::Second;
  r.is_front = std::abs(phi0.real()) > tol.zero_test;

  const ZeroClass imc = detail::classify_value(phi0.imag(), tol);
  const ZeroClass rec = detail::classify_value(phi0.real(), tol);

  if (phi.order() < 2 || pj.g.order() < 3)
    throw SurfError(Errc::InsufficientJetOrder, "classification needs order-3 g jets");

  const Jet T = (pj.g.truncated(pj.g.order() - 1) / d_z(pj.g)).truncated(1);  // g/g_z
  const Jet A = T * d_z(phi).truncated(1);  // (g/g_z) phi_z
  const Complex deep_z = T.value() * A.partial(1, 0);

  if (kind == Pipeline::Maxface) {
    r.conditions["sw"] = A.value().real();        // Re((g/g_z) phi_z)
    r.conditions["ccr"] = A.value().imag();       // Im((g/g_z) phi_z)
    r.conditions["cbf"] = deep_z.imag();          // Im((g/g_z)((g/g_z) phi_z)_z)
    r.conditions["cs1"] = deep_z.real();          // Re((g/g_z)((g/g_z) phi_z)_z)
  } else {
    const Jet Tc = conj(T);
    const Jet B = Tc * d_zbar(phi).truncated(1);  // conj(g/g_z) phi_zbar
    const Complex deep_zb = Tc.value() * B.partial(0, 1);
    const double phi_zzb_term = phi.partial(1, 1).imag() / std::norm(gz);
    r.conditions["sw"] = A.value().real() - B.value().real();
    r.conditions["ccr"] = A.value().imag() - B.value().imag();
    r.conditions["cbf"] = deep_z.imag() + deep_zb.imag() - phi_zzb_term;
    r.conditions["sw_zbar_term"] = B.value().real();
    r.conditions["ccr_zbar_term"] = B.value().imag();
    r.conditions["cbf_zbar_term"] = deep_zb.imag();
    r.conditions["cbf_mixed_term"] = phi_zzb_term;
  }

  auto ambiguous = [&]() {
    r.ambiguous = true;
    r.type = SingularityType::Unclassified;
    return r;
  };

  if (imc == ZeroClass::Ambiguous || rec == ZeroClass::Ambiguous) return ambiguous();

  if (imc == ZeroClass::NonZero) {
    // first kind
    if (rec == ZeroClass::NonZero) {
      r.type = SingularityType::CuspidalEdge;
      return r;
    }
    // non-front branch
    switch (detail::classify_value(r.conditions["ccr"], tol)) {
      case ZeroClass::NonZero:
        r.type = SingularityType::CuspidalCrossCap;
        return r;
      case ZeroClass::Ambiguous:
        return ambiguous();
      case ZeroClass::Zero:
        break;
    }
    if (kind == Pipeline::Cmc) {
      // the harmonic criteria list stops here
      r.type = SingularityType::Unclassified;
      return r;
    }
    switch (detail::classify_value(r.conditions["cs1"], tol)) {
      case ZeroClass::NonZero:
        r.type = SingularityType::CuspidalS1Minus;
        return r;
      case ZeroClass::Ambiguous:
        return ambiguous();
      case ZeroClass::Zero:
        r.type = SingularityType::Unclassified;
        return r;
    }
  }

  // second kind
  if (rec == ZeroClass::Zero) {
    // phi = 0 contradicts non-degeneracy; report rather than guess
    r.type = SingularityType::Unclassified;
    return r;
  }
  switch (detail::classify_value(r.conditions["sw"], tol)) {
    case ZeroClass::NonZero:
      r.type = SingularityType::Swallowtail;
      return r;
    case ZeroClass::Ambiguous:
      return ambiguous();
    case ZeroClass::Zero:
      break;
  }
  switch (detail::classify_value(r.conditions["cbf"], tol)) {
    case ZeroClass::NonZero:
      r.type = SingularityType::CuspidalButterfly;
      return r;
    case ZeroClass::Ambiguous:
      return ambiguous();
    case ZeroClass::Zero:
      r.type = SingularityType::SecondKindUnresolved;
      return r;
  }
  return r;
}

inline ClassifyReport classify(const SurfaceData& data, Complex p,
                               const Tolerances& tol = default_tolerances()) {
  PointJets pj = jets_at(data, p, 3, tol);
  if (std::abs(lambda_hat_of(pj)) >= tol.on_singular_set)
    throw SurfError(Errc::NotSingular, "point is not on the singular set");
  return classify_from_jets(data.kind(), p, pj, tol);
}

struct GaussFoldReport {
  double det = 0.0;  // det(xi, eta^nu) = Im(conj(xi) eta^nu)
  bool fold = false;
};

// Fold test for the Gauss map: eta^nu = conj(g_z/g); the determinant equals
// -|g_z/g|^2, i.e. -|g_z|^2 on the singular set, hence never zero at
// non-degenerate points.
inline GaussFoldReport gauss_map_fold_from_jets(const PointJets& pj,
                                                const Tolerances& tol = default_tolerances()) {
  const Complex gz = pj.g.partial(1, 0);
  if (std::abs(gz) <= tol.zero_test)
    throw SurfError(Errc::Degenerate, "gauss map fold test needs a non-degenerate point");
  const Complex xi = xi_value(pj);
  const Complex eta_nu = std::conj(gz / pj.g.value());
  GaussFoldReport r;
  r.det = (std::conj(xi) * eta_nu).imag();
  r.fold = std::abs(r.det) > tol.zero_test;
  return r;
}

inline GaussFoldReport gauss_map_fold(const SurfaceData& data, Complex p,
                                      const Tolerances& tol = default_tolerances()) {
  return gauss_map_fold_from_jets(jets_at(data, p, 1, tol), tol);
}

inline nlohmann::json to_json(const ClassifyReport& r) {
  nlohmann::json j;
  j["point"] = {r.point.real(), r.point.imag()};
  j["nondegenerate"] = r.nondegenerate;
  j["kind"] = r.kind == PointKind::First ? "first" : "second";
  j["front"] = r.is_front;
  j["type"] = singularity_name(r.type);
  nlohmann::json conds;
  for (const auto& [k, v] : r.conditions) conds[k] = v;
  j["conditions"] = conds;
  j["tolerances"] = {{"zero", r.zero_tol}, {"guard", r.guard_tol}};
  if (r.ambiguous) j["ambiguous"] = true;
  return j;
}

}  // namespace surflab
