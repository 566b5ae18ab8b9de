#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "surflab/cmc.hpp"

using namespace surflab;

namespace {

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
bool closec(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

SurfaceData tanh_strip() {
  return SurfaceData::cmc(parse("tanh(0.4*(z+zbar))"), 1.0, DomainSpec::disk(Complex(0, 0), 0.5));
}

// order-3 g jet with the singular-point constraints |g|=1, g_zbar=0, g_zzbar=0
PointJets singular_cmc_jets(Complex g0, Complex gz, Complex gzz, Complex gzbzb, Complex w0,
                            Complex wz, Complex wzb) {
  PointJets pj;
  Jet g(3);
  g.set_partial(0, 0, g0);
  g.set_partial(1, 0, gz);
  g.set_partial(2, 0, gzz);
  g.set_partial(0, 2, gzbzb);
  Jet w(2);
  w.set_partial(0, 0, w0);
  w.set_partial(1, 0, wz);
  w.set_partial(0, 1, wzb);
  pj.g = g;
  pj.omega = w;
  return pj;
}

}  // namespace

TEST_CASE("harmonicity residual of holomorphic g with formula omega") {
  Jet g = eval_jet(parse("z"), Complex(0.4, 0.1), 3);
  const Complex w = omega_from_g(g);
  HarmonicityReport r = harmonicity_residual_from_jets(g, w);
  CHECK(closec(r.residual, Complex(0, 0)));
  CHECK_FALSE(r.omega_nonzero);  // omega vanishes identically: degenerate data
}

TEST_CASE("harmonicity residual detects the non-example g = z zbar") {
  // At z = 2 the formula omega is 2/225 and the residual is
  // 1 + 2(1-16)*4*2*(2/225) = -17/15.
  SurfaceData d = SurfaceData::cmc(parse("z*zbar"), 1.0, DomainSpec::disk(Complex(2, 0), 1.0));
  HarmonicityReport r = harmonicity_residual(d, Complex(2.0, 0.0));
  CHECK(closec(r.omega_value, Complex(2.0 / 225.0, 0.0)));
  CHECK(closec(r.residual, Complex(-17.0 / 15.0, 0.0), 1e-13));
  CHECK(r.omega_nonzero);
}

TEST_CASE("synthetic jet built to satisfy the equation has zero residual") {
  Jet g(3);
  g.set_partial(0, 0, Complex(0.3, 0.2));
  g.set_partial(1, 0, Complex(0.5, -0.1));
  g.set_partial(0, 1, Complex(0.2, 0.05));
  const Complex w0(0.7, 0.4);
  const Complex forced = -2.0 * (1.0 - std::norm(g.value())) * std::conj(g.value()) *
                         g.partial(1, 0) * std::conj(w0);
  g.set_partial(1, 1, forced);
  HarmonicityReport r = harmonicity_residual_from_jets(g, w0);
  CHECK(std::abs(r.residual) < 1e-14);
}

TEST_CASE("the tanh strip is an extended harmonic map") {
  SurfaceData d = tanh_strip();
  for (double u = -0.4; u <= 0.4; u += 0.1)
    for (double v = -0.2; v <= 0.2; v += 0.1) {
      if (!d.domain().contains(Complex(u, v))) continue;
      HarmonicityReport r = harmonicity_residual(d, Complex(u, v));
      CHECK(std::abs(r.residual) < 1e-12);
      CHECK(r.omega_nonzero);
      ClosednessReport c = closedness_residual(d, Complex(u, v));
      CHECK(c.max_abs < 1e-12);
    }
}

TEST_CASE("closedness residual vanishes exactly with harmonicity on jet families") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int k = 0; k < 40; ++k) {
    Jet g(3);
    const Complex g0(0.25 + 0.3 * u(rng), 0.3 * u(rng));
    g.set_partial(0, 0, g0);
    g.set_partial(1, 0, Complex(u(rng), u(rng)));
    g.set_partial(0, 1, Complex(u(rng), u(rng)));
    g.set_partial(2, 0, Complex(u(rng), u(rng)));
    g.set_partial(0, 2, Complex(u(rng), u(rng)));
    // remaining order-2/3 entries stay zero except the harmonic g_zzbar
    const Complex w_guess = std::conj(g.partial(0, 1)) /
                            ((1.0 - std::norm(g0)) * (1.0 - std::norm(g0)));
    const Complex harmonic_gzzb =
        -2.0 * (1.0 - std::norm(g0)) * std::conj(g0) * g.partial(1, 0) * std::conj(w_guess);

    for (double s : {0.0, 0.08, -0.2}) {
      g.set_partial(1, 1, harmonic_gzzb + s);
      PointJets pj;
      pj.g = g;
      pj.omega = omega_formula_jet(g);
      HarmonicityReport hr = harmonicity_residual_from_jets(g, pj.omega.value());
      ClosednessReport cr = closedness_residual_from_jets(pj, 1.0);
      if (s == 0.0) {
        CHECK(std::abs(hr.residual) < 1e-13);
        CHECK(cr.max_abs < 1e-12);
      } else {
        CHECK(std::abs(hr.residual) > 1e-3 * std::abs(s));
        CHECK(cr.max_abs > 1e-8);
      }
    }
  }
}

TEST_CASE("zero-length path integrates to the origin") {
  Vec3 r = integrate_cmc(tanh_strip(), PathSpec{{Complex(0.1, 0.1)}});
  CHECK(close(norm(r), 0.0));
}

TEST_CASE("two-path integration agrees on the tanh strip") {
  SurfaceData d = tanh_strip();
  Vec3 a = integrate_cmc(d, PathSpec{{Complex(-0.3, -0.2), Complex(0.3, 0.2)}});
  Vec3 b = integrate_cmc(d, PathSpec{{Complex(-0.3, -0.2), Complex(0.2, -0.25),
                                      Complex(-0.1, 0.3), Complex(0.3, 0.2)}});
  CHECK(norm(a - b) < 1e-10);
}

TEST_CASE("holomorphic g with explicit omega and H=2 reduces to the maxface integral") {
  SurfaceData cmc_enneper = SurfaceData::cmc(parse("z"), 2.0,
                                             DomainSpec::disk(Complex(0, 0), 1.5), parse("1"));
  SurfaceData max_enneper =
      SurfaceData::maxface(parse("z"), parse("1"), DomainSpec::disk(Complex(0, 0), 1.5));
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int k = 0; k < 10; ++k) {
    const Complex target(u(rng), u(rng));
    Vec3 a = integrate_cmc(cmc_enneper, PathSpec::segment(Complex(0, 0), target));
    Vec3 b = integrate(max_enneper, PathSpec::segment(Complex(0, 0), target));
    CHECK(norm(a - b) < 1e-10);
  }
}

TEST_CASE("non-harmonic data is refused by the closedness gate") {
  SurfaceData d =
      SurfaceData::cmc(parse("0.5*z+0.2*zbar"), 1.0, DomainSpec::disk(Complex(0, 0), 1.0));
  CHECK_THROWS_MATCHES(
      integrate_cmc(d, PathSpec{{Complex(-0.5, 0), Complex(0.5, 0)}}), SurfError,
      Catch::Matchers::Predicate<SurfError>(
          [](const SurfError& e) { return e.code() == Errc::NotClosed; }));
}

TEST_CASE("cmc Gaussian curvature at a synthetic singular jet") {
  PointJets pj = singular_cmc_jets(Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0),
                                   Complex(1, 0), Complex(0, 0), Complex(0, 0));
  // true value H^2 (|g_zbar|^2-|g_z|^2)/(q^2 |w|^2) with q = 8: -1/64
  CHECK(close(gaussian_curvature_E_cmc_from_jets(pj, 1.0), -1.0 / 64.0));
  CHECK(close(gaussian_curvature_E_cmc_from_jets(pj, 2.0), -4.0 / 64.0));
  CHECK(gaussian_curvature_E_cmc_from_jets(pj, 1.0) < 0.0);
}

TEST_CASE("cmc K_E vanishes when |g_z| = |g_zbar| and changes sign across it") {
  double prev = 0.0;
  for (double s : {0.5, 0.8, 1.0, 1.2, 1.5}) {
    Jet g(3);
    g.set_partial(0, 0, Complex(0.4, 0.1));
    g.set_partial(1, 0, Complex(1.0, 0.0));
    g.set_partial(0, 1, Complex(0.0, s));
    PointJets pj;
    pj.g = g;
    pj.omega = Jet::constant(Complex(0.9, 0.2), 3);
    const double ke = gaussian_curvature_E_cmc_from_jets(pj, 1.3);
    if (s < 1.0) CHECK(ke < 0.0);
    if (s == 1.0) CHECK(close(ke, 0.0));
    if (s > 1.0) CHECK(ke > 0.0);
    if (prev != 0.0 && s != 1.0) CHECK(ke > prev);
    prev = ke;
  }
}

TEST_CASE("cmc Lorentzian curvature H^2 (|g_z/g_zbar|^2 - 1)") {
  // the tanh strip has g_z = g_zbar, so K_L vanishes on it
  SurfaceData d = tanh_strip();
  PointJets pj = jets_at(d, Complex(0.2, 0.1), 2);
  CHECK(close(gaussian_curvature_L_cmc_from_jets(pj, 1.0), 0.0, 1e-13));

  Jet g(3);
  g.set_partial(0, 0, Complex(0.4, 0.0));
  g.set_partial(1, 0, Complex(2.0, 0.0));
  g.set_partial(0, 1, Complex(0.0, 1.0));
  PointJets synthetic{g, Jet::constant(Complex(1, 0), 3)};
  CHECK(close(gaussian_curvature_L_cmc_from_jets(synthetic, 3.0), 27.0));  // 9 (4 - 1)

  Jet gone(3);
  gone.set_partial(0, 0, std::polar(1.0, 0.4));
  gone.set_partial(1, 0, Complex(1.0, 0.0));
  PointJets on_set{gone, Jet::constant(Complex(1, 0), 3)};
  CHECK_THROWS_MATCHES(gaussian_curvature_L_cmc_from_jets(on_set, 1.0), SurfError,
                       Catch::Matchers::Predicate<SurfError>([](const SurfError& e) {
                         return e.code() == Errc::OnSingularSet;
                       }));
}

TEST_CASE("xi f from direct differentiation matches the closed form on singular jets") {
  std::mt19937 rng(15);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    const Complex g0 = std::polar(1.0, 3.0 * u(rng));
    const Complex gz(1.0 + 0.5 * u(rng), u(rng));
    const Complex w0(0.8 + 0.3 * u(rng), 0.4 * u(rng));
    const double H = (k % 2) ? 2.0 : -1.5;
    PointJets pj = singular_cmc_jets(g0, gz, Complex(u(rng), u(rng)),
                                     Complex(u(rng), u(rng)), w0, Complex(u(rng), u(rng)),
                                     Complex(u(rng), u(rng)));
    const Complex xi = xi_value(pj);
    const CVec3 fz = fz_values(Pipeline::Cmc, pj, H);
    const Vec3 xif{2.0 * (xi * fz[0]).real(), 2.0 * (xi * fz[1]).real(),
                   2.0 * (xi * fz[2]).real()};
    const Complex phi = phi_value(pj);
    const double c = 4.0 * std::norm(w0) / H * phi.imag();
    const Vec3 expected{-c, c * g0.real(), c * g0.imag()};
    CHECK(norm(xif - expected) < 1e-10);
  }
}

TEST_CASE("butterfly criterion reduces to the maxface one on holomorphic data") {
  // butterfly data g=z, omega=e^{-i(z-1)}/z^2 at p=1: verdict true
  SurfaceData bf = SurfaceData::cmc(parse("z"), 1.0, DomainSpec::disk(Complex(1, 0), 0.9),
                                    parse("exp(-i*(z-1))/z^2"));
  ButterflyReport r = butterfly_test_cmc(bf, Complex(1.0, 0.0));
  CHECK(close(r.im_phi, 0.0, 1e-13));
  CHECK(close(r.re_phi, 1.0, 1e-13));
  CHECK(close(r.sw_condition, 0.0, 1e-12));   // Re(z phi_z) = 0, zbar term 0
  CHECK(close(r.cbf_condition, 1.0, 1e-12));  // Im(z(z phi_z)_z) = 1
  CHECK(r.verdict);
}

TEST_CASE("Enneper swallowtail point is not a cmc butterfly") {
  SurfaceData d = SurfaceData::cmc(parse("z"), 1.0, DomainSpec::disk(Complex(0, 0), 1.5),
                                   parse("1"));
  ButterflyReport r = butterfly_test_cmc(d, Complex(1.0, 0.0));
  CHECK(close(r.im_phi, 0.0));
  CHECK(close(r.re_phi, 1.0));
  CHECK(close(r.sw_condition, -2.0, 1e-12));
  CHECK_FALSE(r.verdict);
}

TEST_CASE("non-front synthetic point fails the butterfly test on the first condition") {
  // phi purely imaginary: Re phi = 0
  PointJets pj = singular_cmc_jets(Complex(1, 0), Complex(0, 1), Complex(0, 0), Complex(0, 0),
                                   Complex(1, 0), Complex(0, 0), Complex(0, 0));
  ButterflyReport r = butterfly_test_cmc_from_jets(pj);
  CHECK(close(r.re_phi, 0.0));
  CHECK_FALSE(r.verdict);
}

TEST_CASE("discrete harmonic oracle: relaxation, closedness, two-path agreement") {
  auto coarse = oracles::solve_harmonic_grid(65, 0.32, Complex(0.2, 0.0), Complex(0.1, 0.05));
  auto fine = oracles::solve_harmonic_grid(129, 0.32, Complex(0.2, 0.0), Complex(0.1, 0.05));
  auto extrapolated = oracles::richardson(coarse, fine);
  oracles::GridJetSource source(std::move(extrapolated));

  // interior closedness residual of the reconstructed field
  double worst = 0.0;
  for (double uu = -0.2; uu <= 0.2; uu += 0.05)
    for (double vv = -0.2; vv <= 0.2; vv += 0.05) {
      ClosednessReport cr = closedness_residual_from_jets(source(Complex(uu, vv)), 1.0);
      worst = std::max(worst, cr.max_abs);
    }
  INFO("worst interior closedness residual " << worst);
  CHECK(worst < 1e-6);

  const Complex from(-0.2, -0.15), to(0.2, 0.15);
  Vec3 a = integrate_cmc_jets(source, 1.0, PathSpec{{from, to}});
  Vec3 b = integrate_cmc_jets(source, 1.0,
                              PathSpec{{from, Complex(0.15, -0.2), Complex(-0.1, 0.2), to}});
  INFO("two-path discrepancy " << norm(a - b));
  CHECK(norm(a - b) < 1e-6);
}
