#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "surflab/maxface.hpp"

using namespace surflab;

namespace {

const double kPi = 3.14159265358979323846;

SurfaceData enneper() {
  return SurfaceData::maxface(parse("z"), parse("1"), DomainSpec::disk(Complex(0, 0), 1.5));
}

SurfaceData s1minus_data() {
  return SurfaceData::maxface(parse("z"), parse("-i*exp(-i*(z-1))/z^2"),
                              DomainSpec::disk(Complex(1, 0), 0.9));
}

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("Enneper integral matches the closed-form antiderivative") {
  SurfaceData d = enneper();
  Vec3 f1 = integrate(d, PathSpec::segment(Complex(0, 0), Complex(1, 0)));
  CHECK(close(f1.x, -1.0, 1e-11));
  CHECK(close(f1.y, 4.0 / 3.0, 1e-11));
  CHECK(close(f1.z, 0.0, 1e-11));

  Vec3 fi = integrate(d, PathSpec::segment(Complex(0, 0), Complex(0, 1)));
  CHECK(close(fi.x, 1.0, 1e-11));
  CHECK(close(fi.y, 0.0, 1e-11));
  CHECK(close(fi.z, -4.0 / 3.0, 1e-11));

  Vec3 zero = integrate(d, PathSpec{{Complex(0.4, 0.2)}});
  CHECK(close(norm(zero), 0.0));
}

TEST_CASE("path independence over random two-leg detours") {
  SurfaceData d = enneper();
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int k = 0; k < 20; ++k) {
    const Complex target(u(rng), u(rng));
    const Complex mid1(u(rng), u(rng)), mid2(u(rng), u(rng));
    Vec3 direct = integrate(d, PathSpec::segment(Complex(0, 0), target));
    Vec3 detour = integrate(d, PathSpec{{Complex(0, 0), mid1, mid2, target}});
    CHECK(norm(direct - detour) < 1e-9);
  }
}

TEST_CASE("paths must stay inside the domain") {
  CHECK_THROWS_AS(integrate(enneper(), PathSpec::segment(Complex(0, 0), Complex(2, 0))),
                  SurfError);
}

TEST_CASE("Enneper Gaussian curvature") {
  SurfaceData d = enneper();
  CHECK(close(gaussian_curvature_E(d, Complex(0, 0)), -4.0));
  CHECK(close(gaussian_curvature_E(d, std::polar(1.0, 0.3)), -1.0 / 16.0, 1e-14));
  SurfaceData d2 =
      SurfaceData::maxface(parse("z"), parse("2"), DomainSpec::disk(Complex(0, 0), 1.5));
  CHECK(close(gaussian_curvature_E(d2, Complex(0, 0)), -1.0));
}

TEST_CASE("K_E is strictly negative off the zeros of g_z") {
  SurfaceData d = enneper();
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    Complex z(u(rng), u(rng));
    CHECK(gaussian_curvature_E(d, z) < 0.0);
  }
}

TEST_CASE("Lorentzian curvature values and guards") {
  SurfaceData d = enneper();
  CHECK(close(gaussian_curvature_L(d, Complex(0, 0)), 1.0));
  CHECK(close(gaussian_curvature_L(d, Complex(0.5, 0)), 256.0 / 81.0, 1e-12));
  CHECK_THROWS_MATCHES(gaussian_curvature_L(d, std::polar(1.0, 0.2)), SurfError,
                       Catch::Matchers::Predicate<SurfError>([](const SurfError& e) {
                         return e.code() == Errc::OnSingularSet;
                       }));
  // g_z = 0 at the origin for g = z^2: K_L = 0
  SurfaceData dz2 =
      SurfaceData::maxface(parse("z^2"), parse("1"), DomainSpec::disk(Complex(0, 0), 1.5));
  CHECK(close(gaussian_curvature_L(dz2, Complex(0, 0)), 0.0));
}

TEST_CASE("K_L is non-negative at regular points") {
  SurfaceData d = enneper();
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int k = 0; k < 50; ++k) {
    CHECK(gaussian_curvature_L(d, Complex(u(rng), u(rng))) >= 0.0);
  }
}

TEST_CASE("closed-form nu_z matches finite differences") {
  SurfaceData d = enneper();
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int k = 0; k < 25; ++k) {
    const Complex z(u(rng), u(rng));
    PointJets pj = jets_at(d, z, 1);
    const CVec3 nz = nu_z_from_jets(pj);
    for (int c = 0; c < 3; ++c) {
      auto comp = [&](Complex w) -> Complex {
        const Vec3 nu = unit_normal(eval_value(d.g(), w));
        return c == 0 ? nu.x : c == 1 ? nu.y : nu.z;
      };
      Jet fd = fd_oracle(comp, z, 1e-4);
      CHECK(std::abs(nz[c] - fd.partial(1, 0)) < 1e-8);
    }
  }
}

TEST_CASE("psi report at the Enneper cuspidal cross cap point") {
  PsiReport r = psi_analysis(enneper(), std::polar(1.0, kPi / 4.0));
  CHECK(close(r.conditions[0], 0.0, 1e-14));  // Re phi
  CHECK(close(r.psi, 0.0, 1e-14));
  CHECK(close(r.conditions[1], 2.0, 1e-12));  // Im(z phi_z) = 2
  CHECK(close(r.a_value, 0.0, 1e-12));
  CHECK(close(r.psi_det, r.psi, 1e-12));
}

TEST_CASE("psi report at the Enneper swallowtail point") {
  PsiReport r = psi_analysis(enneper(), Complex(1.0, 0.0));
  CHECK(close(r.psi, 0.0, 1e-14));      // Im phi = 0 there
  CHECK(close(r.psi_det, 0.0, 1e-12));
}

TEST_CASE("psi determinant route equals the closed form along the circle") {
  SurfaceData d = enneper();
  for (int k = 0; k < 50; ++k) {
    const double t = 2.0 * kPi * (k + 0.37) / 50.0;
    PsiReport r = psi_analysis(d, std::polar(1.0, t));
    CHECK(std::abs(r.psi_det - r.psi) < 1e-8);
    // closed-form value for g=z, omega=1: psi = sin(4t)/2
    CHECK(close(r.psi, 0.5 * std::sin(4.0 * t), 1e-12));
  }
}

TEST_CASE("S1- data: conditions (0,0,-1) and a = -32 at z=1") {
  PsiReport r = psi_analysis(s1minus_data(), Complex(1.0, 0.0));
  CHECK(close(r.conditions[0], 0.0, 1e-12));
  CHECK(close(r.conditions[1], 0.0, 1e-12));
  CHECK(close(r.conditions[2], -1.0, 1e-12));
  CHECK(close(r.a_value, -32.0, 1e-10));
}

TEST_CASE("whenever the three conditions vanish, a vanishes too") {
  // Thm-level consistency: a is proportional to the third condition.
  SurfaceData d = s1minus_data();
  for (int k = -10; k <= 10; ++k) {
    const double t = 0.05 * k;
    PsiReport r = psi_analysis(d, std::polar(1.0, t));
    if (std::abs(r.conditions[0]) < 1e-10 && std::abs(r.conditions[1]) < 1e-10 &&
        std::abs(r.conditions[2]) < 1e-10)
      CHECK(std::abs(r.a_value) < 1e-8);
  }
}

TEST_CASE("degenerate point is refused by psi analysis") {
  PointJets pj;
  pj.g = Jet::constant(Complex(1.0, 0.0), 3);
  pj.omega = Jet::constant(Complex(1.0, 0.0), 3);
  CHECK_THROWS_MATCHES(psi_analysis_from_jets(pj), SurfError,
                       Catch::Matchers::Predicate<SurfError>([](const SurfError& e) {
                         return e.code() == Errc::Degenerate;
                       }));
}
