#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "surflab/errors.hpp"
#include "surflab/vec3.hpp"

namespace surflab {
namespace detail {

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
template <int N>
struct GaussLegendre {
  std::array<double, N> x{}, w{};

  GaussLegendre() {
    const double pi = 3.14159265358979323846;
    const int m = (N + 1) / 2;
    for (int i = 0; i < m; ++i) {
      double xi = std::cos(pi * (i + 0.75) / (N + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < N; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j + 1.0) * xi * p2 - j * p3) / (j + 1.0);
        }
        pp = N * (xi * p1 - p2) / (xi * xi - 1.0);
        const double dx = p1 / pp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      x[i] = -xi;
      x[N - 1 - i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * pp * pp);
      w[N - 1 - i] = w[i];
    }
  }
};

inline const GaussLegendre<15>& gl15() {
  static const GaussLegendre<15> rule;
  return rule;
}

}  // namespace detail

// Adaptive Gauss-Legendre over s in [a,b] of a Vec3-valued integrand.
// 15-point base rule, bisection until whole-vs-halves agree to tol.
inline Vec3 integrate_adaptive(const std::function<Vec3(double)>& f, double a, double b,
                               double tol, int max_depth = 30) {
  const auto& rule = detail::gl15();
  auto gl = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    Vec3 acc{};
    for (int i = 0; i < 15; ++i) acc += rule.w[i] * f(mid + half * rule.x[i]);
    return acc * half;
  };
  struct Rec {
    double lo, hi, tol;
    int depth;
  };
  Vec3 total{};
  std::array<Rec, 64> stack;
  int top = 0;
  stack[top++] = {a, b, tol, 0};
  while (top > 0) {
    const Rec r = stack[--top];
    const Vec3 whole = gl(r.lo, r.hi);
    const double mid = 0.5 * (r.lo + r.hi);
    const Vec3 halves = gl(r.lo, mid) + gl(mid, r.hi);
    const Vec3 diff = whole - halves;
    const double err = std::max({std::abs(diff.x), std::abs(diff.y), std::abs(diff.z)});
    if (err <= r.tol || err <= 1e-16) {
      total += halves;
      continue;
    }
    if (r.depth >= max_depth || top + 2 > static_cast<int>(stack.size()))
      throw SurfError(Errc::NonConvergence, "adaptive quadrature exceeded its depth limit");
    stack[top++] = {r.lo, mid, 0.5 * r.tol, r.depth + 1};
    stack[top++] = {mid, r.hi, 0.5 * r.tol, r.depth + 1};
  }
  return total;
}

}  // namespace surflab
