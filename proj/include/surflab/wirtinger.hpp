#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>

#include "surflab/errors.hpp"
#include "surflab/tolerances.hpp"

namespace surflab {

using Complex = std::complex<double>;

inline constexpr int kMaxJetOrder = 3;
inline constexpr int kJetSlots = 10;  // multi-indices (a,b) with a+b <= 3

// Graded index of the multi-index (a,b): a counts d/dz, b counts d/dzbar.
constexpr int jet_index(int a, int b) {
  const int s = a + b;
  return s * (s + 1) / 2 + b;
}

constexpr int jet_slot_count(int order) { return (order + 1) * (order + 2) / 2; }

constexpr double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

// Dense truncated table of Wirtinger partials of a complex-valued function of
// (z, zbar) at a point. The two derivations commute; the order is fixed at
// construction. Entries that are zero stay bit-exact zero through arithmetic,
// so jets of holomorphic expressions have exactly vanishing zbar partials.
class Jet {
 public:
  explicit Jet(int order = kMaxJetOrder) : order_(check_order(order)) {}

  static Jet constant(Complex c, int order = kMaxJetOrder) {
    Jet j(order);
    j.p_[0] = c;
    return j;
  }
  // The coordinate function z at base point z0.
  static Jet var_z(Complex z0, int order = kMaxJetOrder) {
    Jet j(order);
    j.p_[jet_index(0, 0)] = z0;
    if (order >= 1) j.p_[jet_index(1, 0)] = 1.0;
    return j;
  }
  // The coordinate function zbar at base point z0.
  static Jet var_zbar(Complex z0, int order = kMaxJetOrder) {
    Jet j(order);
    j.p_[jet_index(0, 0)] = std::conj(z0);
    if (order >= 1) j.p_[jet_index(0, 1)] = 1.0;
    return j;
  }

  int order() const { return order_; }
  Complex value() const { return p_[0]; }

  Complex partial(int a, int b) const {
    require_index(a, b);
    return p_[jet_index(a, b)];
  }
  void set_partial(int a, int b, Complex v) {
    require_index(a, b);
    p_[jet_index(a, b)] = v;
  }

  Jet truncated(int order) const {
    if (order > order_) throw SurfError(Errc::InsufficientJetOrder, "cannot raise jet order");
    Jet r(order);
    for (int i = 0; i < jet_slot_count(order); ++i) r.p_[i] = p_[i];
    return r;
  }

  Jet operator-() const {
    Jet r(order_);
    for (int i = 0; i < jet_slot_count(order_); ++i) r.p_[i] = -p_[i];
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    const int n = shared_order(a, b);
    Jet r(n);
    for (int i = 0; i < jet_slot_count(n); ++i) r.p_[i] = a.p_[i] + b.p_[i];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    const int n = shared_order(a, b);
    Jet r(n);
    for (int i = 0; i < jet_slot_count(n); ++i) r.p_[i] = a.p_[i] - b.p_[i];
    return r;
  }

  // Leibniz rule in both derivations.
  friend Jet operator*(const Jet& a, const Jet& b) {
    const int n = shared_order(a, b);
    Jet r(n);
    for (int s = 0; s <= n; ++s)
      for (int bb = 0; bb <= s; ++bb) {
        const int aa = s - bb;
        Complex acc = 0.0;
        for (int p = 0; p <= aa; ++p)
          for (int q = 0; q <= bb; ++q)
            acc += binom(aa, p) * binom(bb, q) * a.p_[jet_index(p, q)] *
                   b.p_[jet_index(aa - p, bb - q)];
        r.p_[jet_index(aa, bb)] = acc;
      }
    return r;
  }

  friend Jet operator+(const Jet& a, Complex c) { return a + Jet::constant(c, a.order_); }
  friend Jet operator+(Complex c, const Jet& a) { return a + c; }
  friend Jet operator-(const Jet& a, Complex c) { return a - Jet::constant(c, a.order_); }
  friend Jet operator-(Complex c, const Jet& a) { return Jet::constant(c, a.order_) - a; }
  friend Jet operator*(const Jet& a, Complex c) {
    Jet r(a.order_);
    for (int i = 0; i < jet_slot_count(a.order_); ++i) r.p_[i] = a.p_[i] * c;
    return r;
  }
  friend Jet operator*(Complex c, const Jet& a) { return a * c; }

  // Solves r*b = a grade by grade; exact zero propagation.
  friend Jet operator/(const Jet& a, const Jet& b) {
    const int n = shared_order(a, b);
    if (std::abs(b.p_[0]) < default_tolerances().machine_zero)
      throw SurfError(Errc::DivisionByZero, "jet division by zero");
    Jet r(n);
    for (int s = 0; s <= n; ++s)
      for (int bb = 0; bb <= s; ++bb) {
        const int aa = s - bb;
        Complex acc = a.p_[jet_index(aa, bb)];
        for (int p = 0; p <= aa; ++p)
          for (int q = 0; q <= bb; ++q) {
            if (p == aa && q == bb) continue;
            acc -= binom(aa, p) * binom(bb, q) * r.p_[jet_index(p, q)] *
                   b.p_[jet_index(aa - p, bb - q)];
          }
        r.p_[jet_index(aa, bb)] = acc / b.p_[0];
      }
    return r;
  }
  friend Jet operator/(const Jet& a, Complex c) {
    if (std::abs(c) < default_tolerances().machine_zero)
      throw SurfError(Errc::DivisionByZero, "jet division by zero constant");
    return a * (1.0 / c);
  }
  friend Jet operator/(Complex c, const Jet& a) { return Jet::constant(c, a.order_) / a; }

 private:
  static int check_order(int order) {
    if (order < 0 || order > kMaxJetOrder)
      throw SurfError(Errc::InsufficientJetOrder, "jet order must be in 0..3");
    return order;
  }
  static int shared_order(const Jet& a, const Jet& b) {
    if (a.order_ != b.order_)
      throw SurfError(Errc::InsufficientJetOrder, "jet operands must share order");
    return a.order_;
  }
  void require_index(int a, int b) const {
    if (a < 0 || b < 0 || a + b > order_)
      throw SurfError(Errc::InsufficientJetOrder, "partial index exceeds jet order");
  }

  int order_;
  std::array<Complex, kJetSlots> p_{};
};

// Wirtinger conjugation: swaps the derivations and conjugates.
inline Jet conj(const Jet& j) {
  Jet r(j.order());
  for (int s = 0; s <= j.order(); ++s)
    for (int b = 0; b <= s; ++b) r.set_partial(s - b, b, std::conj(j.partial(b, s - b)));
  return r;
}

inline Jet re(const Jet& j) { return (j + conj(j)) * Complex(0.5, 0.0); }
inline Jet im(const Jet& j) { return (j - conj(j)) * Complex(0.0, -0.5); }
inline Jet abs2(const Jet& j) { return j * conj(j); }

// d/dz and d/dzbar as jet-to-jet maps (order drops by one).
inline Jet d_z(const Jet& j) {
  if (j.order() < 1) throw SurfError(Errc::InsufficientJetOrder, "d_z of order-0 jet");
  Jet r(j.order() - 1);
  for (int s = 0; s < j.order(); ++s)
    for (int b = 0; b <= s; ++b) r.set_partial(s - b, b, j.partial(s - b + 1, b));
  return r;
}

inline Jet d_zbar(const Jet& j) {
  if (j.order() < 1) throw SurfError(Errc::InsufficientJetOrder, "d_zbar of order-0 jet");
  Jet r(j.order() - 1);
  for (int s = 0; s < j.order(); ++s)
    for (int b = 0; b <= s; ++b) r.set_partial(s - b, b, j.partial(s - b, b + 1));
  return r;
}

inline Jet pow_int(const Jet& base, int expo) {
  if (expo < 0) return Jet::constant(1.0, base.order()) / pow_int(base, -expo);
  Jet r = Jet::constant(1.0, base.order());
  Jet b = base;
  int e = expo;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

namespace detail {

// F(c + delta) truncated at the jet order, with d[k] the k-th derivative of F
// at the jet value. Horner in jet arithmetic keeps the zero structure exact.
inline Jet analytic_compose(const std::array<Complex, kMaxJetOrder + 1>& d, const Jet& arg) {
  const int n = arg.order();
  Jet delta = arg - Jet::constant(arg.value(), n);
  static const double inv_fact[kMaxJetOrder + 1] = {1.0, 1.0, 0.5, 1.0 / 6.0};
  Jet acc = Jet::constant(d[n] * inv_fact[n], n);
  for (int k = n - 1; k >= 0; --k) acc = acc * delta + Jet::constant(d[k] * inv_fact[k], n);
  return acc;
}

inline bool on_log_cut(Complex v) {
  const double tol = default_tolerances().branch_cut;
  return v.real() <= 0.0 && std::abs(v.imag()) <= tol * std::max(1.0, -v.real());
}

}  // namespace detail

enum class Elementary { Exp, Log, Sin, Cos, Sinh, Cosh, Tanh, Sqrt };

inline Jet elementary(Elementary fn, const Jet& arg) {
  const Complex v = arg.value();
  std::array<Complex, kMaxJetOrder + 1> d{};
  switch (fn) {
    case Elementary::Exp: {
      const Complex e = std::exp(v);
      d = {e, e, e, e};
      break;
    }
    case Elementary::Log: {
      if (detail::on_log_cut(v))
        throw SurfError(Errc::BranchCut, "log on the branch cut");
      const Complex iv = 1.0 / v;
      d = {std::log(v), iv, -iv * iv, 2.0 * iv * iv * iv};
      break;
    }
    case Elementary::Sin:
      d = {std::sin(v), std::cos(v), -std::sin(v), -std::cos(v)};
      break;
    case Elementary::Cos:
      d = {std::cos(v), -std::sin(v), -std::cos(v), std::sin(v)};
      break;
    case Elementary::Sinh:
      d = {std::sinh(v), std::cosh(v), std::sinh(v), std::cosh(v)};
      break;
    case Elementary::Cosh:
      d = {std::cosh(v), std::sinh(v), std::cosh(v), std::sinh(v)};
      break;
    case Elementary::Tanh: {
      if (std::abs(std::cosh(v)) < 1e-150)
        throw SurfError(Errc::DivisionByZero, "tanh at a pole");
      const Complex t = std::tanh(v);
      const Complex s = 1.0 - t * t;  // sech^2
      d = {t, s, -2.0 * t * s, s * (4.0 * t * t - 2.0 * s)};
      break;
    }
    case Elementary::Sqrt: {
      if (detail::on_log_cut(v))
        throw SurfError(Errc::BranchCut, "sqrt on the branch cut");
      const Complex s = std::sqrt(v);
      d = {s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v)};
      break;
    }
  }
  return detail::analytic_compose(d, arg);
}

// Central-difference estimate of the Wirtinger partials up to order 2.
// Fourth-order stencils for the straight derivatives, Richardson for the
// cross term; error O(h^2) or better. Independent of the jet arithmetic.
inline Jet fd_oracle(const std::function<Complex(Complex)>& f, Complex z, double h) {
  if (!(h > 0.0)) throw SurfError(Errc::EvalError, "fd_oracle requires h > 0");
  const Complex du(1.0, 0.0), dv(0.0, 1.0);

  auto d1 = [&](Complex dir) {
    return (-f(z + 2.0 * h * dir) + 8.0 * f(z + h * dir) - 8.0 * f(z - h * dir) +
            f(z - 2.0 * h * dir)) /
           (12.0 * h);
  };
  auto d2 = [&](Complex dir) {
    return (-f(z + 2.0 * h * dir) + 16.0 * f(z + h * dir) - 30.0 * f(z) +
            16.0 * f(z - h * dir) - f(z - 2.0 * h * dir)) /
           (12.0 * h * h);
  };
  auto cross = [&](double s) {
    return (f(z + s * (du + dv) * h) - f(z + s * (du - dv) * h) - f(z + s * (dv - du) * h) +
            f(z - s * (du + dv) * h)) /
           (4.0 * s * s * h * h);
  };

  const Complex fu = d1(du), fv = d1(dv);
  const Complex fuu = d2(du), fvv = d2(dv);
  const Complex fuv = (4.0 * cross(1.0) - cross(2.0)) / 3.0;

  const Complex I(0.0, 1.0);
  Jet j(2);
  j.set_partial(0, 0, f(z));
  j.set_partial(1, 0, 0.5 * (fu - I * fv));
  j.set_partial(0, 1, 0.5 * (fu + I * fv));
  j.set_partial(2, 0, 0.25 * (fuu - fvv - 2.0 * I * fuv));
  j.set_partial(0, 2, 0.25 * (fuu - fvv + 2.0 * I * fuv));
  j.set_partial(1, 1, 0.25 * (fuu + fvv));
  return j;
}

}  // namespace surflab
