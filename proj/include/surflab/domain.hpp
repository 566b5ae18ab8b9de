#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "surflab/errors.hpp"
#include "surflab/vec3.hpp"

namespace surflab {

struct DiskDomain {
  Complex center;
  double radius;
};

struct AnnulusDomain {
  Complex center;
  double r_in, r_out;
};

// Half planes are written axis-relative: "u>", "u<", "v>", "v<".
struct HalfplaneDomain {
  std::string axis;
  double bound;
};

struct RectangleDomain {
  double u_min, u_max, v_min, v_max;
};

class DomainSpec {
 public:
  using Shape = std::variant<DiskDomain, AnnulusDomain, HalfplaneDomain, RectangleDomain>;

  DomainSpec() : shape_(DiskDomain{Complex(0, 0), 1.0}) {}
  explicit DomainSpec(Shape shape) : shape_(std::move(shape)) { validate(); }

  static DomainSpec disk(Complex center, double radius) {
    return DomainSpec(DiskDomain{center, radius});
  }
  static DomainSpec annulus(Complex center, double r_in, double r_out) {
    return DomainSpec(AnnulusDomain{center, r_in, r_out});
  }
  static DomainSpec halfplane(const std::string& axis, double bound) {
    return DomainSpec(HalfplaneDomain{axis, bound});
  }
  static DomainSpec rectangle(double u_min, double u_max, double v_min, double v_max) {
    return DomainSpec(RectangleDomain{u_min, u_max, v_min, v_max});
  }

  const Shape& shape() const { return shape_; }

  bool contains(Complex z) const {
    return std::visit(
        [&](const auto& s) { return contains_impl(s, z); }, shape_);
  }

  bool simply_connected() const { return !std::holds_alternative<AnnulusDomain>(shape_); }

  bool bounded() const { return !std::holds_alternative<HalfplaneDomain>(shape_); }

  // Interior base point used as the integration origin, f(base) = 0.
  Complex basepoint() const {
    return std::visit(
        [](const auto& s) -> Complex {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, DiskDomain>) {
            return s.center;
          } else if constexpr (std::is_same_v<T, AnnulusDomain>) {
            return s.center + Complex(0.5 * (s.r_in + s.r_out), 0.0);
          } else if constexpr (std::is_same_v<T, HalfplaneDomain>) {
            const double off = (s.axis[1] == '>') ? 1.0 : -1.0;
            if (s.axis[0] == 'u') return Complex(s.bound + off, 0.0);
            return Complex(0.0, s.bound + off);
          } else {
            return Complex(0.5 * (s.u_min + s.u_max), 0.5 * (s.v_min + s.v_max));
          }
        },
        shape_);
  }

 private:
  static bool contains_impl(const DiskDomain& s, Complex z) {
    return std::abs(z - s.center) < s.radius;
  }
  static bool contains_impl(const AnnulusDomain& s, Complex z) {
    const double r = std::abs(z - s.center);
    return r > s.r_in && r < s.r_out;
  }
  static bool contains_impl(const HalfplaneDomain& s, Complex z) {
    const double c = (s.axis[0] == 'u') ? z.real() : z.imag();
    return (s.axis[1] == '>') ? c > s.bound : c < s.bound;
  }
  static bool contains_impl(const RectangleDomain& s, Complex z) {
    return z.real() > s.u_min && z.real() < s.u_max && z.imag() > s.v_min && z.imag() < s.v_max;
  }

  void validate() const {
    std::visit(
        [](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, DiskDomain>) {
            if (!(s.radius > 0)) throw SurfError(Errc::InvalidData, "disk radius must be > 0");
          } else if constexpr (std::is_same_v<T, AnnulusDomain>) {
            if (!(s.r_in >= 0 && s.r_out > s.r_in))
              throw SurfError(Errc::InvalidData, "annulus requires 0 <= r_in < r_out");
          } else if constexpr (std::is_same_v<T, HalfplaneDomain>) {
            if (s.axis != "u>" && s.axis != "u<" && s.axis != "v>" && s.axis != "v<")
              throw SurfError(Errc::InvalidData,
                              "halfplane axis must be one of u>, u<, v>, v<");
          } else {
            if (!(s.u_max > s.u_min && s.v_max > s.v_min))
              throw SurfError(Errc::InvalidData, "rectangle has empty interior");
          }
        },
        shape_);
  }

  Shape shape_;
};

}  // namespace surflab
