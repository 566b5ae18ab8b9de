#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace surflab {

using Complex = std::complex<double>;

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

// Complex 3-vector, used for f_z and friends.
using CVec3 = std::array<Complex, 3>;

inline Vec3 real_part(const CVec3& v) { return {v[0].real(), v[1].real(), v[2].real()}; }
inline Vec3 imag_part(const CVec3& v) { return {v[0].imag(), v[1].imag(), v[2].imag()}; }

inline CVec3 conj(const CVec3& v) {
  return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

inline CVec3 operator*(const Complex& s, const CVec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

}  // namespace surflab
