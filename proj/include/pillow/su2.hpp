#pragma once

/**
 * @file su2.hpp
 * @brief SU(2) as unit quaternions.
 *
 * The quaternion q = w + xi + yj + zk stands for the matrix
 *
 *     [  w + ix    y + iz ]
 *     [ -y + iz    w - ix ]
 *
 * so the diagonal subgroup diag(e^{it}, e^{-it}) is {cos t + i sin t}.  An
 * element is "diagonal" when its vector part lies on the i-axis.
 */

#include <array>
#include <cmath>
#include <numbers>

namespace pillow {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Raw quaternion arithmetic with no unit constraint. Used for residuals and
// derivatives; group elements live in Su2Elem.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  constexpr Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  static constexpr Quaternion pure(Vec3 v) { return {0.0, v.x, v.y, v.z}; }
};

class Su2Elem {
 public:
  Su2Elem() = default;
  // Renormalizes unless already unit to rounding; a zero 4-vector maps to the identity.
  Su2Elem(double w, double x, double y, double z);
  explicit Su2Elem(const Quaternion& q) : Su2Elem(q.w, q.x, q.y, q.z) {}

  static Su2Elem identity() { return {}; }
  // diag(e^{it}, e^{-it}).
  static Su2Elem diagonal(double t) { return {std::cos(t), std::sin(t), 0.0, 0.0}; }
  // exp(t * axis) for a unit axis: rotation angle t about that axis.
  static Su2Elem from_axis_angle(Vec3 axis, double t);
  // exp of a Lie algebra element given as a pure quaternion.
  static Su2Elem exp(Vec3 v);

  double w() const { return w_; }
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  Vec3 vec() const { return {x_, y_, z_}; }
  Quaternion quat() const { return {w_, x_, y_, z_}; }
  std::array<double, 4> components() const { return {w_, x_, y_, z_}; }

  Su2Elem inverse() const;
  double trace() const { return 2.0 * w_; }
  bool is_central(double tol = 1e-12) const { return vec().norm() <= tol; }

  friend bool operator==(const Su2Elem&, const Su2Elem&) = default;

 private:
  double w_ = 1.0;
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

Su2Elem mul(const Su2Elem& a, const Su2Elem& b);
inline Su2Elem operator*(const Su2Elem& a, const Su2Elem& b) { return mul(a, b); }

// g q g^{-1}
Su2Elem conjugate_by(const Su2Elem& g, const Su2Elem& q);

// Euclidean distance of the 4-vectors.
double distance(const Su2Elem& a, const Su2Elem& b);

// Rotation angle arccos(w), clamped, in [0, pi].
double angle(const Su2Elem& q);

struct DiagonalForm {
  Su2Elem frame;
  double angle = 0.0;
};

// frame * q * frame^{-1} = diag(e^{i angle}, e^{-i angle}). Central elements get
// the identity frame.
DiagonalForm conjugate_to_diagonal(const Su2Elem& q);

// Signed angle of q read in a frame that diagonalizes it, in (-pi, pi].
// Throws Error(NotDiagonalInFrame) when the off-diagonal part exceeds tol.
double signed_angle_in_frame(const Su2Elem& q, const Su2Elem& frame, double tol = 1e-8);

// |a b a^{-1} b^{-1} - 1| as a 4-vector distance.
double commutator_norm(const Su2Elem& a, const Su2Elem& b);

}  // namespace pillow
