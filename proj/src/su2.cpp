#include "pillow/su2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pillow/error.hpp"

namespace pillow {

Su2Elem::Su2Elem(double w, double x, double y, double z) {
  const double n2 = w * w + x * x + y * y + z * z;
  if (n2 == 0.0) return;
  if (std::abs(n2 - 1.0) <= 4 * std::numeric_limits<double>::epsilon()) {
    w_ = w;
    x_ = x;
    y_ = y;
    z_ = z;
    return;
  }
  const double n = std::sqrt(n2);
  w_ = w / n;
  x_ = x / n;
  y_ = y / n;
  z_ = z / n;
}

Su2Elem Su2Elem::from_axis_angle(Vec3 axis, double t) {
  const double n = axis.norm();
  if (n == 0.0) return {};
  const double s = std::sin(t) / n;
  return {std::cos(t), s * axis.x, s * axis.y, s * axis.z};
}

Su2Elem Su2Elem::exp(Vec3 v) {
  const double t = v.norm();
  if (t < 1e-300) return {};
  return from_axis_angle(v, t);
}

Su2Elem Su2Elem::inverse() const {
  Su2Elem r;
  r.w_ = w_;
  r.x_ = -x_;
  r.y_ = -y_;
  r.z_ = -z_;
  return r;
}

Su2Elem mul(const Su2Elem& a, const Su2Elem& b) { return Su2Elem(a.quat() * b.quat()); }

Su2Elem conjugate_by(const Su2Elem& g, const Su2Elem& q) { return g * q * g.inverse(); }

double distance(const Su2Elem& a, const Su2Elem& b) { return (a.quat() - b.quat()).norm(); }

double angle(const Su2Elem& q) { return std::acos(std::clamp(q.w(), -1.0, 1.0)); }

namespace {

// Shortest rotation carrying the unit vector v onto +i.
Su2Elem frame_to_i_axis(Vec3 v) {
  Su2Elem pre;
  if (v.x < 0.0) {
    // Rotation by pi about j flips x and z, keeping the main formula away
    // from its antipodal singularity.
    pre = Su2Elem(0.0, 0.0, 1.0, 0.0);
    v = {-v.x, v.y, -v.z};
  }
  const Vec3 c = cross(v, Vec3{1.0, 0.0, 0.0});
  const Su2Elem to_i(1.0 + v.x, c.x, c.y, c.z);
  return to_i * pre;
}

}  // namespace

DiagonalForm conjugate_to_diagonal(const Su2Elem& q) {
  const double theta = angle(q);
  const Vec3 v = q.vec();
  const double s = v.norm();
  if (s < 1e-15) return {Su2Elem::identity(), theta};
  return {frame_to_i_axis((1.0 / s) * v), theta};
}

double signed_angle_in_frame(const Su2Elem& q, const Su2Elem& frame, double tol) {
  const Su2Elem r = conjugate_by(frame, q);
  const double off = std::hypot(r.y(), r.z());
  if (off > tol) {
    throw Error(ErrorKind::NotDiagonalInFrame,
                "off-diagonal residual " + std::to_string(off) + " exceeds tolerance");
  }
  const double t = std::atan2(r.x(), r.w());
  return t <= -kPi ? kPi : t;
}

double commutator_norm(const Su2Elem& a, const Su2Elem& b) {
  const Quaternion c = a.quat() * b.quat() * a.inverse().quat() * b.inverse().quat();
  return (c - Quaternion{1.0, 0.0, 0.0, 0.0}).norm();
}

}  // namespace pillow
