#include "gaplab/mat2.hpp"

#include <algorithm>

namespace gaplab {

Svd2 svd2(const Mat2& m) {
  // Eigen-decompose M^T M analytically.
  double e = m.a11 * m.a11 + m.a21 * m.a21;  // (M^T M)_11
  double f = m.a11 * m.a12 + m.a21 * m.a22;  // (M^T M)_12
  double g = m.a12 * m.a12 + m.a22 * m.a22;  // (M^T M)_22
  double tr = e + g;
  double diff = e - g;
  double disc = std::sqrt(diff * diff + 4.0 * f * f);
  double l1 = 0.5 * (tr + disc);
  double l2 = 0.5 * (tr - disc);
  if (l2 < 0.0) l2 = 0.0;  // rounding
  Svd2 out;
  out.s1 = std::sqrt(l1);
  out.s2 = std::sqrt(l2);
  // right singular vector for l1
  double vx, vy;
  if (std::fabs(f) > 1e-300) {
    vx = l1 - g;
    vy = f;
  } else if (e >= g) {
    vx = 1.0;
    vy = 0.0;
  } else {
    vx = 0.0;
    vy = 1.0;
  }
  double nv = std::hypot(vx, vy);
  vx /= nv;
  vy /= nv;
  out.right_angle = std::atan2(vy, vx);
  double ux = m.a11 * vx + m.a12 * vy;
  double uy = m.a21 * vx + m.a22 * vy;
  if (std::hypot(ux, uy) < 1e-300) {
    out.left_angle = 0.0;
  } else {
    out.left_angle = std::atan2(uy, ux);
  }
  return out;
}

Mat2 su11_to_sl2r(const Mat2H& z) {
  z.check();
  return {z.a.real() + z.b.real(), z.a.imag() - z.b.imag(),
          -(z.a.imag() + z.b.imag()), z.a.real() - z.b.real()};
}

Mat2H sl2r_to_su11(const Mat2& m) {
  Mat2H out;
  out.a = {0.5 * (m.a11 + m.a22), 0.5 * (m.a12 - m.a21)};
  out.b = {0.5 * (m.a11 - m.a22), -0.5 * (m.a12 + m.a21)};
  return out;
}

}  // namespace gaplab
