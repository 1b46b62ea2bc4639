#pragma once

#include <cmath>
#include <complex>

#include "gaplab/errors.hpp"

namespace gaplab {

// Real 2x2 matrix; cocycle values carry unit determinant.
struct Mat2 {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

  static Mat2 identity() { return {}; }

  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
  double frob() const { return std::sqrt(a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22); }

  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }

  Mat2 scaled(double s) const { return {s * a11, s * a12, s * a21, s * a22}; }

  // Inverse via the adjugate; exact for unit determinant.
  Mat2 inverse() const {
    double d = det();
    if (std::fabs(d) < 1e-300) throw ComputeError("Mat2: singular matrix");
    double inv = 1.0 / d;
    return {a22 * inv, -a12 * inv, -a21 * inv, a11 * inv};
  }

  void apply(double& x, double& y) const {
    double nx = a11 * x + a12 * y;
    double ny = a21 * x + a22 * y;
    x = nx;
    y = ny;
  }

  double entry_dist(const Mat2& o) const {
    return std::max(std::max(std::fabs(a11 - o.a11), std::fabs(a12 - o.a12)),
                    std::max(std::fabs(a21 - o.a21), std::fabs(a22 - o.a22)));
  }

  static Mat2 rotation(double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c};
  }
};

// Singular value decomposition of a 2x2 real matrix.
// s1 >= s2 >= 0; left/right are the angles of the leading singular vectors.
struct Svd2 {
  double s1, s2;
  double left_angle;   // direction of M v1
  double right_angle;  // direction of v1
};

Svd2 svd2(const Mat2& m);

// Operator 2-norm.
inline double op_norm(const Mat2& m) { return svd2(m).s1; }

// Product accumulated with a separate log scale so that iterates of
// hyperbolic cocycles never overflow. value = e^{log_scale} * m.
struct ScaledMat2 {
  Mat2 m;
  double log_scale = 0.0;

  static ScaledMat2 identity() { return {Mat2::identity(), 0.0}; }

  void renormalize() {
    double n = m.frob();
    if (n > 1e30 || (n > 0.0 && n < 1e-30)) {
      m = m.scaled(1.0 / n);
      log_scale += std::log(n);
    }
  }

  // log of the operator norm of the represented matrix
  double log_op_norm() const { return std::log(op_norm(m)) + log_scale; }
  double log_frob() const { return std::log(m.frob()) + log_scale; }

  // |trace| <= 2 test, overflow-safe
  bool trace_in_open_interval_2() const {
    double t = std::fabs(m.trace());
    if (t == 0.0) return true;
    return std::log(t) + log_scale < std::log(2.0);
  }

  // Materializes the plain matrix; throws when it cannot be represented.
  Mat2 value() const {
    if (std::fabs(log_scale) > 600.0) throw ComputeError("ScaledMat2: magnitude out of double range");
    return m.scaled(std::exp(log_scale));
  }
};

// Complex 2x2, used for cocycles evaluated at complexified phase.
struct Mat2C {
  std::complex<double> a11{1.0, 0.0}, a12{0.0, 0.0}, a21{0.0, 0.0}, a22{1.0, 0.0};

  Mat2C operator*(const Mat2C& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  double frob() const {
    return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
  }
  Mat2C scaled(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
};

// SU(1,1)-structured matrix [[a, b], [conj(b), conj(a)]] with |a|^2-|b|^2 = 1.
struct Mat2H {
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};

  static Mat2H identity() { return {}; }

  double structure_defect() const { return std::fabs(std::norm(a) - std::norm(b) - 1.0); }

  void check(double tol = 1e-10) const {
    if (structure_defect() >= tol) throw InvalidInput("Mat2H: |a|^2 - |b|^2 = 1 violated");
  }

  Mat2H operator*(const Mat2H& o) const {
    // [[a,b],[conj b, conj a]] * [[a',b'],[conj b', conj a']]
    return {a * o.a + b * std::conj(o.b), a * o.b + b * std::conj(o.a)};
  }

  Mat2H inverse() const {
    // unit determinant: inverse = [[conj a, -b],[-conj b, a]]
    return {std::conj(a), -b};
  }

  double entry_dist(const Mat2H& o) const {
    return std::max(std::abs(a - o.a), std::abs(b - o.b));
  }

  double frob() const { return std::sqrt(2.0 * (std::norm(a) + std::norm(b))); }
};

// Conjugation M^{-1} Z M carrying SU(1,1) to SL(2,R), M = (1/(1+i)) [[1,-i],[1,i]].
// Closed form: [[Re a + Re b, Im a - Im b], [-(Im a + Im b), Re a - Re b]].
Mat2 su11_to_sl2r(const Mat2H& z);
Mat2H sl2r_to_su11(const Mat2& m);

}  // namespace gaplab
