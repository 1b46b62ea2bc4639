#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "gaplab/errors.hpp"

namespace gaplab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Reduction to [0,1) with the fixed convention frac(x) = x - floor(x).
inline double frac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // guards against floor rounding at negative epsilons
  return f;
}

// Distance on the torus R/Z.
inline double torus_dist(double x, double y) {
  double d = std::fabs(frac(x) - frac(y));
  return std::min(d, 1.0 - d);
}

// A frequency alpha in (0,1). Irrationality cannot be certified in floating
// point; diophantine_margin reports min_{1<=|n|<=n_max} dist(n*alpha, Z),
// which is strictly positive at any tested range when alpha is irrational.
struct Frequency {
  double alpha;

  explicit Frequency(double a) : alpha(a) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidInput("Frequency: alpha must lie in (0,1)");
  }

  double diophantine_margin(int n_max) const {
    double m = 1.0;
    double na = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      na += alpha;
      double d = torus_dist(na, 0.0);
      if (d < m) m = d;
    }
    return m;
  }
};

inline double golden_mean() { return 0.61803398874989484820458683436564; }

// A point on T^1 or T^2, coordinates always reduced to [0,1).
struct TorusPoint {
  double c[2] = {0.0, 0.0};
  int dim = 1;

  TorusPoint() = default;
  explicit TorusPoint(double x) : dim(1) { c[0] = frac(x); }
  TorusPoint(double x, double y) : dim(2) {
    c[0] = frac(x);
    c[1] = frac(y);
  }

  double first() const { return c[0]; }
};

enum class BaseKind { TorusRotation, SkewShift };

// The ergodic base driving all coefficient sequences:
//   TorusRotation:  w -> w + alpha on T^1
//   SkewShift:      (w1, w2) -> (w1 + alpha, w1 + w2) on T^2
struct BaseDynamics {
  BaseKind kind;
  Frequency alpha;

  static BaseDynamics rotation(Frequency a) { return BaseDynamics{BaseKind::TorusRotation, a}; }
  static BaseDynamics skew_shift(Frequency a) { return BaseDynamics{BaseKind::SkewShift, a}; }

  int dimension() const { return kind == BaseKind::TorusRotation ? 1 : 2; }

  void check_point(const TorusPoint& w) const {
    if (w.dim != dimension()) throw InvalidInput("BaseDynamics: point dimension mismatch");
  }

  TorusPoint step(const TorusPoint& w) const {
    check_point(w);
    if (kind == BaseKind::TorusRotation) return TorusPoint(w.c[0] + alpha.alpha);
    return TorusPoint(w.c[0] + alpha.alpha, w.c[0] + w.c[1]);
  }

  TorusPoint step_back(const TorusPoint& w) const {
    check_point(w);
    if (kind == BaseKind::TorusRotation) return TorusPoint(w.c[0] - alpha.alpha);
    double w1 = frac(w.c[0] - alpha.alpha);
    return TorusPoint(w1, w.c[1] - w1);
  }

  // T^n for any integer n. The rotation advances in one shot; the skew-shift
  // uses the closed form of its n-th iterate to stay O(1).
  TorusPoint advance(const TorusPoint& w, long n) const {
    check_point(w);
    double a = alpha.alpha;
    if (kind == BaseKind::TorusRotation) return TorusPoint(w.c[0] + static_cast<double>(n) * a);
    // T^n(w1,w2) = (w1 + n a, w2 + n w1 + n(n-1)/2 a)
    double dn = static_cast<double>(n);
    double tri = 0.5 * dn * (dn - 1.0);
    return TorusPoint(w.c[0] + dn * a, w.c[1] + dn * w.c[0] + tri * a);
  }

  std::vector<TorusPoint> orbit(const TorusPoint& w0, long n) const {
    if (n < 0) throw InvalidInput("orbit: n must be >= 0");
    std::vector<TorusPoint> out;
    out.reserve(static_cast<std::size_t>(n));
    TorusPoint w = w0;
    for (long i = 0; i < n; ++i) {
      out.push_back(w);
      w = step(w);
    }
    return out;
  }

  // Phases used to approximate the mu-average in pooled computations.
  // Deterministic; rotation phases are an exact lattice shift, skew-shift
  // phases are strided orbit points (unique ergodicity gives equidistribution).
  std::vector<TorusPoint> pooled_phases(const TorusPoint& w0, int samples) const;

  TorusPoint origin() const {
    return dimension() == 1 ? TorusPoint(0.0) : TorusPoint(0.0, 0.0);
  }
};

// 1-d sampling coordinate. The skew-shift feeds only its first coordinate
// into 1-d sampling functions.
inline double sample_coord(const TorusPoint& w) { return w.c[0]; }

// Real-valued trigonometric polynomial  p(w) = sum_{|k|<=d} c_k e^{2 pi i k w},
// stored by Fourier coefficients with the reality constraint c_{-k} = conj(c_k).
class TrigPoly {
 public:
  TrigPoly() : degree_(0), c_(1, std::complex<double>(0.0, 0.0)) {}

  explicit TrigPoly(const std::map<int, std::complex<double>>& coeffs);

  static TrigPoly constant(double v);
  // amp*cos(2 pi k w) and amp*sin(2 pi k w)
  static TrigPoly cosine(int k, double amp = 1.0);
  static TrigPoly sine(int k, double amp = 1.0);

  int degree() const { return degree_; }

  std::complex<double> fourier_coefficient(int k) const {
    if (k < -degree_ || k > degree_) return {0.0, 0.0};
    return c_[static_cast<std::size_t>(k + degree_)];
  }

  double eval(double omega) const;
  std::complex<double> eval_complex(std::complex<double> omega) const;

  TrigPoly scaled(double s) const;
  TrigPoly plus(const TrigPoly& other) const;

  bool is_zero(double tol = 0.0) const;

  // Max |Im p(w)| over a uniform grid; the reality invariant keeps it tiny.
  double reality_defect(int grid = 1024) const;

 private:
  void validate_reality() const;

  int degree_;
  std::vector<std::complex<double>> c_;  // index k + degree_
};

}  // namespace gaplab
