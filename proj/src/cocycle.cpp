#include "gaplab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gaplab {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kRenormThreshold = 1e150;
}  // namespace

CocycleMap to_sl2r(const CocycleMapH& c) {
  CocycleMap out;
  out.base = c.base;
  out.homotopy_const = c.homotopy_const;
  out.angle_orientation = -1;
  auto f = c.A;
  out.A = [f](const TorusPoint& w) { return su11_to_sl2r(f(w)); };
  return out;
}

ScaledMat2 iterate(const CocycleMap& c, const TorusPoint& omega, long n) {
  ScaledMat2 acc = ScaledMat2::identity();
  if (n == 0) return acc;
  TorusPoint w = omega;
  if (n > 0) {
    for (long i = 0; i < n; ++i) {
      acc.m = c.A(w) * acc.m;
      if (acc.m.frob() > kRenormThreshold) acc.renormalize();
      w = c.base.step(w);
    }
  } else {
    // A^{-m}(w) = A^{-1}(T^{-m}w) ... A^{-1}(T^{-1}w) = [A^m(T^{-m} w)]^{-1}
    for (long i = 0; i < -n; ++i) {
      w = c.base.step_back(w);
      acc.m = c.A(w).inverse() * acc.m;
      if (acc.m.frob() > kRenormThreshold) acc.renormalize();
    }
  }
  acc.renormalize();
  return acc;
}

Mat2H iterate_h(const CocycleMapH& c, const TorusPoint& omega, long n) {
  Mat2H acc = Mat2H::identity();
  TorusPoint w = omega;
  if (n >= 0) {
    for (long i = 0; i < n; ++i) {
      acc = c.A(w) * acc;
      w = c.base.step(w);
    }
  } else {
    for (long i = 0; i < -n; ++i) {
      w = c.base.step_back(w);
      acc = c.A(w).inverse() * acc;
    }
  }
  return acc;
}

RotationResult rotation_number(const CocycleMap& c, const TorusPoint& omega0, long n,
                               long burn_in) {
  if (!c.homotopy_const)
    throw InvalidInput("rotation_number: cocycle must be homotopic to a constant");
  if (n < 1000) throw InvalidInput("rotation_number: need n >= 1000");

  TorusPoint w = omega0;
  double ux = 1.0, uy = 0.0;
  for (long i = 0; i < burn_in; ++i) {
    double vx = ux, vy = uy;
    c.A(w).apply(vx, vy);
    double nv = std::hypot(vx, vy);
    if (nv < 1e-300) throw ComputeError("rotation_number: vector collapsed");
    ux = vx / nv;
    uy = vy / nv;
    w = c.base.step(w);
  }

  constexpr int kBlocks = 16;
  long block_len = n / kBlocks;
  if (block_len < 1) block_len = 1;
  std::vector<double> blocks;
  blocks.reserve(kBlocks);
  double orient = static_cast<double>(c.angle_orientation);

  double block_sum = 0.0;
  long in_block = 0;
  long steps = block_len * kBlocks;
  for (long i = 0; i < steps; ++i) {
    double vx = ux, vy = uy;
    c.A(w).apply(vx, vy);
    double nv = std::hypot(vx, vy);
    if (nv < 1e-300) throw ComputeError("rotation_number: vector collapsed");
    vx /= nv;
    vy /= nv;
    // principal-branch increment in turns, in (-1/2, 1/2]
    double cross = ux * vy - uy * vx;
    double dot = ux * vx + uy * vy;
    double dtheta = std::atan2(cross, dot) / kTwoPi;
    block_sum += orient * dtheta;
    ++in_block;
    if (in_block == block_len) {
      blocks.push_back(block_sum / static_cast<double>(block_len));
      block_sum = 0.0;
      in_block = 0;
    }
    ux = vx;
    uy = vy;
    w = c.base.step(w);
  }

  double mean = std::accumulate(blocks.begin(), blocks.end(), 0.0) / blocks.size();
  double var = 0.0;
  for (double b : blocks) var += (b - mean) * (b - mean);
  var /= std::max<std::size_t>(1, blocks.size() - 1);
  double se = std::sqrt(var / blocks.size());

  // convergence: first half vs second half of the block means
  std::size_t half = blocks.size() / 2;
  double m1 = std::accumulate(blocks.begin(), blocks.begin() + half, 0.0) / half;
  double m2 = std::accumulate(blocks.begin() + half, blocks.end(), 0.0) / (blocks.size() - half);
  bool converged = std::fabs(m1 - m2) <= 5.0 * std::max(se * std::sqrt(2.0), 1e-12);

  RotationResult r;
  r.rho = frac(mean);
  r.stderr_est = se;
  r.n = steps;
  r.converged = converged;
  r.block_means = std::move(blocks);
  return r;
}

double lyapunov_exponent(const CocycleMap& c, long n, int omega_samples) {
  if (n < 1000) throw InvalidInput("lyapunov_exponent: need n >= 1000");
  if (omega_samples < 1) throw InvalidInput("lyapunov_exponent: need omega_samples >= 1");
  double acc = 0.0;
  for (int j = 0; j < omega_samples; ++j) {
    TorusPoint w0 = c.base.dimension() == 1
                        ? TorusPoint(static_cast<double>(j) / omega_samples)
                        : TorusPoint(static_cast<double>(j) / omega_samples,
                                     frac(0.3 + 0.71 * j));
    ScaledMat2 p = ScaledMat2::identity();
    TorusPoint w = w0;
    for (long i = 0; i < n; ++i) {
      p.m = c.A(w) * p.m;
      if (p.m.frob() > 1e30) p.renormalize();
      w = c.base.step(w);
    }
    acc += p.log_op_norm() / static_cast<double>(n);
  }
  double L = acc / omega_samples;
  if (L < -1e-6) throw ComputeError("lyapunov_exponent: estimate below the -1e-6 floor");
  return std::max(L, 0.0);
}

std::string to_string(UHVerdict v) {
  switch (v) {
    case UHVerdict::UH: return "UH";
    case UHVerdict::NotUH: return "NotUH";
    default: return "Inconclusive";
  }
}

namespace {

// projective angle distance in [0, pi/2]
double proj_angle_dist(double a, double b) {
  double d = std::fmod(std::fabs(a - b), kPi);
  if (d > kPi / 2.0) d = kPi - d;
  return d;
}

struct ConeLevelResult {
  bool passed = false;
  double min_log_expansion = 0.0;
  double min_ratio = 0.0;
};

// Cone half-angle and containment margin for the certificate.
constexpr double kConeGamma = 0.15;
constexpr double kConeMargin = 0.75;  // images must land within kConeMargin*gamma
constexpr double kMinLogExpansion = 2.0;

ConeLevelResult cone_test(const std::vector<ScaledMat2>& fwd, const std::vector<ScaledMat2>& bwd) {
  ConeLevelResult res;
  res.min_log_expansion = 1e300;
  res.min_ratio = 1e300;
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    Svd2 sf = svd2(fwd[i].m);
    Svd2 sb = svd2(bwd[i].m);
    if (sf.s2 <= 0.0 || sb.s2 <= 0.0) return res;
    double ratio = sf.s1 / sf.s2;
    res.min_ratio = std::min(res.min_ratio, ratio);
    double u = sb.left_angle;   // candidate unstable direction at w_i
    double wdir = sf.left_angle;  // candidate unstable direction at T^n w_i
    // contracting input direction must stay outside the source cone
    double v2_angle = sf.right_angle + kPi / 2.0;
    if (proj_angle_dist(v2_angle, u) <= kConeGamma) return res;
    for (double sgn : {-1.0, 1.0}) {
      double d = u + sgn * kConeGamma;
      double x = std::cos(d), y = std::sin(d);
      fwd[i].m.apply(x, y);
      double len = std::hypot(x, y);
      if (len <= 0.0) return res;
      double image_angle = std::atan2(y, x);
      if (proj_angle_dist(image_angle, wdir) > kConeMargin * kConeGamma) return res;
      double log_exp = std::log(len) + fwd[i].log_scale;
      res.min_log_expansion = std::min(res.min_log_expansion, log_exp);
    }
  }
  res.passed = res.min_log_expansion >= kMinLogExpansion;
  return res;
}

}  // namespace

UHCertificate certify_uniform_hyperbolicity(const CocycleMap& c, int grid, long n_max) {
  if (grid < 64) throw InvalidInput("certify_uniform_hyperbolicity: grid must be >= 64");
  if (n_max < 8) throw InvalidInput("certify_uniform_hyperbolicity: n_max must be >= 8");

  std::vector<TorusPoint> pts;
  if (c.base.dimension() == 1) {
    pts.reserve(grid);
    for (int i = 0; i < grid; ++i) pts.emplace_back(static_cast<double>(i) / grid);
  } else {
    int g = std::max(8, static_cast<int>(std::lround(std::sqrt(static_cast<double>(grid)))));
    pts.reserve(static_cast<std::size_t>(g) * g);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        pts.emplace_back(static_cast<double>(i) / g, static_cast<double>(j) / g);
  }

  // schedule mixes powers of two with 3*2^k to avoid resonant periods
  std::vector<long> schedule;
  for (long n = 8; n <= n_max; n *= 2) {
    schedule.push_back(n);
    if (3 * n / 2 <= n_max) schedule.push_back(3 * n / 2);
  }
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());

  UHCertificate cert;
  std::vector<double> ell_history;
  double last_max_growth = 0.0;

  for (long n : schedule) {
    std::vector<ScaledMat2> fwd(pts.size()), bwd(pts.size());
    long elliptic = 0;
    double max_log_norm = -1e300;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      fwd[i] = iterate(c, pts[i], n);
      bwd[i] = iterate(c, c.base.advance(pts[i], -n), n);
      if (fwd[i].trace_in_open_interval_2()) ++elliptic;
      max_log_norm = std::max(max_log_norm, fwd[i].log_op_norm());
    }
    double ell_frac = static_cast<double>(elliptic) / pts.size();
    ell_history.push_back(ell_frac);
    last_max_growth = max_log_norm / static_cast<double>(n);

    ConeLevelResult cone = cone_test(fwd, bwd);
    if (cone.passed) {
      cert.verdict = UHVerdict::UH;
      cert.n_star = n;
      cert.growth_rate = std::exp(cone.min_log_expansion / static_cast<double>(n));
      cert.min_norm_ratio = std::min(cone.min_ratio, 1e300);
      cert.ellipticity_fraction = ell_frac;
      cert.max_growth_rate = std::exp(last_max_growth);
      return cert;
    }

    // early NotUH exit: bounded products and persistent ellipticity
    if (ell_history.size() >= 3) {
      bool persistent = true;
      for (std::size_t k = ell_history.size() - 3; k < ell_history.size(); ++k)
        persistent = persistent && ell_history[k] >= 0.2;
      bool subexponential = max_log_norm <= 15.0;
      if (persistent && subexponential && n >= 64) {
        cert.verdict = UHVerdict::NotUH;
        cert.n_star = n;
        cert.growth_rate = std::exp(last_max_growth);
        cert.min_norm_ratio = 1.0;
        cert.ellipticity_fraction = ell_frac;
        cert.max_growth_rate = std::exp(last_max_growth);
        return cert;
      }
    }
  }

  cert.verdict = UHVerdict::Inconclusive;
  cert.n_star = schedule.back();
  cert.growth_rate = std::exp(last_max_growth);
  cert.ellipticity_fraction = ell_history.back();
  cert.max_growth_rate = std::exp(last_max_growth);
  return cert;
}

double lyapunov_exponent_strip(const AnalyticCocycle& c, double eps, long n, int omega_samples) {
  double acc = 0.0;
  for (int j = 0; j < omega_samples; ++j) {
    TorusPoint w0 = c.base.dimension() == 1
                        ? TorusPoint(static_cast<double>(j) / omega_samples)
                        : TorusPoint(static_cast<double>(j) / omega_samples, frac(0.3 + 0.71 * j));
    Mat2C p;
    double log_scale = 0.0;
    TorusPoint w = w0;
    for (long i = 0; i < n; ++i) {
      p = c.A(w, eps) * p;
      double f = p.frob();
      if (f > 1e30) {
        p = p.scaled(1.0 / f);
        log_scale += std::log(f);
      }
      w = c.base.step(w);
    }
    acc += (std::log(std::max(p.frob(), 1e-300)) + log_scale) / static_cast<double>(n);
  }
  return std::max(acc / omega_samples, 0.0);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Subcritical: return "Subcritical";
    case Regime::Critical: return "Critical";
    default: return "Supercritical";
  }
}

RegimeLabel classify_regime(const AnalyticCocycle& c, const std::vector<double>& epsilons, long n,
                            int omega_samples) {
  if (epsilons.empty()) throw InvalidInput("classify_regime: need at least one epsilon");
  RegimeLabel out;
  out.threshold = 10.0 / static_cast<double>(n);
  out.lyapunov_on_circle = lyapunov_exponent(c.on_circle, n, omega_samples);
  if (out.lyapunov_on_circle > out.threshold) {
    out.regime = Regime::Supercritical;
    return out;
  }
  bool all_flat = true;
  for (double eps : epsilons) {
    double L = lyapunov_exponent_strip(c, eps, n, omega_samples);
    out.lyapunov_strip.emplace_back(eps, L);
    all_flat = all_flat && L <= out.threshold;
  }
  out.regime = all_flat ? Regime::Subcritical : Regime::Critical;
  return out;
}

}  // namespace gaplab
