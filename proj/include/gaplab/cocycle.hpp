#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gaplab/dynamics.hpp"
#include "gaplab/mat2.hpp"

namespace gaplab {

// An SL(2,R)-valued cocycle over the base: w -> A(w).
// angle_orientation fixes the sign convention of the fibered rotation number;
// Szego cocycles conjugated into SL(2,R) use -1 so that the free Verblunsky
// family has rho = theta/(4 pi) and the duality 2 rho = k holds.
struct CocycleMap {
  BaseDynamics base;
  std::function<Mat2(const TorusPoint&)> A;
  bool homotopy_const = true;
  int angle_orientation = +1;
};

// SU(1,1)-valued variant (Szego cocycles).
struct CocycleMapH {
  BaseDynamics base;
  std::function<Mat2H(const TorusPoint&)> A;
  bool homotopy_const = true;
};

// Conjugates fiberwise into SL(2,R) via M^{-1} (.) M.
CocycleMap to_sl2r(const CocycleMapH& c);

// Ordered product A(T^{n-1}w)...A(w) for n >= 0, inverse-product branch for
// n < 0. Renormalizes internally; the log scale rides along in the result.
ScaledMat2 iterate(const CocycleMap& c, const TorusPoint& omega, long n);
Mat2H iterate_h(const CocycleMapH& c, const TorusPoint& omega, long n);

// Fibered rotation number estimate in [0,1).
struct RotationResult {
  double rho = 0.0;
  double stderr_est = 0.0;
  long n = 0;
  bool converged = true;
  std::vector<double> block_means;  // pre-wrap per-step increments, per block
};

RotationResult rotation_number(const CocycleMap& c, const TorusPoint& omega0, long n,
                               long burn_in = 0);

// Averaged (1/n) log||A^n(w)|| over equidistributed phases, floored at 0
// up to -1e-6.
double lyapunov_exponent(const CocycleMap& c, long n, int omega_samples);

enum class UHVerdict { UH, NotUH, Inconclusive };

std::string to_string(UHVerdict v);

// Finite-scale certificate: UH comes from a cone-field test at resolution
// `grid`, NotUH from persistent ellipticity with subexponential growth.
struct UHCertificate {
  UHVerdict verdict = UHVerdict::Inconclusive;
  long n_star = 0;
  double growth_rate = 1.0;      // lower bound of ||A^n||^{1/n} certified on the cone
  double min_norm_ratio = 1.0;   // min over grid of s1/s2 at n_star (capped)
  double ellipticity_fraction = 0.0;
  double max_growth_rate = 1.0;  // max over grid of ||A^n||^{1/n} at the last level
};

UHCertificate certify_uniform_hyperbolicity(const CocycleMap& c, int grid, long n_max);

// Cocycle extended to complexified phase w + i eps (only the first
// coordinate is complexified; this is what analytic sampling provides).
struct AnalyticCocycle {
  BaseDynamics base;
  std::function<Mat2C(const TorusPoint&, double /*eps*/)> A;
  CocycleMap on_circle;
};

// Lyapunov exponent of the complexified cocycle along Im w = eps.
double lyapunov_exponent_strip(const AnalyticCocycle& c, double eps, long n, int omega_samples);

enum class Regime { Subcritical, Critical, Supercritical };

std::string to_string(Regime r);

struct RegimeLabel {
  Regime regime = Regime::Critical;
  double lyapunov_on_circle = 0.0;
  std::vector<std::pair<double, double>> lyapunov_strip;  // (eps, L(eps))
  double threshold = 0.0;
};

// Avila-style trichotomy at desk scale. Thresholds default to 10/n.
RegimeLabel classify_regime(const AnalyticCocycle& c, const std::vector<double>& epsilons, long n,
                            int omega_samples = 8);

}  // namespace gaplab
