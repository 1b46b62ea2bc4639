#pragma once

#include <complex>
#include <vector>

#include "gaplab/cocycle.hpp"
#include "gaplab/dynamics.hpp"

namespace gaplab {

// Jacobi family: diagonal b(T^n w), off-diagonal a(T^n w) > 0.
struct JacobiFamily {
  TrigPoly a;
  TrigPoly b;
  BaseDynamics base;

  JacobiFamily(TrigPoly a_, TrigPoly b_, BaseDynamics base_);

  double a_at(const TorusPoint& w) const { return a.eval(sample_coord(w)); }
  double b_at(const TorusPoint& w) const { return b.eval(sample_coord(w)); }

  // w -> (1/a) [[E - b, -1], [a^2, 0]]
  CocycleMap cocycle(double E) const;
  AnalyticCocycle analytic_cocycle(double E) const;
};

// (Extended) CMV family. Either the polar form v = lambda e^{i h} or a general
// pair v = v_re + i v_im with sup |v| < 1.
struct CMVFamily {
  bool polar = true;
  double lambda = 0.0;
  TrigPoly h;
  TrigPoly v_re, v_im;
  BaseDynamics base;

  static CMVFamily make_polar(double lambda, TrigPoly h, BaseDynamics base);
  static CMVFamily make_pair(TrigPoly v_re, TrigPoly v_im, BaseDynamics base);

  std::complex<double> v_at(const TorusPoint& w) const;
  double sup_v(int grid = 4096) const;
  bool is_free(int grid = 4096) const;  // v identically 0 at tested resolution

  // Normalized Szego cocycle at z = e^{i theta}; theta parameterizes the
  // branch of z^{1/2} continuously along a sweep.
  CocycleMapH szego_cocycle(double theta) const;
  // Same, conjugated into SL(2,R) with CMV rotation orientation.
  CocycleMap szego_cocycle_sl2r(double theta) const;
  AnalyticCocycle analytic_cocycle(double theta) const;
};

enum class BoundaryKind { DirichletCut, DecoupledUnitary };

std::string to_string(BoundaryKind b);

// Pooled truncation eigenvalues: energies (Jacobi, circular=false) sorted
// ascending, or eigenangles in [0, 2 pi) (CMV, circular=true).
struct SpectrumApprox {
  std::vector<double> values;
  int N = 0;
  int omega_samples = 0;
  BoundaryKind boundary = BoundaryKind::DirichletCut;
  bool circular = false;

  double min_value() const;
  double max_value() const;
};

SpectrumApprox truncated_jacobi_spectrum(const JacobiFamily& f, const TorusPoint& omega0, int N,
                                         int omega_samples, int workers = 1);

// Decoupled-unitary truncation: the Verblunsky coefficients at the two cut
// positions are replaced by a unimodular number (default 1), which keeps the
// finite block exactly unitary.
SpectrumApprox truncated_cmv_spectrum(const CMVFamily& f, const TorusPoint& omega0, int N,
                                      int omega_samples,
                                      std::complex<double> boundary_coeff = {1.0, 0.0},
                                      int workers = 1);

// Fraction of pooled eigenvalues <= x (angle <= x for CMV, measured from
// theta = 0 counterclockwise).
double ids(const SpectrumApprox& spec, double x);

struct IDSTable {
  std::vector<double> grid;    // sorted evaluation points
  std::vector<double> values;  // k(x) in [0,1], non-decreasing

  double at(double x) const;  // step interpolation
};

IDSTable make_ids_table(const SpectrumApprox& spec, int npoints);
IDSTable make_ids_table(const SpectrumApprox& spec, const std::vector<double>& grid);

}  // namespace gaplab
