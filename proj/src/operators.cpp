#include "gaplab/operators.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "gaplab/parallel.hpp"

namespace gaplab {

namespace {
void check_positive_on_grid(const TrigPoly& a, int grid = 4096) {
  for (int i = 0; i < grid; ++i) {
    if (a.eval(static_cast<double>(i) / grid) <= 0.0)
      throw InvalidInput("JacobiFamily: off-diagonal sampling function must be positive");
  }
}
}  // namespace

JacobiFamily::JacobiFamily(TrigPoly a_, TrigPoly b_, BaseDynamics base_)
    : a(std::move(a_)), b(std::move(b_)), base(base_) {
  check_positive_on_grid(a);
}

CocycleMap JacobiFamily::cocycle(double E) const {
  CocycleMap c;
  c.base = base;
  c.homotopy_const = true;
  c.angle_orientation = +1;
  TrigPoly pa = a, pb = b;
  c.A = [pa, pb, E](const TorusPoint& w) -> Mat2 {
    double av = pa.eval(sample_coord(w));
    if (av <= 0.0) throw InvalidInput("jacobi cocycle: a(w) <= 0");
    double bv = pb.eval(sample_coord(w));
    double inv = 1.0 / av;
    return {(E - bv) * inv, -inv, av, 0.0};
  };
  return c;
}

AnalyticCocycle JacobiFamily::analytic_cocycle(double E) const {
  AnalyticCocycle c;
  c.base = base;
  c.on_circle = cocycle(E);
  TrigPoly pa = a, pb = b;
  c.A = [pa, pb, E](const TorusPoint& w, double eps) -> Mat2C {
    std::complex<double> z(sample_coord(w), eps);
    std::complex<double> av = pa.eval_complex(z);
    std::complex<double> bv = pb.eval_complex(z);
    std::complex<double> inv = 1.0 / av;
    return {(E - bv) * inv, -inv, av, {0.0, 0.0}};
  };
  return c;
}

CMVFamily CMVFamily::make_polar(double lambda, TrigPoly h, BaseDynamics base) {
  if (!(lambda >= 0.0 && lambda < 1.0))
    throw InvalidInput("CMVFamily: lambda must lie in [0,1)");
  CMVFamily f;
  f.polar = true;
  f.lambda = lambda;
  f.h = std::move(h);
  f.base = base;
  return f;
}

CMVFamily CMVFamily::make_pair(TrigPoly v_re, TrigPoly v_im, BaseDynamics base) {
  CMVFamily f;
  f.polar = false;
  f.v_re = std::move(v_re);
  f.v_im = std::move(v_im);
  f.base = base;
  if (f.sup_v() >= 1.0) throw InvalidInput("CMVFamily: sup |v| must be < 1");
  return f;
}

std::complex<double> CMVFamily::v_at(const TorusPoint& w) const {
  double x = sample_coord(w);
  if (polar) return std::polar(lambda, h.eval(x));
  return {v_re.eval(x), v_im.eval(x)};
}

double CMVFamily::sup_v(int grid) const {
  if (polar) return lambda;
  double m = 0.0;
  for (int i = 0; i < grid; ++i) {
    double x = static_cast<double>(i) / grid;
    m = std::max(m, std::abs(std::complex<double>(v_re.eval(x), v_im.eval(x))));
  }
  return m;
}

bool CMVFamily::is_free(int grid) const { return sup_v(grid) < 1e-14; }

CocycleMapH CMVFamily::szego_cocycle(double theta) const {
  if (sup_v() >= 1.0) throw InvalidInput("szego_cocycle: sup |v| must be < 1");
  CocycleMapH c;
  c.base = base;
  c.homotopy_const = true;
  CMVFamily f = *this;
  std::complex<double> z = std::polar(1.0, theta);
  std::complex<double> zph = std::polar(1.0, -0.5 * theta);  // z^{-1/2}, branch by theta
  c.A = [f, z, zph](const TorusPoint& w) -> Mat2H {
    std::complex<double> v = f.v_at(w);
    double nv = std::norm(v);
    if (nv >= 1.0) throw InvalidInput("szego_cocycle: |v(w)| >= 1");
    double s = 1.0 / std::sqrt(1.0 - nv);
    // (z^{-1/2}/rho) [[z, -conj v], [-v, 1]]; SU(1,1): a = z^{1/2}/rho, b = -z^{-1/2} conj(v)/rho
    Mat2H m;
    m.a = zph * z * s;
    m.b = -zph * std::conj(v) * s;
    return m;
  };
  return c;
}

CocycleMap CMVFamily::szego_cocycle_sl2r(double theta) const {
  return to_sl2r(szego_cocycle(theta));
}

AnalyticCocycle CMVFamily::analytic_cocycle(double theta) const {
  AnalyticCocycle c;
  c.base = base;
  c.on_circle = szego_cocycle_sl2r(theta);
  CMVFamily f = *this;
  std::complex<double> z = std::polar(1.0, theta);
  std::complex<double> zph = std::polar(1.0, -0.5 * theta);
  // Entrywise analytic continuation: v and conj(v) continue separately.
  c.A = [f, z, zph](const TorusPoint& w, double eps) -> Mat2C {
    std::complex<double> x(sample_coord(w), eps);
    std::complex<double> v, vbar;
    if (f.polar) {
      std::complex<double> hw = f.h.eval_complex(x);
      v = f.lambda * std::exp(std::complex<double>(0.0, 1.0) * hw);
      vbar = f.lambda * std::exp(std::complex<double>(0.0, -1.0) * hw);
    } else {
      std::complex<double> re = f.v_re.eval_complex(x);
      std::complex<double> im = f.v_im.eval_complex(x);
      v = re + std::complex<double>(0.0, 1.0) * im;
      vbar = re - std::complex<double>(0.0, 1.0) * im;
    }
    std::complex<double> rho2 = 1.0 - v * vbar;
    std::complex<double> s = zph / std::sqrt(rho2);
    Mat2C m;
    // conjugate into SL(2,C) with the same M as on the circle
    std::complex<double> a = s * z, b = -s * vbar, bb = -s * v, d = s;
    // M^{-1} [[a,b],[bb,d]] M, M = (1/(1+i))[[1,-i],[1,i]]
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> m11 = 0.5 * (a + b + bb + d);
    std::complex<double> m12 = 0.5 * I * (-a + b - bb + d);
    std::complex<double> m21 = 0.5 * I * (a + b - bb - d);
    std::complex<double> m22 = 0.5 * (a - b - bb + d);
    m.a11 = m11;
    m.a12 = m12;
    m.a21 = m21;
    m.a22 = m22;
    return m;
  };
  return c;
}

std::string to_string(BoundaryKind b) {
  return b == BoundaryKind::DirichletCut ? "dirichlet-cut" : "decoupled-unitary";
}

double SpectrumApprox::min_value() const {
  if (values.empty()) throw InvalidInput("SpectrumApprox: empty");
  return values.front();
}
double SpectrumApprox::max_value() const {
  if (values.empty()) throw InvalidInput("SpectrumApprox: empty");
  return values.back();
}

SpectrumApprox truncated_jacobi_spectrum(const JacobiFamily& f, const TorusPoint& omega0, int N,
                                         int omega_samples, int workers) {
  if (N < 16) throw InvalidInput("truncated_jacobi_spectrum: N must be >= 16");
  if (omega_samples < 1) throw InvalidInput("truncated_jacobi_spectrum: omega_samples >= 1");
  std::vector<TorusPoint> phases = f.base.pooled_phases(omega0, omega_samples);
  std::vector<std::vector<double>> per_phase(phases.size());

  parallel_for(phases.size(), workers, [&](std::size_t j) {
    Eigen::VectorXd diag(N), sub(N - 1);
    TorusPoint w = phases[j];
    for (int i = 0; i < N; ++i) {
      diag[i] = f.b_at(w);
      if (i + 1 < N) sub[i] = f.a_at(w);
      w = f.base.step(w);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw ComputeError("truncated_jacobi_spectrum: tridiagonal eigensolver failed (N=" +
                         std::to_string(N) + ")");
    per_phase[j].assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
  });

  SpectrumApprox out;
  out.N = N;
  out.omega_samples = omega_samples;
  out.boundary = BoundaryKind::DirichletCut;
  out.circular = false;
  out.values.reserve(static_cast<std::size_t>(N) * omega_samples);
  for (const auto& v : per_phase) out.values.insert(out.values.end(), v.begin(), v.end());
  std::sort(out.values.begin(), out.values.end());
  return out;
}

SpectrumApprox truncated_cmv_spectrum(const CMVFamily& f, const TorusPoint& omega0, int N,
                                      int omega_samples, std::complex<double> boundary_coeff,
                                      int workers) {
  if (N < 16 || N % 2 != 0)
    throw InvalidInput("truncated_cmv_spectrum: N must be even and >= 16");
  if (std::fabs(std::abs(boundary_coeff) - 1.0) > 1e-12)
    throw InvalidInput("truncated_cmv_spectrum: boundary coefficient must be unimodular");
  if (omega_samples < 1) throw InvalidInput("truncated_cmv_spectrum: omega_samples >= 1");

  std::vector<TorusPoint> phases = f.base.pooled_phases(omega0, omega_samples);
  std::vector<std::vector<double>> per_phase(phases.size());

  parallel_for(phases.size(), workers, [&](std::size_t j) {
    using CMat = Eigen::MatrixXcd;
    // interior Verblunsky coefficients alpha_0 .. alpha_{N-2}
    std::vector<std::complex<double>> al(static_cast<std::size_t>(N - 1));
    TorusPoint w = phases[j];
    for (int i = 0; i < N - 1; ++i) {
      al[static_cast<std::size_t>(i)] = f.v_at(w);
      w = f.base.step(w);
    }
    auto theta_block = [](std::complex<double> alpha) {
      double rho = std::sqrt(std::max(0.0, 1.0 - std::norm(alpha)));
      Eigen::Matrix2cd t;
      t << std::conj(alpha), rho, rho, -alpha;
      return t;
    };
    CMat L = CMat::Zero(N, N), M = CMat::Zero(N, N);
    for (int n = 0; n + 1 < N; n += 2)
      L.block<2, 2>(n, n) = theta_block(al[static_cast<std::size_t>(n)]);
    M(0, 0) = -boundary_coeff;                    // cut at alpha_{-1}
    M(N - 1, N - 1) = std::conj(boundary_coeff);  // cut at alpha_{N-1}
    for (int n = 1; n + 1 < N - 1; n += 2)
      M.block<2, 2>(n, n) = theta_block(al[static_cast<std::size_t>(n)]);
    CMat U = L * M;
    double unit_defect = (U.adjoint() * U - CMat::Identity(N, N)).norm();
    if (unit_defect > 1e-8)
      throw ComputeError("truncated_cmv_spectrum: non-unitary truncation, defect=" +
                         std::to_string(unit_defect));
    Eigen::ComplexEigenSolver<CMat> es(U, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
      throw ComputeError("truncated_cmv_spectrum: eigensolver failed (N=" + std::to_string(N) +
                         ")");
    std::vector<double> angles(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
      std::complex<double> ev = es.eigenvalues()[i];
      double ang = std::arg(ev);
      if (ang < 0.0) ang += kTwoPi;
      if (ang >= kTwoPi) ang -= kTwoPi;
      angles[static_cast<std::size_t>(i)] = ang;
    }
    per_phase[j] = std::move(angles);
  });

  SpectrumApprox out;
  out.N = N;
  out.omega_samples = omega_samples;
  out.boundary = BoundaryKind::DecoupledUnitary;
  out.circular = true;
  out.values.reserve(static_cast<std::size_t>(N) * omega_samples);
  for (const auto& v : per_phase) out.values.insert(out.values.end(), v.begin(), v.end());
  std::sort(out.values.begin(), out.values.end());
  return out;
}

double ids(const SpectrumApprox& spec, double x) {
  if (spec.values.empty()) throw InvalidInput("ids: empty spectrum");
  auto it = std::upper_bound(spec.values.begin(), spec.values.end(), x);
  return static_cast<double>(it - spec.values.begin()) / static_cast<double>(spec.values.size());
}

double IDSTable::at(double x) const {
  if (grid.empty()) throw InvalidInput("IDSTable: empty");
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  if (it == grid.begin()) return values.front();
  return values[static_cast<std::size_t>(it - grid.begin() - 1)];
}

IDSTable make_ids_table(const SpectrumApprox& spec, const std::vector<double>& grid) {
  IDSTable t;
  t.grid = grid;
  std::sort(t.grid.begin(), t.grid.end());
  t.values.reserve(t.grid.size());
  for (double x : t.grid) t.values.push_back(ids(spec, x));
  return t;
}

IDSTable make_ids_table(const SpectrumApprox& spec, int npoints) {
  if (npoints < 2) throw InvalidInput("make_ids_table: need >= 2 points");
  double lo = spec.min_value(), hi = spec.max_value();
  std::vector<double> grid(static_cast<std::size_t>(npoints));
  for (int i = 0; i < npoints; ++i)
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (npoints - 1);
  return make_ids_table(spec, grid);
}

}  // namespace gaplab
