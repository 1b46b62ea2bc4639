#include "gaplab/dynamics.hpp"

#include <cmath>

namespace gaplab {

std::vector<TorusPoint> BaseDynamics::pooled_phases(const TorusPoint& w0, int samples) const {
  if (samples < 1) throw InvalidInput("pooled_phases: samples must be >= 1");
  check_point(w0);
  std::vector<TorusPoint> out;
  out.reserve(static_cast<std::size_t>(samples));
  if (kind == BaseKind::TorusRotation) {
    for (int j = 0; j < samples; ++j)
      out.emplace_back(w0.c[0] + static_cast<double>(j) / static_cast<double>(samples));
  } else {
    constexpr long kStride = 1009;  // odd prime decorrelates consecutive pools
    for (int j = 0; j < samples; ++j) out.push_back(advance(w0, kStride * j));
  }
  return out;
}

TrigPoly::TrigPoly(const std::map<int, std::complex<double>>& coeffs) {
  int d = 0;
  for (const auto& [k, v] : coeffs) d = std::max(d, std::abs(k));
  degree_ = d;
  c_.assign(static_cast<std::size_t>(2 * d + 1), {0.0, 0.0});
  for (const auto& [k, v] : coeffs) c_[static_cast<std::size_t>(k + d)] = v;
  validate_reality();
}

void TrigPoly::validate_reality() const {
  for (int k = 0; k <= degree_; ++k) {
    std::complex<double> hk = c_[static_cast<std::size_t>(k + degree_)];
    std::complex<double> hmk = c_[static_cast<std::size_t>(-k + degree_)];
    if (std::abs(hmk - std::conj(hk)) > 1e-12 * (1.0 + std::abs(hk)))
      throw InvalidInput("TrigPoly: reality constraint c_{-k} = conj(c_k) violated at k=" +
                         std::to_string(k));
  }
}

TrigPoly TrigPoly::constant(double v) {
  std::map<int, std::complex<double>> m;
  m[0] = {v, 0.0};
  return TrigPoly(m);
}

TrigPoly TrigPoly::cosine(int k, double amp) {
  if (k == 0) return constant(amp);
  std::map<int, std::complex<double>> m;
  m[k] = {0.5 * amp, 0.0};
  m[-k] = {0.5 * amp, 0.0};
  return TrigPoly(m);
}

TrigPoly TrigPoly::sine(int k, double amp) {
  if (k == 0) return constant(0.0);
  std::map<int, std::complex<double>> m;
  m[k] = {0.0, -0.5 * amp};
  m[-k] = {0.0, 0.5 * amp};
  return TrigPoly(m);
}

double TrigPoly::eval(double omega) const {
  // real form: c_0 + 2 sum_{k>0} Re(c_k e^{2 pi i k w})
  double acc = c_[static_cast<std::size_t>(degree_)].real();
  if (degree_ == 0) return acc;
  double cw = std::cos(kTwoPi * omega);
  double sw = std::sin(kTwoPi * omega);
  double ck = 1.0, sk = 0.0;  // cos/sin of 2 pi k w, k starting at 0
  for (int k = 1; k <= degree_; ++k) {
    double cn = ck * cw - sk * sw;
    double sn = sk * cw + ck * sw;
    ck = cn;
    sk = sn;
    const std::complex<double>& hk = c_[static_cast<std::size_t>(k + degree_)];
    acc += 2.0 * (hk.real() * ck - hk.imag() * sk);
  }
  return acc;
}

std::complex<double> TrigPoly::eval_complex(std::complex<double> omega) const {
  const std::complex<double> i2pi(0.0, kTwoPi);
  std::complex<double> acc(0.0, 0.0);
  for (int k = -degree_; k <= degree_; ++k) {
    const std::complex<double>& hk = c_[static_cast<std::size_t>(k + degree_)];
    if (hk == std::complex<double>(0.0, 0.0)) continue;
    acc += hk * std::exp(i2pi * static_cast<double>(k) * omega);
  }
  return acc;
}

TrigPoly TrigPoly::scaled(double s) const {
  TrigPoly out = *this;
  for (auto& v : out.c_) v *= s;
  return out;
}

TrigPoly TrigPoly::plus(const TrigPoly& other) const {
  std::map<int, std::complex<double>> m;
  for (int k = -degree_; k <= degree_; ++k) m[k] += fourier_coefficient(k);
  for (int k = -other.degree_; k <= other.degree_; ++k) m[k] += other.fourier_coefficient(k);
  return TrigPoly(m);
}

bool TrigPoly::is_zero(double tol) const {
  for (const auto& v : c_)
    if (std::abs(v) > tol) return false;
  return true;
}

double TrigPoly::reality_defect(int grid) const {
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    std::complex<double> v = eval_complex({static_cast<double>(i) / grid, 0.0});
    worst = std::max(worst, std::fabs(v.imag()));
  }
  return worst;
}

}  // namespace gaplab
