#include "gaplab/gaps.hpp"

#include <algorithm>
#include <cmath>

#include "gaplab/parallel.hpp"

namespace gaplab {

namespace {

double mod1_dist(double x, double y) {
  double d = std::fabs(frac(x) - frac(y));
  return std::min(d, 1.0 - d);
}

struct Candidate {
  double width;
  std::size_t i;  // window [i, i+m+1] in the (possibly doubled) value array
};

}  // namespace

LabelSet make_label_set(Frequency alpha, int k_max) {
  if (k_max < 1) throw InvalidInput("make_label_set: k_max must be >= 1");
  LabelSet s{alpha, k_max, {}};
  for (int k = 1; k <= k_max; ++k) {
    double pos = frac(k * alpha.alpha);
    double neg = frac(-k * alpha.alpha);
    if (pos > 0.0 && pos < 1.0) s.labels.emplace_back(k, pos);
    if (neg > 0.0 && neg < 1.0) s.labels.emplace_back(-k, neg);
  }
  std::sort(s.labels.begin(), s.labels.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  // pairwise distinctness at tested range (fails for rational alpha)
  for (std::size_t i = 1; i < s.labels.size(); ++i) {
    if (std::fabs(s.labels[i].second - s.labels[i - 1].second) < 1e-12)
      throw InvalidInput("make_label_set: label values collide; alpha rational at this k_max?");
  }
  return s;
}

std::pair<int, double> LabelSet::best_match(double ell) const {
  int best_k = 0;
  double best = 2.0;
  // smallest |k| first, positive before negative, so ties resolve deterministically
  for (int k = 1; k <= k_max; ++k) {
    for (int sk : {k, -k}) {
      double r = mod1_dist(ell, frac(sk * alpha.alpha));
      if (r < best - 1e-18) {
        best = r;
        best_k = sk;
      }
    }
  }
  return {best_k, best};
}

std::vector<Gap> detect_gaps(const SpectrumApprox& spec, double min_width,
                             double density_threshold, bool allow_arc_through_zero) {
  if (spec.omega_samples < 4) throw InvalidInput("detect_gaps: pool over >= 4 phases");
  const std::vector<double>& v = spec.values;
  const std::size_t M = v.size();
  if (M < 2) return {};
  if (density_threshold < 0.0) throw InvalidInput("detect_gaps: density_threshold must be >= 0");
  std::size_t m = static_cast<std::size_t>(std::floor(density_threshold * static_cast<double>(M)));
  if (m + 2 > M) m = M - 2;

  std::vector<double> w2;
  std::size_t limit;  // number of admissible window starts
  if (spec.circular) {
    w2.reserve(2 * M);
    w2 = v;
    for (double x : v) w2.push_back(x + kTwoPi);
    limit = M;
  } else {
    w2 = v;
    limit = M - m - 1;
  }

  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < limit; ++i) {
    std::size_t j = i + m + 1;
    if (j >= w2.size()) break;
    double width = w2[j] - w2[i];
    if (spec.circular && width >= kTwoPi) continue;
    if (width < min_width) continue;
    if (spec.circular && !allow_arc_through_zero && w2[j] > kTwoPi) continue;
    cands.push_back({width, i});
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.width != b.width) return a.width > b.width;
    return a.i < b.i;
  });

  std::vector<std::pair<std::size_t, std::size_t>> taken;  // index ranges [i, j]
  std::vector<Gap> out;
  for (const Candidate& c : cands) {
    std::size_t lo = c.i, hi = c.i + m + 1;
    bool overlaps = false;
    for (const auto& [tlo, thi] : taken) {
      bool disjoint = hi < tlo || lo > thi;
      if (spec.circular) {
        // compare on the circle: ranges are index windows mod M
        std::size_t lo_m = lo % M, hi_m = hi % M, tlo_m = tlo % M, thi_m = thi % M;
        auto in_range = [&](std::size_t x, std::size_t a, std::size_t b) {
          if (a <= b) return x >= a && x <= b;
          return x >= a || x <= b;  // wrapped
        };
        disjoint = !(in_range(lo_m, tlo_m, thi_m) || in_range(hi_m, tlo_m, thi_m) ||
                     in_range(tlo_m, lo_m, hi_m) || in_range(thi_m, lo_m, hi_m));
      }
      if (!disjoint) {
        overlaps = true;
        break;
      }
    }
    if (overlaps) continue;
    taken.emplace_back(lo, hi);
    Gap g;
    g.left = w2[lo];
    g.right = w2[lo + m + 1];
    g.interior_count = static_cast<int>(m);
    out.push_back(g);
  }
  std::sort(out.begin(), out.end(), [](const Gap& a, const Gap& b) { return a.left < b.left; });
  return out;
}

Gap label_gap(Gap g, const IDSTable& ids_table, const LabelSet& labels) {
  double mid = g.midpoint();
  g.label_value = ids_table.at(mid);
  auto [k, res] = labels.best_match(g.label_value);
  g.label_index = k;
  g.label_residual = res;
  return g;
}

std::pair<bool, std::vector<LabelTableRow>> verify_gap_labelling(const GapReport& report,
                                                                 double tolerance) {
  std::vector<LabelTableRow> rows;
  bool ok = true;
  for (const Gap& g : report.gaps) {
    rows.push_back({g.left, g.right, g.width(), g.label_value, g.label_residual, g.label_index});
    if (g.label_residual >= tolerance) ok = false;
  }
  return {ok, rows};
}

GapReport build_gap_report(const SpectrumApprox& spec, const LabelSet& labels,
                           const GapDetectOptions& opt, double label_tolerance) {
  double thr = opt.density_threshold;
  if (thr < 0.0)
    thr = 2.0 * static_cast<double>(spec.omega_samples) / static_cast<double>(spec.values.size());
  std::vector<Gap> gaps = detect_gaps(spec, opt.min_width, thr, opt.allow_arc_through_zero);

  std::vector<double> mids;
  mids.reserve(gaps.size());
  for (const Gap& g : gaps) mids.push_back(spec.circular ? std::fmod(g.midpoint(), kTwoPi)
                                                         : g.midpoint());
  IDSTable table = mids.empty() ? IDSTable{{spec.min_value()}, {0.0}}
                                : make_ids_table(spec, mids);

  GapReport rep;
  rep.N = spec.N;
  rep.omega_samples = spec.omega_samples;
  rep.density_threshold = thr;
  rep.k_max = labels.k_max;
  rep.label_tolerance = label_tolerance;
  rep.circular = spec.circular;
  for (Gap g : gaps) {
    double mid = spec.circular ? std::fmod(g.midpoint(), kTwoPi) : g.midpoint();
    g.label_value = table.at(mid);
    auto [k, res] = labels.best_match(g.label_value);
    g.label_index = k;
    g.label_residual = res;
    rep.gaps.push_back(g);
  }
  double worst = 0.0;
  for (const Gap& g : rep.gaps) worst = std::max(worst, g.label_residual);
  rep.all_labelled = worst < label_tolerance;
  return rep;
}

namespace {

template <typename SpectrumFn>
std::vector<GapOpeningRow> opening_rows(Frequency alpha, int k, const std::vector<double>& t_grid,
                                        const GapOpeningOptions& opt, SpectrumFn&& spectrum_at) {
  bool has_zero = false;
  for (double t : t_grid) has_zero = has_zero || std::fabs(t) < 1e-12;
  if (!has_zero) throw InvalidInput("gap_opening_experiment: t_grid must include 0");

  double target = frac(k * alpha.alpha);
  std::vector<GapOpeningRow> rows(t_grid.size());
  parallel_for(t_grid.size(), opt.workers, [&](std::size_t idx) {
    double t = t_grid[idx];
    SpectrumApprox spec = spectrum_at(t);
    double thr = 2.0 * static_cast<double>(spec.omega_samples) /
                 static_cast<double>(spec.values.size());
    std::vector<Gap> gaps = detect_gaps(spec, opt.min_width, thr, /*allow_zero_arc=*/true);
    GapOpeningRow row;
    row.t = t;
    double best = 2.0;
    for (const Gap& g : gaps) {
      double mid = spec.circular ? std::fmod(g.midpoint(), kTwoPi) : g.midpoint();
      double ell = ids(spec, mid);
      double res = mod1_dist(ell, target);
      if (res < best) {
        best = res;
        row.width = g.width();
        row.label_value = ell;
        row.residual = res;
        row.label_index = k;
      }
    }
    rows[idx] = row;
  });
  return rows;
}

}  // namespace

std::vector<GapOpeningRow> gap_opening_experiment(const JacobiFamily& f,
                                                  const TrigPoly& perturbation, int k,
                                                  const std::vector<double>& t_grid,
                                                  const GapOpeningOptions& opt) {
  return opening_rows(f.base.alpha, k, t_grid, opt, [&](double t) {
    JacobiFamily pf(f.a, f.b.plus(perturbation.scaled(t)), f.base);
    return truncated_jacobi_spectrum(pf, pf.base.origin(), opt.N, opt.omega_samples);
  });
}

std::vector<GapOpeningRow> gap_opening_experiment(const CMVFamily& f, const TrigPoly& perturbation,
                                                  int k, const std::vector<double>& t_grid,
                                                  const GapOpeningOptions& opt) {
  if (!f.polar)
    throw InvalidInput("gap_opening_experiment: CMV path v e^{i t p} needs the polar form");
  return opening_rows(f.base.alpha, k, t_grid, opt, [&](double t) {
    CMVFamily pf = CMVFamily::make_polar(f.lambda, f.h.plus(perturbation.scaled(t)), f.base);
    int N = opt.N % 2 == 0 ? opt.N : opt.N + 1;
    return truncated_cmv_spectrum(pf, pf.base.origin(), N, opt.omega_samples);
  });
}

}  // namespace gaplab
