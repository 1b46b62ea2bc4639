#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaplab/operators.hpp"

namespace gaplab {

// A detected spectral gap (g^-, g^+) with its IDS label.
struct Gap {
  double left = 0.0;
  double right = 0.0;
  double label_value = 0.0;            // IDS at the midpoint
  std::optional<int> label_index;      // best k with frac(k alpha) ~ label_value
  double label_residual = 1.0;         // min_k |label_value - frac(k alpha)|
  int interior_count = 0;              // eigenvalues tolerated inside (pollution)

  double width() const { return right - left; }
  double midpoint() const { return 0.5 * (left + right); }
};

// Concrete label candidates {frac(k alpha) : 1 <= |k| <= k_max}.
struct LabelSet {
  Frequency alpha;
  int k_max = 50;
  std::vector<std::pair<int, double>> labels;  // (k, frac(k alpha)), sorted by value

  // brute-force best match over the stored candidates
  std::pair<int, double> best_match(double ell) const;
};

LabelSet make_label_set(Frequency alpha, int k_max = 50);

struct GapReport {
  std::vector<Gap> gaps;
  int N = 0;
  int omega_samples = 0;
  double density_threshold = 0.0;
  int k_max = 50;
  bool all_labelled = false;
  double label_tolerance = 5e-3;
  bool circular = false;
};

struct GapDetectOptions {
  double min_width = 0.02;
  // Fraction of the pooled eigenvalue count tolerated inside a gap
  // (cut-off truncations inject O(1) spurious eigenvalues per phase).
  // Negative means "use the default 2*omega_samples/total".
  double density_threshold = -1.0;
  // Free CMV spectrum is the whole circle; the largest empty arc through
  // theta=0 is only a gap candidate when v is not identically 0.
  bool allow_arc_through_zero = true;
};

std::vector<Gap> detect_gaps(const SpectrumApprox& spec, double min_width,
                             double density_threshold, bool allow_arc_through_zero = true);

// Attaches label_value (IDS at midpoint), the best integer label and residual.
Gap label_gap(Gap g, const IDSTable& ids_table, const LabelSet& labels);

// true iff every gap's residual is below tolerance; table rows for emission.
struct LabelTableRow {
  double left, right, width, label_value, residual;
  std::optional<int> label_index;
};
std::pair<bool, std::vector<LabelTableRow>> verify_gap_labelling(const GapReport& report,
                                                                 double tolerance);

// Full pipeline: spectrum -> gaps -> labels.
GapReport build_gap_report(const SpectrumApprox& spec, const LabelSet& labels,
                           const GapDetectOptions& opt, double label_tolerance = 5e-3);

struct GapOpeningRow {
  double t = 0.0;
  double width = 0.0;
  double label_value = 0.0;
  std::optional<int> label_index;
  double residual = 1.0;
};

struct GapOpeningOptions {
  int N = 1000;
  int omega_samples = 4;
  double min_width = 1e-4;
  int k_max = 50;
  int workers = 1;
};

// Recomputes the spectrum along the path b + t*perturbation (Jacobi) or
// v e^{i t perturbation} (CMV) and tracks the gap nearest IDS value
// frac(k alpha).
std::vector<GapOpeningRow> gap_opening_experiment(const JacobiFamily& f,
                                                  const TrigPoly& perturbation, int k,
                                                  const std::vector<double>& t_grid,
                                                  const GapOpeningOptions& opt);
std::vector<GapOpeningRow> gap_opening_experiment(const CMVFamily& f, const TrigPoly& perturbation,
                                                  int k, const std::vector<double>& t_grid,
                                                  const GapOpeningOptions& opt);

}  // namespace gaplab
