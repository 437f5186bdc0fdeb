#pragma once

#include "slct/spectral.hpp"

#include <vector>

namespace slct {

/// One element k / beta_j of the resonance set, with every (k, j) pair that
/// produces it (duplicates merged).
struct LambdaPoint {
  double value = 0.0;
  std::vector<std::pair<int, int>> provenance;  // (k, j), j 1-based into betas
};

/// All k / beta_j <= lambda_max, ascending, duplicates merged.
std::vector<LambdaPoint> lambda_set(const std::vector<std::pair<double, int>>& betas,
                                    double lambda_max, double merge_tol = 1e-12);

struct RatioDiagnostic {
  int j = 0;           // the offending other index
  double ratio = 0.0;  // beta_j / beta_j0
  int nearest = 0;
};

struct AdmissibilityReport {
  std::vector<int> admissible;                              // 1-based j0
  std::vector<std::pair<int, RatioDiagnostic>> rejections;  // (j0, why)
  Matrix ratios;                                            // ratios(i, j) = beta_{i+1} / beta_{j+1}
};

/// j0 is admissible iff no beta_j / beta_j0 (j != j0) is within int_tol of a
/// positive integer.
AdmissibilityReport admissible_frequencies(const std::vector<std::pair<double, int>>& betas,
                                           double int_tol = 1e-9);

struct Window {
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double epsilon = 0.0;
};

/// lambda_pm = (1 +- eps) / beta_j0 with the largest eps <= eps_cap such that
/// the closed window meets the resonance set only at 1 / beta_j0.
Window choose_window(const std::vector<std::pair<double, int>>& betas, int j0,
                     double eps_cap = 1e-2, double eps_floor = 1e-12);

struct MinimalPeriodCheck {
  bool guaranteed = false;
  int k_checked = 0;  // fractions 1/(k beta_j0) verified outside the set for k = 2..k_checked
};

/// Verify 1/(k beta_j0) stays outside the resonance set for k = 2..k_max,
/// which pins the minimal (not just some) period of bifurcating orbits.
MinimalPeriodCheck minimal_period_guarantee(const std::vector<std::pair<double, int>>& betas,
                                            int j0, int k_max = 16, double int_tol = 1e-9);

/// Full per-orbit resonance report.
struct ResonanceReport {
  std::vector<std::pair<double, int>> betas;
  double lambda_max = 0.0;
  std::vector<LambdaPoint> lambda_points;
  AdmissibilityReport admissibility;
  struct PerJ0 {
    int j0 = 0;
    double lambda0 = 0.0;      // 1 / beta_j0
    Window window;
    double predicted_period = 0.0;  // 2 pi / beta_j0
    MinimalPeriodCheck minimal_period;
  };
  std::vector<PerJ0> branches;  // one entry per admissible j0
};

ResonanceReport resonance_report(const SpectralData& spectral, double lambda_max,
                                 double int_tol = 1e-9, double eps_cap = 1e-2);

}  // namespace slct
