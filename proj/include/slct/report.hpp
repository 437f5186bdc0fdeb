#pragma once

#include "slct/certificate.hpp"
#include "slct/config.hpp"
#include "slct/critical_orbits.hpp"
#include "slct/resonance.hpp"
#include "slct/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slct {

struct OrbitSummary {
  int n = 0;
  Vector coords;
  double value = 0.0;
  double grad_norm = 0.0;
  bool com_zero = false;
};

struct FamilySummaryRow {
  double amplitude = 0.0;
  double lambda = 0.0;
  double period = 0.0;
  double residual = 0.0;
  double closure_error = 0.0;
  double dist_to_orbit = 0.0;
  bool minimal_period_ok = false;
};

struct FamilySummary {
  int j0 = 0;
  int branch = 0;
  double lambda_quadratic_coeff = 0.0;
  std::string truncation_note;
  std::vector<FamilySummaryRow> rows;
};

/// Everything one analysis run produces, serializable to the diff-friendly
/// key-value report format and parseable back without loss.
struct AnalysisReport {
  std::string case_name;
  std::string problem;  // e.g. "lennard_jones n=2"
  SpectralMode mode = SpectralMode::com_reduced;
  int exit_code = 0;
  OrbitSummary orbit;
  SpectralData spectral_ambient;
  SpectralData spectral_reduced;
  IsolationReport isolation;
  HypothesisReport hypotheses;
  std::optional<ResonanceReport> resonance;
  std::vector<BifurcationCertificate> certificates;
  std::vector<FamilySummary> families;
  std::vector<std::string> warnings;

  std::string serialize() const;
  static AnalysisReport parse(const std::string& text);
  bool operator==(const AnalysisReport& other) const { return serialize() == other.serialize(); }
};

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

}  // namespace slct
