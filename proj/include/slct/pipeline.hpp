#pragma once

#include "slct/periodic.hpp"
#include "slct/presets.hpp"
#include "slct/report.hpp"

#include <memory>

namespace slct {

/// One analysis run with the intermediate objects kept alive so that family
/// continuations can reuse them.
struct Analysis {
  AnalysisConfig config;
  PotentialModel model;
  CriticalOrbit orbit;
  SpectralData spectral_ambient;
  SpectralData spectral_reduced;
  IsolationReport isolation;
  HypothesisReport hypotheses;
  std::optional<ResonanceReport> resonance;
  std::vector<BifurcationCertificate> certificates;
  AnalysisReport report;

  /// The spectral data selected by config.options.mode.
  const SpectralData& chosen_spectral() const {
    return config.options.mode == SpectralMode::ambient ? spectral_ambient : spectral_reduced;
  }
  const BifurcationCertificate* certificate_for(int j0) const;
  std::vector<int> admissible() const;
};

/// Full pipeline: build the model, refine the orbit, analyze both spectra,
/// check the hypotheses, and (when they hold) derive the resonance data and
/// one certificate per admissible frequency.
Analysis run_analysis(const AnalysisConfig& config);

/// Continue the family for one admissible j0, append its summary to the
/// report, and write the CSV exports when trajectory_dir is non-empty.
/// amplitudes empty = the config grid.
FamilyResult run_family(Analysis& analysis, int j0, const std::string& trajectory_dir = "",
                        std::vector<double> amplitudes = {});

}  // namespace slct
