#pragma once

#include "slct/potentials.hpp"
#include "slct/spectral.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slct {

/// Problem block of a config: which potential, how many particles, and the
/// per-pair parameters for the non-Lennard-Jones kinds.
struct ProblemSpec {
  enum class Type { lennard_jones, schwarzschild, custom };
  Type type = Type::lennard_jones;
  int n = 2;
  /// (i, j) 1-based with i < j -> (a, b), required for schwarzschild
  std::map<std::pair<int, int>, std::pair<double, double>> schwarzschild_pairs;
  /// (i, j) -> power-sum terms (coefficient, exponent), required for custom
  std::map<std::pair<int, int>, std::vector<std::pair<double, double>>> custom_pairs;

  PotentialModel build_model() const;
};

struct AnalysisOptions {
  double grad_tol = 1e-12;
  double cluster_tol = 1e-7;
  double int_tol = 1e-9;
  double residual_tol = 1e-10;
  double eps_cap = 1e-2;
  double lambda_max = 0.0;  // 0 = automatic (a few multiples of the slowest frequency)
  int modes = 16;
  double amplitude_lo = 1e-4;
  double amplitude_hi = 1e-2;
  int amplitude_count = 8;
  SpectralMode mode = SpectralMode::com_reduced;
  double isolation_radius = 1e-2;
  int isolation_samples = 64;

  void validate() const;
};

struct OutputSpec {
  std::string report_path;     // empty = caller decides
  std::string trajectory_dir;  // empty = caller decides
};

struct AnalysisConfig {
  std::string name = "analysis";
  ProblemSpec problem;
  std::optional<Vector> seed;
  AnalysisOptions options;
  OutputSpec outputs;
};

/// Parse the key-value config format (see the README for the schema).
/// Errors carry "<source>:<line>: field: message" diagnostics.
AnalysisConfig parse_config_text(const std::string& text, const std::string& source_name);
AnalysisConfig load_config(const std::string& path);

std::string to_string(ProblemSpec::Type type);

}  // namespace slct
