#pragma once

#include "slct/critical_orbits.hpp"

#include <string>
#include <vector>

namespace slct {

enum class SpectralMode { ambient, com_reduced, normal_slice };

std::string to_string(SpectralMode mode);
SpectralMode spectral_mode_from_string(const std::string& s);

/// Clustered spectrum of the Hessian at a critical orbit.
struct SpectralData {
  SpectralMode mode = SpectralMode::ambient;
  int dim = 0;
  std::vector<std::pair<double, int>> eigenvalues;  // (cluster mean, multiplicity), ascending
  int kernel_dim = 0;
  int morse_index = 0;
  /// kernel_dim minus the symmetry-tangent dimension present in this mode:
  /// the rotation tangent survives in ambient and com_reduced, nothing in
  /// normal_slice. Strictly positive values mean genuine degeneracy.
  int extra_kernel_dim = 0;
  /// (beta_j, multiplicity) with beta_j^2 the distinct positive eigenvalues,
  /// strictly descending in beta.
  std::vector<std::pair<double, int>> betas;
  std::vector<std::string> warnings;

  int positive_count() const;
  double beta(int j) const;      // 1-based
  int beta_mult(int j) const;    // 1-based
};

struct AnalyzeOptions {
  double cluster_tol = 1e-7;  // relative to the spectral radius
};

/// Eigen-decompose the Hessian at orbit.q0, restricted by orthogonal
/// projection according to `mode`, and cluster eigenvalues into
/// multiplicities. Eigenvalues within the cluster tolerance of zero are
/// assigned to the kernel.
SpectralData analyze_hessian(const PotentialModel& model, const CriticalOrbit& orbit,
                             SpectralMode mode, const AnalyzeOptions& opts = {});

struct HypothesisReport {
  bool minimal = false;            // no negative eigenvalues
  bool isolated = false;           // forwarded isolation verdict
  bool free_action = true;         // trivial isotropy on the collision-free set
  bool positive_spectrum = false;  // at least one positive eigenvalue
  bool all() const { return minimal && isolated && free_action && positive_spectrum; }
};

HypothesisReport check_hypotheses(const SpectralData& data, const IsolationReport& isolation);

/// Max deviation between the monic polynomial built from the given
/// eigenvalues (with multiplicity) and `expected_coeffs` (highest degree
/// first, any leading coefficient; it is normalized before comparing).
double characteristic_polynomial_check(const std::vector<double>& eigenvalues,
                                       const std::vector<double>& expected_coeffs);

/// Monic coefficients (highest degree first) of prod (x - mu_i).
std::vector<double> monic_from_roots(const std::vector<double>& roots);

}  // namespace slct
