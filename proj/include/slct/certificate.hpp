#pragma once

#include "slct/euler_ring.hpp"
#include "slct/resonance.hpp"
#include "slct/spectral.hpp"

#include <functional>

namespace slct {

/// Inertia of the k-th Fourier-mode block (k^2 Id - lambda^2 H) / (k^2 + 1)
/// of the linearized loop operator. Counts are real dimensions per block
/// (not doubled for the cos/sin pair).
struct ModeMorseData {
  int k = 0;
  double lambda = 0.0;
  int neg = 0;
  int zero = 0;
  int pos = 0;
};

Matrix mode_matrix(const Matrix& hessian, int k, double lambda);

ModeMorseData mode_morse(const SpectralData& spectral, int k, double lambda,
                         double zero_tol = 1e-9);
ModeMorseData mode_morse(const Matrix& hessian, int k, double lambda, double zero_tol = 1e-9);

struct TruncationChoice {
  int n0 = 0;
  double margin = 0.0;  // min over j of n0^2 - lambda_plus^2 beta_j^2
};

/// Smallest mode truncation past which no block can change inertia inside
/// the window: n0 = floor(beta_1 / beta_j0) + 1 (or 2 when j0 = 1).
TruncationChoice n0_select(const std::vector<std::pair<double, int>>& betas, int j0,
                           const Window& window);

/// Unstable part of the truncated linearized flow at parameter lambda, as a
/// circle representation: mode k contributes weight k with multiplicity
/// d_k = sum_j mult_j [k^2 < lambda^2 beta_j^2]; the trivial multiplicity is
/// the Morse index of the restricted Hessian (zero on minimal orbits).
S1RepDecomposition positive_rep(const SpectralData& spectral, double lambda, int n0,
                                double degeneracy_tol = 1e-9);

/// The computable bifurcation certificate: the Euler characteristics of the
/// truncated indices on either side of the window, their inequality, and the
/// mode-1 dimensions whose jump forces it.
struct BifurcationCertificate {
  int j0 = 0;
  double beta = 0.0;
  Window window;
  int n0 = 0;
  double margin = 0.0;
  int r_minus = 0;  // complex dimension of the mode-1 unstable block at lambda_minus
  int r_plus = 0;
  int dim_extra_kernel = 0;
  EulerRingElement chi_minus;
  EulerRingElement chi_plus;
  /// Invertible factor shared by both sides (modes >= 2 plus the
  /// lambda-independent trivial part); recorded, never applied.
  EulerRingElement shared_factor;
  bool changed = false;
};

BifurcationCertificate bifurcation_certificate(const SpectralData& spectral, int j0,
                                               const Window& window);

/// Winding number of a nonvanishing planar field sampled along a loop.
/// `field` maps a loop parameter in [0, 1) to the field value; sampling is
/// refined adaptively until each angular increment stays below pi/2.
int winding_degree(const std::function<Eigen::Vector2d(double)>& field, int initial_samples = 64,
                   double min_norm = 1e-12, int max_refinements = 16);

/// Same on a fixed closed polygonal sample; errors if the angular resolution
/// is insufficient.
int winding_degree(const std::vector<Eigen::Vector2d>& samples, double min_norm = 1e-12);

}  // namespace slct
