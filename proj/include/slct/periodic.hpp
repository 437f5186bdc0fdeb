#pragma once

#include "slct/certificate.hpp"
#include "slct/critical_orbits.hpp"
#include "slct/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slct {

/// Truncated Fourier series of a 2*pi-periodic loop in configuration space,
/// together with the time rescaling lambda (physical period 2*pi*lambda).
struct FourierTrajectory {
  int n = 0;      // particles
  int modes = 0;  // retained harmonics M
  Vector a0;
  std::vector<Vector> ak, bk;  // cosine / sine coefficients, k = 1..M
  double lambda = 0.0;

  static FourierTrajectory constant(const Configuration& q, int modes, double lambda);

  Vector position(double t) const;
  Vector velocity_loop(double t) const;  // d/dt in loop time; physical velocity is this / lambda
  double period() const { return 2.0 * M_PI * lambda; }
  int dim() const { return 2 * n; }
};

struct QuadratureOptions {
  int nodes = 0;  // 0 = the default 4M + 4
};

/// Residual of the loop equation (second derivative plus lambda^2 grad U)
/// projected mode by mode: block 0 is the mean, then the cosine blocks
/// k = 1..M, then the sine blocks. The linear part is exact; the gradient
/// projections use the uniform trapezoid rule, spectrally accurate here.
Vector galerkin_residual(const PotentialModel& model, const FourierTrajectory& traj,
                         const QuadratureOptions& quad = {});

/// Orthonormal basis of the Hessian eigenspace for beta_{j0}^2 at orbit.q0,
/// with a deterministic sign convention.
std::vector<Vector> cluster_eigenvectors(const PotentialModel& model, const CriticalOrbit& orbit,
                                         const SpectralData& spectral, int j0);

/// First-order bifurcation ansatz q0 + a v cos t at lambda = 1/beta_{j0}.
FourierTrajectory kernel_predictor(const PotentialModel& model, const CriticalOrbit& orbit,
                                   const SpectralData& spectral, int j0, double amplitude,
                                   int modes = 16, int branch = 0);

struct IntegrationResult {
  std::vector<double> times;
  std::vector<Vector> positions;
  std::vector<Vector> velocities;
  double initial_energy = 0.0;
  double energy_drift = 0.0;  // max |E(t) - E(0)|
  std::optional<double> first_return;
};

/// Velocity-Verlet integration of the physical system (acceleration equals
/// minus the potential gradient); symplectic, second order.
IntegrationResult integrate_ode(const PotentialModel& model, const Vector& q_init,
                                const Vector& qdot_init, double t_final, double step);

struct OrbitFamilySample {
  double amplitude = 0.0;
  FourierTrajectory trajectory;
  double residual = 0.0;
  double period = 0.0;
  double dist_to_orbit = 0.0;
  double closure_error = 0.0;
  double energy_drift = 0.0;
  bool minimal_period_ok = false;
  bool verified = false;
};

struct ContinuationOptions {
  int modes = 16;
  double residual_tol = 1e-10;
  int max_newton_iter = 40;
  QuadratureOptions quadrature;
  int verify_steps_per_period = 16384;
  bool verify = true;
  bool all_branches = true;  // one continuation per cluster basis vector
};

struct FamilyBranch {
  int branch = 0;
  Vector eigenvector;
  std::vector<OrbitFamilySample> samples;
  std::string truncation_note;          // non-empty when the family stopped early
  double lambda_quadratic_coeff = 0.0;  // least-squares C in lambda(a) = lambda0 + C a^2
};

struct FamilyResult {
  int j0 = 0;
  double beta = 0.0;
  double lambda0 = 0.0;
  std::vector<FamilyBranch> branches;
  std::vector<std::string> warnings;
};

/// Continue the bifurcating family in the amplitude parameter: for each a,
/// Newton on the Fourier coefficients and lambda, solving the projected loop
/// equation together with amplitude, phase, rotation and center-of-mass
/// gauges; warm-started from the previous amplitude.
FamilyResult continue_family(const PotentialModel& model, const CriticalOrbit& orbit,
                             const SpectralData& spectral, int j0,
                             const std::vector<double>& amplitudes,
                             const ContinuationOptions& opts = {},
                             const BifurcationCertificate* certificate = nullptr);

/// Re-integrate the sample over one period and fill the closure error (phase
/// space mismatch modulo rotation), the distance to the orbit circle, the
/// first-return period estimate and the minimal-period flag.
OrbitFamilySample verify_orbit(const PotentialModel& model, const CriticalOrbit& orbit,
                               OrbitFamilySample sample, int steps_per_period = 16384);

/// max over the loop of the distance from q(t) to the rotation orbit of q0.
double distance_to_orbit(const FourierTrajectory& traj, const Configuration& q0,
                         int time_samples = 256);

/// Logarithmic amplitude grid, ascending.
std::vector<double> log_amplitude_grid(double lo, double hi, int count);

/// One row per node: t, q1x, q1y, ..., qNx, qNy, energy (physical time).
void export_trajectory_csv(const std::string& path, const PotentialModel& model,
                           const OrbitFamilySample& sample, int time_samples = 256);

/// Rows: amplitude, lambda, period, residual, closure_error, dist_to_orbit.
void export_family_csv(const std::string& path, const FamilyBranch& branch);

}  // namespace slct
