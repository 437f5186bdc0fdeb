#pragma once

#include "slct/potentials.hpp"

#include <vector>

namespace slct {

/// A refined relative equilibrium: one point q0 of the circle of critical
/// points SO(2)(q0), together with the tangent data used by later stages.
struct CriticalOrbit {
  Configuration q0;
  double value = 0.0;
  double grad_norm = 0.0;
  Vector tangent_rotation;                    // unit vector along Jq0
  std::vector<Vector> translation_directions; // two unit COM translations
  bool com_zero = false;                      // COM of q0 at the origin
};

struct IsolationReport {
  double slice_radius = 0.0;
  int samples = 0;
  double min_grad_norm_on_annulus = 0.0;
  enum class Verdict { isolated_on_slice, inconclusive } verdict = Verdict::inconclusive;
};

struct RefineOptions {
  double tol = 1e-12;  // gradient norm target, relative to 1 + |U(q)|
  int max_iter = 50;
};

/// Newton-polish a seed to a critical point, with gauge rows pinning the
/// center of mass to the seed's and the rotation phase to the seed.
CriticalOrbit refine_critical(const PotentialModel& model, const Configuration& seed,
                              const RefineOptions& opts = {});

/// The known Lennard-Jones relative equilibria for n = 2 (one orbit) and
/// n = 3 (three collinear orbits, then the two equilateral minima).
std::vector<CriticalOrbit> lj_equilibria(int n_particles);

/// Triangle with side lengths r0_ij = sqrt(-3 b_ij / a_ij), center of mass at
/// the origin, vertex 1 on the positive x-axis, then rotated by `orientation`.
/// profiles = {pair 12, pair 13, pair 23}.
CriticalOrbit schwarzschild_equilibrium(const std::vector<PairProfile>& profiles,
                                        double orientation = 0.0);

/// Sample the gradient norm on a sphere of radius slice_radius inside the
/// slice normal to the rotation tangent (and inside the COM-zero subspace
/// when com_zero). Verdict is isolated_on_slice iff the minimum sampled norm
/// exceeds `threshold`.
IsolationReport isolation_scan(const PotentialModel& model, const CriticalOrbit& orbit,
                               double slice_radius, int samples, bool com_zero = true,
                               double threshold = 1e-6, unsigned rng_seed = 20240901u);

}  // namespace slct
