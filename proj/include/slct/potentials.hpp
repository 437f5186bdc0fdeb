#pragma once

#include "slct/types.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace slct {

/// Radial profile of one pairwise interaction: value and first two derivatives.
struct PairProfile {
  enum class Kind { lennard_jones, schwarzschild, custom };

  Kind kind = Kind::lennard_jones;

  // schwarzschild parameters, require a < 0 < b
  double a = 0.0;
  double b = 0.0;

  // custom analytic profile
  std::function<double(double)> f, f1, f2;

  static PairProfile lennard_jones();
  static PairProfile schwarzschild(double a, double b);
  static PairProfile custom(std::function<double(double)> f,
                            std::function<double(double)> f1,
                            std::function<double(double)> f2);
  /// f(r) = sum_i c_i * r^{e_i} with analytic derivatives.
  static PairProfile power_sum(std::vector<std::pair<double, double>> terms);

  double value(double r) const;
  double deriv(double r) const;
  double deriv2(double r) const;
};

/// Pairwise planar N-body potential U(q) = sum_{i<j} f_ij(|q_i - q_j|).
///
/// The model is immutable after construction and all evaluations are pure,
/// so concurrent use from multiple threads needs no synchronization.
class PotentialModel {
public:
  PotentialModel(int n_particles, std::vector<PairProfile> pair_table,
                 double min_distance = 1e-8);

  static PotentialModel lennard_jones(int n_particles);
  /// a_coeffs/b_coeffs indexed by unordered pairs (i<j) in lexicographic order.
  static PotentialModel schwarzschild(int n_particles, const std::vector<double>& a_coeffs,
                                      const std::vector<double>& b_coeffs);

  int particles() const { return n_; }
  int dim() const { return 2 * n_; }
  int pair_count() const { return n_ * (n_ - 1) / 2; }
  double min_distance() const { return min_distance_; }

  /// Index of unordered pair {i,j}, i < j, in the flat pair table.
  int pair_index(int i, int j) const;
  const PairProfile& pair(int i, int j) const { return pairs_[pair_index(i, j)]; }

  /// True when every profile depends on inter-particle distances only, which
  /// holds for every model this class can represent. Kept as a method so that
  /// callers document *why* they pin center-of-mass directions.
  bool translation_invariant() const { return true; }

  double energy(const Configuration& q) const;
  Vector gradient(const Configuration& q) const;
  Matrix hessian(const Configuration& q) const;

private:
  void check_domain(const Configuration& q) const;

  int n_;
  std::vector<PairProfile> pairs_;
  double min_distance_;
};

/// Rotate every particle by angle theta (block-diagonal 2x2 rotations).
Configuration rotate_configuration(const Configuration& q, double theta);

/// Infinitesimal-rotation generator: each (x, y) block maps to (-y, x).
Vector infinitesimal_rotation(const Configuration& q);
Vector infinitesimal_rotation(const Vector& coords);

/// Orthogonal projector onto the center-of-mass-zero subspace {sum q_i = 0}
/// of R^{2N}; symmetric, idempotent, rank 2N-2.
Matrix com_projector(int n_particles);

/// Max |U(R_theta q) - U(q)| over `samples` equispaced rotation angles.
double invariance_audit(const PotentialModel& model, const Configuration& q, int samples);

}  // namespace slct
