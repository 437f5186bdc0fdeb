#include "slct/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slct {

std::string to_string(SpectralMode mode) {
  switch (mode) {
    case SpectralMode::ambient: return "ambient";
    case SpectralMode::com_reduced: return "com_reduced";
    case SpectralMode::normal_slice: return "normal_slice";
  }
  return "?";
}

SpectralMode spectral_mode_from_string(const std::string& s) {
  if (s == "ambient") return SpectralMode::ambient;
  if (s == "com_reduced" || s == "com") return SpectralMode::com_reduced;
  if (s == "normal_slice") return SpectralMode::normal_slice;
  fail(ErrorCode::parse, "unknown spectral mode '" + s + "'");
}

int SpectralData::positive_count() const {
  int c = 0;
  for (const auto& [b, m] : betas) c += m;
  return c;
}

double SpectralData::beta(int j) const {
  if (j < 1 || j > static_cast<int>(betas.size()))
    fail(ErrorCode::argument, "beta index out of range");
  return betas[j - 1].first;
}

int SpectralData::beta_mult(int j) const {
  if (j < 1 || j > static_cast<int>(betas.size()))
    fail(ErrorCode::argument, "beta index out of range");
  return betas[j - 1].second;
}

SpectralData analyze_hessian(const PotentialModel& model, const CriticalOrbit& orbit,
                             SpectralMode mode, const AnalyzeOptions& opts) {
  if (!(opts.cluster_tol > 0.0)) fail(ErrorCode::argument, "cluster tolerance must be positive");
  const int dim = model.dim();
  const Matrix h = model.hessian(orbit.q0);

  // Basis of the analyzed subspace.
  Matrix basis;
  int tangent_dims_in_mode = 0;
  switch (mode) {
    case SpectralMode::ambient:
      basis = Matrix::Identity(dim, dim);
      tangent_dims_in_mode = 1;  // rotation tangent; translations count as genuine degeneracy
      break;
    case SpectralMode::com_reduced:
    case SpectralMode::normal_slice: {
      Matrix pinned(dim, mode == SpectralMode::normal_slice ? 3 : 2);
      pinned.col(0) = orbit.translation_directions[0];
      pinned.col(1) = orbit.translation_directions[1];
      if (mode == SpectralMode::normal_slice) pinned.col(2) = orbit.tangent_rotation;
      Eigen::HouseholderQR<Matrix> qr(pinned);
      Matrix full = qr.householderQ();
      basis = full.rightCols(dim - pinned.cols());
      tangent_dims_in_mode = mode == SpectralMode::normal_slice ? 0 : 1;
      break;
    }
  }

  const Matrix reduced = basis.transpose() * h * basis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (reduced + reduced.transpose()));
  if (es.info() != Eigen::Success) fail(ErrorCode::internal, "eigensolver failed");
  const Vector ev = es.eigenvalues();  // ascending

  SpectralData data;
  data.mode = mode;
  data.dim = static_cast<int>(ev.size());

  const double radius = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  const double tol = opts.cluster_tol * std::max(1.0, radius);

  // Gap clustering on the sorted eigenvalues.
  std::vector<std::pair<double, int>> clusters;
  int start = 0;
  for (int i = 1; i <= ev.size(); ++i) {
    if (i == ev.size() || ev[i] - ev[i - 1] > tol) {
      const int mult = i - start;
      clusters.emplace_back(ev.segment(start, mult).mean(), mult);
      start = i;
    }
  }
  for (size_t c = 1; c < clusters.size(); ++c) {
    if (clusters[c].first - clusters[c - 1].first < 10.0 * tol) {
      std::ostringstream os;
      os << "ambiguous clustering: eigenvalue clusters " << clusters[c - 1].first << " and "
         << clusters[c].first << " are closer than 10x the cluster tolerance";
      data.warnings.push_back(os.str());
    }
  }

  data.eigenvalues = clusters;
  for (const auto& [mean, mult] : clusters) {
    if (std::abs(mean) <= tol)
      data.kernel_dim += mult;
    else if (mean < 0.0)
      data.morse_index += mult;
    else
      data.betas.emplace_back(std::sqrt(mean), mult);
  }
  std::sort(data.betas.begin(), data.betas.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  data.extra_kernel_dim = data.kernel_dim - tangent_dims_in_mode;
  if (data.extra_kernel_dim < 0) {
    std::ostringstream os;
    os << "kernel dimension " << data.kernel_dim
       << " is below the symmetry-tangent dimension " << tangent_dims_in_mode
       << "; the point may not be critical to working precision";
    data.warnings.push_back(os.str());
    data.extra_kernel_dim = 0;
  }
  return data;
}

HypothesisReport check_hypotheses(const SpectralData& data, const IsolationReport& isolation) {
  HypothesisReport rep;
  rep.minimal = data.morse_index == 0;
  rep.isolated = isolation.verdict == IsolationReport::Verdict::isolated_on_slice;
  rep.free_action = true;  // the action is free away from total collision
  rep.positive_spectrum = !data.betas.empty();
  return rep;
}

std::vector<double> monic_from_roots(const std::vector<double>& roots) {
  std::vector<double> coeffs{1.0};
  for (double r : roots) {
    std::vector<double> next(coeffs.size() + 1, 0.0);
    for (size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i];
      next[i + 1] -= r * coeffs[i];
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

double characteristic_polynomial_check(const std::vector<double>& eigenvalues,
                                       const std::vector<double>& expected_coeffs) {
  if (expected_coeffs.empty() || expected_coeffs[0] == 0.0)
    fail(ErrorCode::argument, "expected coefficients need a nonzero leading term");
  if (expected_coeffs.size() != eigenvalues.size() + 1)
    fail(ErrorCode::argument, "expected polynomial degree must match the eigenvalue count");
  const auto computed = monic_from_roots(eigenvalues);
  double worst = 0.0;
  for (size_t i = 0; i < computed.size(); ++i)
    worst = std::max(worst, std::abs(computed[i] - expected_coeffs[i] / expected_coeffs[0]));
  return worst;
}

}  // namespace slct
