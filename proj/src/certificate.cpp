#include "slct/certificate.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace slct {

Matrix mode_matrix(const Matrix& hessian, int k, double lambda) {
  if (k < 1) fail(ErrorCode::argument, "mode index must be >= 1");
  if (!(lambda > 0.0)) fail(ErrorCode::argument, "lambda must be positive");
  const double k2 = static_cast<double>(k) * k;
  return (k2 * Matrix::Identity(hessian.rows(), hessian.cols()) - lambda * lambda * hessian) /
         (k2 + 1.0);
}

namespace {

ModeMorseData mode_morse_from_clusters(const std::vector<std::pair<double, int>>& clusters,
                                       int k, double lambda, double zero_tol) {
  if (k < 1) fail(ErrorCode::argument, "mode index must be >= 1");
  if (!(lambda > 0.0)) fail(ErrorCode::argument, "lambda must be positive");
  ModeMorseData md;
  md.k = k;
  md.lambda = lambda;
  const double k2 = static_cast<double>(k) * k;
  for (const auto& [mu, mult] : clusters) {
    const double ev = (k2 - lambda * lambda * mu) / (k2 + 1.0);
    if (std::abs(ev) <= zero_tol)
      md.zero += mult;
    else if (ev < 0.0)
      md.neg += mult;
    else
      md.pos += mult;
  }
  return md;
}

}  // namespace

ModeMorseData mode_morse(const SpectralData& spectral, int k, double lambda, double zero_tol) {
  return mode_morse_from_clusters(spectral.eigenvalues, k, lambda, zero_tol);
}

ModeMorseData mode_morse(const Matrix& hessian, int k, double lambda, double zero_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hessian + hessian.transpose()));
  if (es.info() != Eigen::Success) fail(ErrorCode::internal, "eigensolver failed");
  std::vector<std::pair<double, int>> clusters;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    clusters.emplace_back(es.eigenvalues()[i], 1);
  return mode_morse_from_clusters(clusters, k, lambda, zero_tol);
}

TruncationChoice n0_select(const std::vector<std::pair<double, int>>& betas, int j0,
                           const Window& window) {
  if (betas.empty()) fail(ErrorCode::argument, "no positive frequencies");
  if (j0 < 1 || j0 > static_cast<int>(betas.size()))
    fail(ErrorCode::argument, "j0 out of range");
  const double beta1 = betas.front().first;
  const double beta0 = betas[j0 - 1].first;
  int n0 = 2;
  if (j0 > 1) n0 = static_cast<int>(std::floor(beta1 / beta0)) + 1;
  if (n0 < 2) n0 = 2;

  double margin = std::numeric_limits<double>::infinity();
  for (const auto& [beta, mult] : betas) {
    const double worst_lambda = std::max(std::abs(window.lambda_minus), window.lambda_plus);
    margin = std::min(margin, n0 * n0 - worst_lambda * worst_lambda * beta * beta);
  }
  if (!(margin > 0.0)) {
    std::ostringstream os;
    os << "truncation margin " << margin << " is not positive at n0 = " << n0
       << "; the window is too wide, shrink epsilon";
    fail(ErrorCode::resonance, os.str());
  }
  return TruncationChoice{n0, margin};
}

S1RepDecomposition positive_rep(const SpectralData& spectral, double lambda, int n0,
                                double degeneracy_tol) {
  if (n0 < 1) fail(ErrorCode::argument, "n0 must be >= 1");
  if (!(lambda > 0.0)) fail(ErrorCode::argument, "lambda must be positive");
  // lambda must avoid the resonance set: no k may sit on a block boundary.
  for (const auto& [beta, mult] : spectral.betas) {
    const double x = lambda * beta;
    const int nearest = static_cast<int>(std::lround(x));
    if (nearest >= 1 && std::abs(x - nearest) <= degeneracy_tol) {
      std::ostringstream os;
      os << "degenerate mode: lambda * beta = " << x << " is within " << degeneracy_tol
         << " of the integer " << nearest;
      fail(ErrorCode::resonance, os.str());
    }
  }
  S1RepDecomposition rep;
  rep.k0 = spectral.morse_index;
  for (int k = 1; k <= n0; ++k) {
    int dk = 0;
    for (const auto& [beta, mult] : spectral.betas)
      if (static_cast<double>(k) * k < lambda * lambda * beta * beta) dk += mult;
    if (dk > 0) rep.terms.emplace_back(dk, k);
  }
  return rep;
}

BifurcationCertificate bifurcation_certificate(const SpectralData& spectral, int j0,
                                               const Window& window) {
  const auto& betas = spectral.betas;
  if (betas.empty()) fail(ErrorCode::argument, "no positive frequencies");
  if (j0 < 1 || j0 > static_cast<int>(betas.size()))
    fail(ErrorCode::argument, "j0 out of range");

  BifurcationCertificate cert;
  cert.j0 = j0;
  cert.beta = betas[j0 - 1].first;
  cert.window = window;
  const auto trunc = n0_select(betas, j0, window);
  cert.n0 = trunc.n0;
  cert.margin = trunc.margin;
  cert.dim_extra_kernel = spectral.extra_kernel_dim;

  const auto rep_minus = positive_rep(spectral, window.lambda_minus, cert.n0);
  const auto rep_plus = positive_rep(spectral, window.lambda_plus, cert.n0);

  auto mode1_dim = [](const S1RepDecomposition& rep) {
    for (const auto& [k, m] : rep.terms)
      if (m == 1) return k;
    return 0;
  };
  cert.r_minus = mode1_dim(rep_minus);
  cert.r_plus = mode1_dim(rep_plus);

  // Modes >= 2 must agree on both sides; only the first block may cross.
  auto tail = [](const S1RepDecomposition& rep) {
    std::vector<std::pair<int, int>> t;
    for (const auto& [k, m] : rep.terms)
      if (m >= 2) t.emplace_back(k, m);
    return t;
  };
  if (tail(rep_minus) != tail(rep_plus))
    fail(ErrorCode::internal, "inertia changed on a mode >= 2 inside the window");

  // on a minimal orbit exactly the j0 block crosses, so the mode-1 dimension
  // must jump by the full multiplicity
  if (spectral.morse_index == 0 &&
      cert.r_plus - cert.r_minus != betas[j0 - 1].second) {
    std::ostringstream os;
    os << "mode-1 dimension jump " << cert.r_plus - cert.r_minus
       << " does not match the multiplicity " << betas[j0 - 1].second
       << "; the window is not clean";
    fail(ErrorCode::internal, os.str());
  }

  const std::int64_t sign = cert.dim_extra_kernel % 2 == 0 ? 1 : -1;
  cert.chi_minus = EulerRingElement(sign) * sphere_characteristic(rep_minus);
  cert.chi_plus = EulerRingElement(sign) * sphere_characteristic(rep_plus);

  // Shared invertible factor: the lambda-independent trivial part (every
  // positive direction of the restricted Hessian is an unstable mode-0
  // direction of the loop flow) together with the common modes >= 2.
  S1RepDecomposition shared;
  shared.k0 = spectral.positive_count();
  shared.terms = tail(rep_plus);
  cert.shared_factor = sphere_characteristic(shared);

  cert.changed = !(cert.chi_minus == cert.chi_plus);
  return cert;
}

namespace {

double angle_increment(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
}

}  // namespace

int winding_degree(const std::vector<Eigen::Vector2d>& samples, double min_norm) {
  if (samples.size() < 3) fail(ErrorCode::argument, "winding number needs at least 3 samples");
  double total = 0.0;
  for (size_t s = 0; s < samples.size(); ++s) {
    const auto& a = samples[s];
    const auto& b = samples[(s + 1) % samples.size()];
    if (a.norm() < min_norm || b.norm() < min_norm)
      fail(ErrorCode::argument, "field vanishes on the loop");
    const double inc = angle_increment(a, b);
    if (std::abs(inc) > 0.5 * M_PI)
      fail(ErrorCode::convergence,
           "angular step exceeds pi/2 between adjacent samples; refine the sampling");
    total += inc;
  }
  const double degree = total / (2.0 * M_PI);
  const double rounded = std::round(degree);
  if (std::abs(degree - rounded) > 1e-6)
    fail(ErrorCode::convergence, "accumulated winding is not an integer to 1e-6");
  return static_cast<int>(rounded);
}

int winding_degree(const std::function<Eigen::Vector2d(double)>& field, int initial_samples,
                   double min_norm, int max_refinements) {
  if (initial_samples < 64) fail(ErrorCode::argument, "winding number needs >= 64 samples");
  int n = initial_samples;
  for (int attempt = 0; attempt <= max_refinements; ++attempt, n *= 2) {
    std::vector<Eigen::Vector2d> samples(n);
    for (int s = 0; s < n; ++s) samples[s] = field(static_cast<double>(s) / n);
    try {
      return winding_degree(samples, min_norm);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::convergence) throw;
      // step too coarse; double the sampling
    }
  }
  fail(ErrorCode::convergence,
       "insufficient angular resolution after " + std::to_string(max_refinements) +
           " refinements");
}

}  // namespace slct
