#include "slct/critical_orbits.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <sstream>

namespace slct {

namespace {

CriticalOrbit make_orbit(const PotentialModel& model, const Configuration& q) {
  CriticalOrbit orbit;
  orbit.q0 = q;
  orbit.value = model.energy(q);
  orbit.grad_norm = model.gradient(q).norm();
  orbit.tangent_rotation = infinitesimal_rotation(q).normalized();
  const int n = q.n;
  Vector tx = Vector::Zero(2 * n), ty = Vector::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    tx[2 * i] = 1.0;
    ty[2 * i + 1] = 1.0;
  }
  orbit.translation_directions = {tx.normalized(), ty.normalized()};
  Eigen::Vector2d com = Eigen::Vector2d::Zero();
  for (int i = 0; i < n; ++i) com += q.particle(i);
  orbit.com_zero = com.norm() < 1e-12 * (1.0 + q.coords.norm());
  return orbit;
}

}  // namespace

CriticalOrbit refine_critical(const PotentialModel& model, const Configuration& seed,
                              const RefineOptions& opts) {
  const int dim = model.dim();
  Vector q = seed.coords;
  const Vector jseed = infinitesimal_rotation(seed.coords);
  Eigen::Vector2d com_seed = Eigen::Vector2d::Zero();
  for (int i = 0; i < seed.n; ++i) com_seed += seed.particle(i);

  auto threshold = [&](const Configuration& c) {
    return opts.tol * (1.0 + std::abs(model.energy(c)));
  };

  for (int it = 0; it <= opts.max_iter; ++it) {
    Configuration cur(seed.n, q);
    const Vector g = model.gradient(cur);
    if (g.norm() <= threshold(cur)) return make_orbit(model, cur);
    if (it == opts.max_iter) break;

    // Bordered residual: gradient, two COM pins, one rotation phase pin.
    Vector rhs(dim + 3);
    rhs.head(dim) = g;
    Eigen::Vector2d com = Eigen::Vector2d::Zero();
    for (int i = 0; i < seed.n; ++i) com += cur.particle(i);
    rhs[dim] = com[0] - com_seed[0];
    rhs[dim + 1] = com[1] - com_seed[1];
    rhs[dim + 2] = (q - seed.coords).dot(jseed);

    Matrix jac(dim + 3, dim);
    jac.topRows(dim) = model.hessian(cur);
    jac.row(dim).setZero();
    jac.row(dim + 1).setZero();
    for (int i = 0; i < seed.n; ++i) {
      jac(dim, 2 * i) = 1.0;
      jac(dim + 1, 2 * i + 1) = 1.0;
    }
    jac.row(dim + 2) = jseed.transpose();

    Eigen::JacobiSVD<Matrix> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    if (svd.rank() < dim) {
      std::ostringstream os;
      os << "gauge-fixed Jacobian is rank deficient (rank " << svd.rank() << " of " << dim
         << ") near the current iterate";
      fail(ErrorCode::convergence, os.str());
    }
    const Vector step = svd.solve(-rhs);
    q += step;
  }
  fail(ErrorCode::convergence,
       "critical-point refinement did not reach tolerance in " +
           std::to_string(opts.max_iter) + " iterations");
}

std::vector<CriticalOrbit> lj_equilibria(int n_particles) {
  const RefineOptions polish{1e-13, 50};
  if (n_particles == 2) {
    Vector q(4);
    q << 0.0, 0.5, 0.0, -0.5;
    auto model = PotentialModel::lennard_jones(2);
    return {refine_critical(model, Configuration(2, q), polish)};
  }
  if (n_particles == 3) {
    auto model = PotentialModel::lennard_jones(3);
    const double a = std::pow(2731.0 / 43.0, 1.0 / 6.0);
    const double alpha = 2.0 * M_PI / 3.0;
    const double beta = 4.0 * M_PI / 3.0;
    const double c = 1.0 / std::sqrt(3.0);
    std::vector<Vector> seeds(5, Vector(6));
    seeds[0] << a / 2, 0, 0, 0, -a / 2, 0;
    seeds[1] << 0, 0, a / 2, 0, -a / 2, 0;
    seeds[2] << a / 2, 0, -a / 2, 0, 0, 0;
    seeds[3] << c, 0, c * std::cos(alpha), c * std::sin(alpha), c * std::cos(beta),
        c * std::sin(beta);
    seeds[4] << c, 0, c * std::cos(beta), c * std::sin(beta), c * std::cos(alpha),
        c * std::sin(alpha);
    std::vector<CriticalOrbit> out;
    out.reserve(5);
    for (const auto& s : seeds) out.push_back(refine_critical(model, Configuration(3, s), polish));
    return out;
  }
  fail(ErrorCode::argument,
       "built-in equilibria cover n = 2 and n = 3, not n = " + std::to_string(n_particles));
}

CriticalOrbit schwarzschild_equilibrium(const std::vector<PairProfile>& profiles,
                                        double orientation) {
  if (profiles.size() != 3)
    fail(ErrorCode::argument, "triangle construction needs the three pair profiles");
  double r0[3];  // sides r12, r13, r23
  for (int p = 0; p < 3; ++p) {
    const auto& prof = profiles[p];
    if (prof.kind != PairProfile::Kind::schwarzschild)
      fail(ErrorCode::argument, "triangle construction expects schwarzschild profiles");
    r0[p] = std::sqrt(-3.0 * prof.b / prof.a);
  }
  const char* names[3] = {"r12", "r13", "r23"};
  for (int p = 0; p < 3; ++p) {
    const double other = r0[(p + 1) % 3] + r0[(p + 2) % 3];
    if (!(r0[p] < other)) {
      std::ostringstream os;
      os << "triangle inequality fails for side " << names[p] << " = " << r0[p]
         << " against the other sides summing to " << other;
      fail(ErrorCode::argument, os.str());
    }
  }

  // Place p1 at the origin, p2 on the x-axis, p3 above it, then center.
  const double r12 = r0[0], r13 = r0[1], r23 = r0[2];
  const double x3 = (r12 * r12 + r13 * r13 - r23 * r23) / (2.0 * r12);
  const double y3 = std::sqrt(std::max(0.0, r13 * r13 - x3 * x3));
  Vector q(6);
  q << 0, 0, r12, 0, x3, y3;
  Eigen::Vector2d com((q[0] + q[2] + q[4]) / 3.0, (q[1] + q[3] + q[5]) / 3.0);
  for (int i = 0; i < 3; ++i) q.segment<2>(2 * i) -= com;
  Configuration centered(3, q);
  // vertex 1 to the positive x-axis, then the requested orientation
  const double phi = std::atan2(centered.coords[1], centered.coords[0]);
  Configuration oriented = rotate_configuration(centered, orientation - phi);

  auto model = PotentialModel(3, profiles);
  return refine_critical(model, oriented, RefineOptions{1e-13, 50});
}

IsolationReport isolation_scan(const PotentialModel& model, const CriticalOrbit& orbit,
                               double slice_radius, int samples, bool com_zero,
                               double threshold, unsigned rng_seed) {
  if (!(slice_radius > 0.0)) fail(ErrorCode::argument, "slice radius must be positive");
  if (samples < 1) fail(ErrorCode::argument, "isolation scan needs at least one sample");
  const int dim = model.dim();

  // Orthonormal basis of the slice: complement of the rotation tangent and,
  // when com_zero, of the two translation directions.
  Matrix pinned(dim, com_zero ? 3 : 1);
  pinned.col(0) = orbit.tangent_rotation;
  if (com_zero) {
    pinned.col(1) = orbit.translation_directions[0];
    pinned.col(2) = orbit.translation_directions[1];
  }
  Eigen::HouseholderQR<Matrix> qr(pinned);
  Matrix full = qr.householderQ();
  Matrix slice = full.rightCols(dim - pinned.cols());

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  IsolationReport report;
  report.slice_radius = slice_radius;
  report.samples = samples;
  report.min_grad_norm_on_annulus = std::numeric_limits<double>::infinity();

  auto probe = [&](const Vector& ambient_dir) {
    Vector in_slice = slice.transpose() * ambient_dir;
    if (in_slice.norm() < 1e-9) return;  // direction is pinned out of the slice
    in_slice.normalize();
    const Vector point = orbit.q0.coords + slice_radius * (slice * in_slice);
    const double gn = model.gradient(Configuration(orbit.q0.n, point)).norm();
    report.min_grad_norm_on_annulus = std::min(report.min_grad_norm_on_annulus, gn);
  };

  // deterministic probes first: the known symmetry directions (critical when
  // they survive into the slice) and the slice basis itself
  probe(orbit.translation_directions[0]);
  probe(orbit.translation_directions[1]);
  for (int c = 0; c < slice.cols(); ++c) probe(slice.col(c));
  for (int s = 0; s < samples; ++s) {
    Vector dir(dim);
    for (int i = 0; i < dim; ++i) dir[i] = gauss(rng);
    probe(dir);
  }
  report.verdict = report.min_grad_norm_on_annulus > threshold
                       ? IsolationReport::Verdict::isolated_on_slice
                       : IsolationReport::Verdict::inconclusive;
  return report;
}

}  // namespace slct
