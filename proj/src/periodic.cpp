#include "slct/periodic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace slct {

FourierTrajectory FourierTrajectory::constant(const Configuration& q, int modes, double lambda) {
  FourierTrajectory t;
  t.n = q.n;
  t.modes = modes;
  t.a0 = q.coords;
  t.ak.assign(modes, Vector::Zero(2 * q.n));
  t.bk.assign(modes, Vector::Zero(2 * q.n));
  t.lambda = lambda;
  return t;
}

Vector FourierTrajectory::position(double t) const {
  Vector q = a0;
  for (int k = 1; k <= modes; ++k)
    q += std::cos(k * t) * ak[k - 1] + std::sin(k * t) * bk[k - 1];
  return q;
}

Vector FourierTrajectory::velocity_loop(double t) const {
  Vector v = Vector::Zero(a0.size());
  for (int k = 1; k <= modes; ++k)
    v += k * (-std::sin(k * t) * ak[k - 1] + std::cos(k * t) * bk[k - 1]);
  return v;
}

namespace {

int node_count(const FourierTrajectory& traj, const QuadratureOptions& quad) {
  const int floor_nodes = 4 * traj.modes + 4;
  if (quad.nodes == 0) return floor_nodes;
  if (quad.nodes < floor_nodes)
    fail(ErrorCode::argument, "quadrature needs at least 4M + 4 nodes");
  return quad.nodes;
}

struct NodeData {
  std::vector<double> ts;
  std::vector<Vector> grads;
};

NodeData evaluate_nodes(const PotentialModel& model, const FourierTrajectory& traj, int nodes) {
  NodeData nd;
  nd.ts.resize(nodes);
  nd.grads.resize(nodes);
  for (int s = 0; s < nodes; ++s) {
    nd.ts[s] = 2.0 * M_PI * s / nodes;
    Configuration q(traj.n, traj.position(nd.ts[s]));
    nd.grads[s] = model.gradient(q);  // throws on domain exit, naming the node's pair
  }
  return nd;
}

}  // namespace

Vector galerkin_residual(const PotentialModel& model, const FourierTrajectory& traj,
                         const QuadratureOptions& quad) {
  const int nodes = node_count(traj, quad);
  const int dim = traj.dim();
  const int M = traj.modes;
  const NodeData nd = evaluate_nodes(model, traj, nodes);
  const double lam2 = traj.lambda * traj.lambda;

  Vector res = Vector::Zero(dim * (2 * M + 1));
  Vector mean = Vector::Zero(dim);
  for (const auto& g : nd.grads) mean += g;
  res.head(dim) = lam2 * mean / nodes;
  for (int k = 1; k <= M; ++k) {
    Vector pc = Vector::Zero(dim), ps = Vector::Zero(dim);
    for (int s = 0; s < nodes; ++s) {
      pc += std::cos(k * nd.ts[s]) * nd.grads[s];
      ps += std::sin(k * nd.ts[s]) * nd.grads[s];
    }
    res.segment(dim * k, dim) = -static_cast<double>(k) * k * traj.ak[k - 1] + lam2 * 2.0 * pc / nodes;
    res.segment(dim * (M + k), dim) =
        -static_cast<double>(k) * k * traj.bk[k - 1] + lam2 * 2.0 * ps / nodes;
  }
  return res;
}

std::vector<Vector> cluster_eigenvectors(const PotentialModel& model, const CriticalOrbit& orbit,
                                         const SpectralData& spectral, int j0) {
  const double beta = spectral.beta(j0);
  const int mult = spectral.beta_mult(j0);
  const double mu = beta * beta;
  const Matrix h = model.hessian(orbit.q0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.transpose()));
  if (es.info() != Eigen::Success) fail(ErrorCode::internal, "eigensolver failed");
  const double tol = 1e-6 * std::max(1.0, std::abs(mu));
  std::vector<Vector> basis;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()[i] - mu) < tol) {
      Vector v = es.eigenvectors().col(i);
      // deterministic sign: largest-magnitude entry positive
      int arg = 0;
      for (int c = 1; c < v.size(); ++c)
        if (std::abs(v[c]) > std::abs(v[arg])) arg = c;
      if (v[arg] < 0.0) v = -v;
      basis.push_back(v);
    }
  }
  if (static_cast<int>(basis.size()) != mult)
    fail(ErrorCode::internal, "eigenspace dimension does not match the cluster multiplicity");
  return basis;
}

FourierTrajectory kernel_predictor(const PotentialModel& model, const CriticalOrbit& orbit,
                                   const SpectralData& spectral, int j0, double amplitude,
                                   int modes, int branch) {
  const auto basis = cluster_eigenvectors(model, orbit, spectral, j0);
  if (branch < 0 || branch >= static_cast<int>(basis.size()))
    fail(ErrorCode::argument, "branch index out of range for the eigenvalue cluster");
  FourierTrajectory traj = FourierTrajectory::constant(orbit.q0, modes, 1.0 / spectral.beta(j0));
  traj.ak[0] = amplitude * basis[branch];
  return traj;
}

IntegrationResult integrate_ode(const PotentialModel& model, const Vector& q_init,
                                const Vector& qdot_init, double t_final, double step) {
  if (!(step > 0.0 && t_final > 0.0))
    fail(ErrorCode::argument, "integration needs positive step and final time");
  const int n = static_cast<int>(q_init.size()) / 2;
  const int steps = static_cast<int>(std::ceil(t_final / step - 1e-12));

  IntegrationResult out;
  out.times.reserve(steps + 1);
  out.positions.reserve(steps + 1);
  out.velocities.reserve(steps + 1);

  Vector q = q_init, v = qdot_init;
  auto force = [&](const Vector& x) { return (-model.gradient(Configuration(n, x))).eval(); };
  auto energy = [&](const Vector& x, const Vector& vel) {
    return 0.5 * vel.squaredNorm() + model.energy(Configuration(n, x));
  };

  Vector f = force(q);
  out.initial_energy = energy(q, v);
  out.times.push_back(0.0);
  out.positions.push_back(q);
  out.velocities.push_back(v);

  double drift = 0.0;
  for (int s = 0; s < steps; ++s) {
    const double h = std::min(step, t_final - s * step);
    q += h * v + 0.5 * h * h * f;
    const Vector f_new = force(q);
    v += 0.5 * h * (f + f_new);
    f = f_new;
    out.times.push_back(std::min((s + 1) * step, t_final));
    out.positions.push_back(q);
    out.velocities.push_back(v);
    drift = std::max(drift, std::abs(energy(q, v) - out.initial_energy));
  }
  out.energy_drift = drift;

  // First-return estimate: first clear local minimum of the phase-space
  // distance to the initial state.
  const size_t count = out.times.size();
  std::vector<double> dist(count);
  for (size_t s = 0; s < count; ++s)
    dist[s] = (out.positions[s] - out.positions[0]).squaredNorm() +
              (out.velocities[s] - out.velocities[0]).squaredNorm();
  const double dmax = *std::max_element(dist.begin(), dist.end());
  for (size_t s = 1; s + 1 < count; ++s) {
    if (dist[s] <= dist[s - 1] && dist[s] <= dist[s + 1] && dist[s] < 0.01 * dmax) {
      // quadratic interpolation of the minimum
      const double d0 = dist[s - 1], d1 = dist[s], d2 = dist[s + 1];
      const double denom = d0 - 2.0 * d1 + d2;
      const double offset = denom > 0.0 ? 0.5 * (d0 - d2) / denom : 0.0;
      out.first_return = out.times[s] + offset * step;
      break;
    }
  }
  return out;
}

namespace {

/// min over rotations of |x - R(theta) y| for stacked planar vectors; the
/// optimal angle is applied explicitly so that tiny mismatches survive the
/// subtraction.
double min_distance_over_rotation(const Vector& x, const Vector& y) {
  double c = 0.0, s = 0.0;
  for (int i = 0; 2 * i < x.size(); ++i) {
    const double xa = x[2 * i], xb = x[2 * i + 1];
    const double ya = y[2 * i], yb = y[2 * i + 1];
    c += xa * ya + xb * yb;
    s += xb * ya - xa * yb;  // <x, J y>
  }
  const double theta = std::atan2(s, c);
  const double ct = std::cos(theta), st = std::sin(theta);
  double d2 = 0.0;
  for (int i = 0; 2 * i < x.size(); ++i) {
    const double ry = ct * y[2 * i] - st * y[2 * i + 1];
    const double rz = st * y[2 * i] + ct * y[2 * i + 1];
    d2 += (x[2 * i] - ry) * (x[2 * i] - ry) + (x[2 * i + 1] - rz) * (x[2 * i + 1] - rz);
  }
  return std::sqrt(d2);
}

}  // namespace

double distance_to_orbit(const FourierTrajectory& traj, const Configuration& q0,
                         int time_samples) {
  double worst = 0.0;
  for (int s = 0; s < time_samples; ++s) {
    const double t = 2.0 * M_PI * s / time_samples;
    worst = std::max(worst, min_distance_over_rotation(traj.position(t), q0.coords));
  }
  return worst;
}

OrbitFamilySample verify_orbit(const PotentialModel& model, const CriticalOrbit& orbit,
                               OrbitFamilySample sample, int steps_per_period) {
  const FourierTrajectory& traj = sample.trajectory;
  const double period = traj.period();
  const Vector q_init = traj.position(0.0);
  const Vector v_init = traj.velocity_loop(0.0) / traj.lambda;

  const double step = period / steps_per_period;
  // integrate a bit past one period so the return minimum is interior
  const auto result = integrate_ode(model, q_init, v_init, 1.25 * period, step);
  sample.energy_drift = result.energy_drift;

  // closure: phase-space mismatch at t = period, minimized over rotations
  Vector end_state(2 * traj.dim());
  Vector start_state(2 * traj.dim());
  const int idx = static_cast<int>(std::lround(period / step));
  const Vector q_end = result.positions[idx];
  const Vector v_end = result.velocities[idx];
  end_state << q_end, v_end;
  start_state << q_init, v_init;
  sample.closure_error = min_distance_over_rotation(start_state, end_state);

  sample.dist_to_orbit = distance_to_orbit(traj, orbit.q0);

  // minimal period: no common divisor of the active harmonics, and the
  // integrator's first return agrees with 2 pi lambda
  double active_scale = 0.0;
  for (int k = 1; k <= traj.modes; ++k)
    active_scale = std::max(active_scale, std::max(traj.ak[k - 1].norm(), traj.bk[k - 1].norm()));
  int divisor = 0;
  for (int k = 1; k <= traj.modes; ++k) {
    const double mag = std::max(traj.ak[k - 1].norm(), traj.bk[k - 1].norm());
    if (mag > 1e-9 * active_scale) divisor = std::gcd(divisor, k);
  }
  const bool spectrum_ok = divisor == 1;
  const bool return_ok = result.first_return &&
                         std::abs(*result.first_return - period) <= 0.01 * period;
  sample.minimal_period_ok = spectrum_ok && return_ok;
  sample.verified = true;
  return sample;
}

namespace {

/// Newton solver for one amplitude with fixed gauges; shared by the family
/// continuation. Unknowns x = (a0, a_1..a_M, b_1..b_M, lambda).
class GalerkinSolver {
public:
  GalerkinSolver(const PotentialModel& model, const CriticalOrbit& orbit, const Vector& v,
                 int modes, int nodes)
      : model_(model), orbit_(orbit), v_(v), M_(modes), nodes_(nodes), dim_(model.dim()) {
    jq0_ = infinitesimal_rotation(orbit.q0.coords);
    com_x_ = 0.0;
    com_y_ = 0.0;
    for (int i = 0; i < orbit.q0.n; ++i) {
      com_x_ += orbit.q0.coords[2 * i];
      com_y_ += orbit.q0.coords[2 * i + 1];
    }
    cos_.resize(nodes_, M_ + 1);
    sin_.resize(nodes_, M_ + 1);
    for (int s = 0; s < nodes_; ++s) {
      const double t = 2.0 * M_PI * s / nodes_;
      for (int k = 0; k <= M_; ++k) {
        cos_(s, k) = std::cos(k * t);
        sin_(s, k) = std::sin(k * t);
      }
    }
  }

  int unknowns() const { return dim_ * (2 * M_ + 1) + 1; }
  int equations() const { return dim_ * (2 * M_ + 1) + 5; }

  Vector pack(const FourierTrajectory& traj) const {
    Vector x(unknowns());
    x.head(dim_) = traj.a0;
    for (int k = 1; k <= M_; ++k) {
      x.segment(dim_ * k, dim_) = traj.ak[k - 1];
      x.segment(dim_ * (M_ + k), dim_) = traj.bk[k - 1];
    }
    x[unknowns() - 1] = traj.lambda;
    return x;
  }

  FourierTrajectory unpack(const Vector& x) const {
    FourierTrajectory traj;
    traj.n = orbit_.q0.n;
    traj.modes = M_;
    traj.a0 = x.head(dim_);
    traj.ak.resize(M_);
    traj.bk.resize(M_);
    for (int k = 1; k <= M_; ++k) {
      traj.ak[k - 1] = x.segment(dim_ * k, dim_);
      traj.bk[k - 1] = x.segment(dim_ * (M_ + k), dim_);
    }
    traj.lambda = x[unknowns() - 1];
    return traj;
  }

  Vector residual(const Vector& x, double amplitude) const {
    const FourierTrajectory traj = unpack(x);
    QuadratureOptions quad;
    quad.nodes = nodes_;
    Vector f(equations());
    f.head(dim_ * (2 * M_ + 1)) = galerkin_residual(model_, traj, quad);
    const int g = dim_ * (2 * M_ + 1);
    f[g] = traj.ak[0].dot(v_) - amplitude;
    f[g + 1] = traj.bk[0].dot(v_);
    f[g + 2] = (traj.a0 - orbit_.q0.coords).dot(jq0_);
    double cx = 0.0, cy = 0.0;
    for (int i = 0; i < orbit_.q0.n; ++i) {
      cx += traj.a0[2 * i];
      cy += traj.a0[2 * i + 1];
    }
    f[g + 3] = cx - com_x_;
    f[g + 4] = cy - com_y_;
    return f;
  }

  Matrix jacobian(const Vector& x) const {
    const FourierTrajectory traj = unpack(x);
    const double lam = traj.lambda;
    const double lam2 = lam * lam;

    std::vector<Matrix> hess(nodes_);
    std::vector<Vector> grad(nodes_);
    for (int s = 0; s < nodes_; ++s) {
      Configuration q(traj.n, traj.position(2.0 * M_PI * s / nodes_));
      hess[s] = model_.hessian(q);
      grad[s] = model_.gradient(q);
    }

    Matrix jac = Matrix::Zero(equations(), unknowns());
    const int blocks = 2 * M_ + 1;

    // row group r (0 = mean, 1..M = cos, M+1..2M = sin), column group c likewise
    auto weight = [&](int grp, int s) {
      if (grp == 0) return 1.0;
      if (grp <= M_) return cos_(s, grp);
      return sin_(s, grp - M_);
    };
    for (int r = 0; r < blocks; ++r) {
      const double row_scale = (r == 0 ? 1.0 : 2.0) / nodes_;
      for (int c = 0; c < blocks; ++c) {
        Matrix acc = Matrix::Zero(dim_, dim_);
        for (int s = 0; s < nodes_; ++s) acc += weight(r, s) * weight(c, s) * hess[s];
        jac.block(dim_ * r, dim_ * c, dim_, dim_) = lam2 * row_scale * acc;
      }
      // exact linear part
      if (r >= 1 && r <= M_)
        jac.block(dim_ * r, dim_ * r, dim_, dim_) -=
            static_cast<double>(r) * r * Matrix::Identity(dim_, dim_);
      if (r > M_) {
        const int k = r - M_;
        jac.block(dim_ * r, dim_ * r, dim_, dim_) -=
            static_cast<double>(k) * k * Matrix::Identity(dim_, dim_);
      }
      // lambda column
      Vector proj = Vector::Zero(dim_);
      for (int s = 0; s < nodes_; ++s) proj += weight(r, s) * grad[s];
      jac.block(dim_ * r, unknowns() - 1, dim_, 1) = 2.0 * lam * row_scale * proj;
    }

    const int g = dim_ * blocks;
    jac.block(g, dim_, 1, dim_) = v_.transpose();
    jac.block(g + 1, dim_ * (M_ + 1), 1, dim_) = v_.transpose();
    jac.block(g + 2, 0, 1, dim_) = jq0_.transpose();
    for (int i = 0; i < orbit_.q0.n; ++i) {
      jac(g + 3, 2 * i) = 1.0;
      jac(g + 4, 2 * i + 1) = 1.0;
    }
    return jac;
  }

  /// Newton with SVD least-squares steps; returns the converged trajectory
  /// and its residual norm.
  std::pair<FourierTrajectory, double> solve(FourierTrajectory start, double amplitude,
                                             double tol, int max_iter) const {
    Vector x = pack(start);
    for (int it = 0; it < max_iter; ++it) {
      const Vector f = residual(x, amplitude);
      const double norm = f.norm();
      if (norm < tol) return {unpack(x), norm};
      Eigen::BDCSVD<Matrix> svd(jacobian(x), Eigen::ComputeThinU | Eigen::ComputeThinV);
      svd.setThreshold(1e-13);
      x += svd.solve(-f);
    }
    const Vector f = residual(x, amplitude);
    if (f.norm() < tol) return {unpack(x), f.norm()};
    std::ostringstream os;
    os << "Galerkin Newton stalled at residual " << f.norm() << " (tolerance " << tol
       << ", amplitude " << amplitude << ")";
    fail(ErrorCode::convergence, os.str());
  }

private:
  const PotentialModel& model_;
  const CriticalOrbit& orbit_;
  Vector v_;
  int M_;
  int nodes_;
  int dim_;
  Vector jq0_;
  double com_x_ = 0.0, com_y_ = 0.0;
  Matrix cos_, sin_;
};

}  // namespace

FamilyResult continue_family(const PotentialModel& model, const CriticalOrbit& orbit,
                             const SpectralData& spectral, int j0,
                             const std::vector<double>& amplitudes,
                             const ContinuationOptions& opts,
                             const BifurcationCertificate* certificate) {
  if (amplitudes.empty()) fail(ErrorCode::argument, "no amplitudes to continue");
  for (size_t i = 1; i < amplitudes.size(); ++i)
    if (!(amplitudes[i] > amplitudes[i - 1]))
      fail(ErrorCode::argument, "amplitudes must be strictly increasing");

  FamilyResult result;
  result.j0 = j0;
  result.beta = spectral.beta(j0);
  result.lambda0 = 1.0 / result.beta;
  if (certificate == nullptr)
    result.warnings.push_back("family continued without a bifurcation certificate");
  else if (!certificate->changed)
    result.warnings.push_back(
        "family continued although the certificate reports no index change");

  const auto basis = cluster_eigenvectors(model, orbit, spectral, j0);
  const int branch_count = opts.all_branches ? static_cast<int>(basis.size()) : 1;
  const int nodes = opts.quadrature.nodes == 0 ? 4 * opts.modes + 4 : opts.quadrature.nodes;

  for (int b = 0; b < branch_count; ++b) {
    FamilyBranch branch;
    branch.branch = b;
    branch.eigenvector = basis[b];
    GalerkinSolver solver(model, orbit, basis[b], opts.modes, nodes);

    FourierTrajectory warm = FourierTrajectory::constant(orbit.q0, opts.modes, result.lambda0);
    for (double a : amplitudes) {
      FourierTrajectory start = warm;
      start.ak[0] = a * basis[b];  // predictor on the first harmonic
      try {
        auto [traj, res] = solver.solve(start, a, opts.residual_tol, opts.max_newton_iter);
        OrbitFamilySample sample;
        sample.amplitude = a;
        sample.trajectory = traj;
        sample.residual = res;
        sample.period = traj.period();
        if (opts.verify) sample = verify_orbit(model, orbit, sample, opts.verify_steps_per_period);
        branch.samples.push_back(std::move(sample));
        warm = branch.samples.back().trajectory;
      } catch (const Error& e) {
        std::ostringstream os;
        os << "family truncated at amplitude " << a << ": " << e.what();
        branch.truncation_note = os.str();
        break;
      }
    }

    // least-squares fit of lambda(a) - lambda0 against a^2
    double num = 0.0, den = 0.0;
    for (const auto& s : branch.samples) {
      num += (s.trajectory.lambda - result.lambda0) * s.amplitude * s.amplitude;
      den += s.amplitude * s.amplitude * s.amplitude * s.amplitude;
    }
    branch.lambda_quadratic_coeff = den > 0.0 ? num / den : 0.0;
    result.branches.push_back(std::move(branch));
  }
  return result;
}

std::vector<double> log_amplitude_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2)
    fail(ErrorCode::argument, "amplitude grid needs 0 < lo < hi and count >= 2");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i)
    grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  return grid;
}

void export_trajectory_csv(const std::string& path, const PotentialModel& model,
                           const OrbitFamilySample& sample, int time_samples) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot open " + path + " for writing");
  const auto& traj = sample.trajectory;
  out << "t";
  for (int i = 1; i <= traj.n; ++i) out << ",q" << i << "x,q" << i << "y";
  out << ",energy\n";
  out.precision(17);
  for (int s = 0; s <= time_samples; ++s) {
    const double t = 2.0 * M_PI * s / time_samples;
    const Vector q = traj.position(t);
    const Vector v = traj.velocity_loop(t) / traj.lambda;
    const double energy = 0.5 * v.squaredNorm() + model.energy(Configuration(traj.n, q));
    out << t * traj.lambda;
    for (int c = 0; c < q.size(); ++c) out << "," << q[c];
    out << "," << energy << "\n";
  }
}

void export_family_csv(const std::string& path, const FamilyBranch& branch) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot open " + path + " for writing");
  out << "amplitude,lambda,period,residual,closure_error,dist_to_orbit\n";
  out.precision(17);
  for (const auto& s : branch.samples)
    out << s.amplitude << "," << s.trajectory.lambda << "," << s.period << "," << s.residual
        << "," << s.closure_error << "," << s.dist_to_orbit << "\n";
}

}  // namespace slct
