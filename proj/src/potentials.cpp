#include "slct/potentials.hpp"

#include <cmath>
#include <sstream>

namespace slct {

PairProfile PairProfile::lennard_jones() {
  PairProfile p;
  p.kind = Kind::lennard_jones;
  return p;
}

PairProfile PairProfile::schwarzschild(double a, double b) {
  if (!(a < 0.0 && 0.0 < b)) {
    std::ostringstream os;
    os << "schwarzschild profile requires a < 0 < b, got a=" << a << " b=" << b;
    fail(ErrorCode::argument, os.str());
  }
  PairProfile p;
  p.kind = Kind::schwarzschild;
  p.a = a;
  p.b = b;
  return p;
}

PairProfile PairProfile::custom(std::function<double(double)> f,
                                std::function<double(double)> f1,
                                std::function<double(double)> f2) {
  if (!f || !f1 || !f2)
    fail(ErrorCode::argument, "custom profile requires f, f', f''");
  PairProfile p;
  p.kind = Kind::custom;
  p.f = std::move(f);
  p.f1 = std::move(f1);
  p.f2 = std::move(f2);
  return p;
}

PairProfile PairProfile::power_sum(std::vector<std::pair<double, double>> terms) {
  auto eval = [terms](double r, int order) {
    double s = 0.0;
    for (auto [c, e] : terms) {
      double factor = 1.0;
      double ee = e;
      for (int d = 0; d < order; ++d) factor *= ee--;
      s += c * factor * std::pow(r, e - order);
    }
    return s;
  };
  return custom([eval](double r) { return eval(r, 0); },
                [eval](double r) { return eval(r, 1); },
                [eval](double r) { return eval(r, 2); });
}

double PairProfile::value(double r) const {
  switch (kind) {
    case Kind::lennard_jones: {
      const double s6 = 1.0 / (r * r * r * r * r * r);
      return s6 * s6 - 2.0 * s6;
    }
    case Kind::schwarzschild:
      return a / r + b / (r * r * r);
    case Kind::custom:
      return f(r);
  }
  fail(ErrorCode::internal, "unknown profile kind");
}

double PairProfile::deriv(double r) const {
  switch (kind) {
    case Kind::lennard_jones: {
      const double s7 = std::pow(r, -7.0);
      const double s13 = std::pow(r, -13.0);
      return -12.0 * s13 + 12.0 * s7;
    }
    case Kind::schwarzschild:
      return -a / (r * r) - 3.0 * b / (r * r * r * r);
    case Kind::custom:
      return f1(r);
  }
  fail(ErrorCode::internal, "unknown profile kind");
}

double PairProfile::deriv2(double r) const {
  switch (kind) {
    case Kind::lennard_jones:
      return 156.0 * std::pow(r, -14.0) - 84.0 * std::pow(r, -8.0);
    case Kind::schwarzschild:
      return 2.0 * a / (r * r * r) + 12.0 * b / std::pow(r, 5.0);
    case Kind::custom:
      return f2(r);
  }
  fail(ErrorCode::internal, "unknown profile kind");
}

PotentialModel::PotentialModel(int n_particles, std::vector<PairProfile> pair_table,
                               double min_distance)
    : n_(n_particles), pairs_(std::move(pair_table)), min_distance_(min_distance) {
  if (n_ < 2) fail(ErrorCode::argument, "model needs at least 2 particles");
  const int expected = n_ * (n_ - 1) / 2;
  if (static_cast<int>(pairs_.size()) != expected)
    fail(ErrorCode::argument,
         "pair table must cover all " + std::to_string(expected) + " unordered pairs, got " +
             std::to_string(pairs_.size()));
  if (!(min_distance_ > 0.0))
    fail(ErrorCode::argument, "minimum distance floor must be positive");
}

PotentialModel PotentialModel::lennard_jones(int n_particles) {
  std::vector<PairProfile> table(n_particles * (n_particles - 1) / 2,
                                 PairProfile::lennard_jones());
  return PotentialModel(n_particles, std::move(table));
}

PotentialModel PotentialModel::schwarzschild(int n_particles,
                                             const std::vector<double>& a_coeffs,
                                             const std::vector<double>& b_coeffs) {
  const size_t expected = static_cast<size_t>(n_particles) * (n_particles - 1) / 2;
  if (a_coeffs.size() != expected || b_coeffs.size() != expected)
    fail(ErrorCode::argument, "schwarzschild model needs one (a, b) pair per particle pair");
  std::vector<PairProfile> table;
  table.reserve(expected);
  for (size_t p = 0; p < expected; ++p)
    table.push_back(PairProfile::schwarzschild(a_coeffs[p], b_coeffs[p]));
  return PotentialModel(n_particles, std::move(table));
}

int PotentialModel::pair_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_ || i == j) fail(ErrorCode::argument, "invalid pair index");
  // lexicographic over (i, j) with i < j
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

void PotentialModel::check_domain(const Configuration& q) const {
  if (q.n != n_)
    fail(ErrorCode::argument, "configuration has " + std::to_string(q.n) +
                                  " particles, model expects " + std::to_string(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (q.distance(i, j) < min_distance_) {
        std::ostringstream os;
        os << "particles " << i + 1 << " and " << j + 1 << " are closer than the floor "
           << min_distance_ << " (r=" << q.distance(i, j) << ")";
        fail(ErrorCode::domain, os.str());
      }
}

double PotentialModel::energy(const Configuration& q) const {
  check_domain(q);
  double u = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) u += pair(i, j).value(q.distance(i, j));
  return u;
}

Vector PotentialModel::gradient(const Configuration& q) const {
  check_domain(q);
  Vector g = Vector::Zero(2 * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const Eigen::Vector2d d = q.particle(i) - q.particle(j);
      const double r = d.norm();
      const Eigen::Vector2d gij = (pair(i, j).deriv(r) / r) * d;
      g.segment<2>(2 * i) += gij;
      g.segment<2>(2 * j) -= gij;
    }
  return g;
}

Matrix PotentialModel::hessian(const Configuration& q) const {
  check_domain(q);
  Matrix h = Matrix::Zero(2 * n_, 2 * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const Eigen::Vector2d d = q.particle(i) - q.particle(j);
      const double r = d.norm();
      const Eigen::Vector2d u = d / r;
      const Eigen::Matrix2d uu = u * u.transpose();
      const Eigen::Matrix2d blk = pair(i, j).deriv2(r) * uu +
                                  (pair(i, j).deriv(r) / r) * (Eigen::Matrix2d::Identity() - uu);
      h.block<2, 2>(2 * i, 2 * i) += blk;
      h.block<2, 2>(2 * j, 2 * j) += blk;
      h.block<2, 2>(2 * i, 2 * j) -= blk;
      h.block<2, 2>(2 * j, 2 * i) -= blk;
    }
  return h;
}

Configuration rotate_configuration(const Configuration& q, double theta) {
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  Vector out(q.coords.size());
  for (int i = 0; i < q.n; ++i) out.segment<2>(2 * i) = rot * q.particle(i);
  return Configuration(q.n, std::move(out));
}

Vector infinitesimal_rotation(const Vector& coords) {
  Vector out(coords.size());
  for (int i = 0; 2 * i < coords.size(); ++i) {
    out[2 * i] = -coords[2 * i + 1];
    out[2 * i + 1] = coords[2 * i];
  }
  return out;
}

Vector infinitesimal_rotation(const Configuration& q) {
  return infinitesimal_rotation(q.coords);
}

Matrix com_projector(int n_particles) {
  const int n = n_particles;
  Matrix p = Matrix::Identity(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      p(2 * i, 2 * j) -= 1.0 / n;
      p(2 * i + 1, 2 * j + 1) -= 1.0 / n;
    }
  return p;
}

double invariance_audit(const PotentialModel& model, const Configuration& q, int samples) {
  if (samples < 1) fail(ErrorCode::argument, "invariance audit needs at least one sample");
  const double u0 = model.energy(q);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double theta = 2.0 * M_PI * (s + 0.5) / samples;
    worst = std::max(worst, std::abs(model.energy(rotate_configuration(q, theta)) - u0));
  }
  return worst;
}

}  // namespace slct
