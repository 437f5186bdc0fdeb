#include "slct/potentials.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace slct;

namespace {

Configuration lj2_min() {
  Vector q(4);
  q << 0.0, 0.5, 0.0, -0.5;
  return Configuration(2, q);
}

Configuration lj3_min() {
  const double c = 1.0 / std::sqrt(3.0);
  Vector q(6);
  q << c, 0, c * std::cos(2 * M_PI / 3), c * std::sin(2 * M_PI / 3), c * std::cos(4 * M_PI / 3),
      c * std::sin(4 * M_PI / 3);
  return Configuration(3, q);
}

PotentialModel schwarzschild_example() {
  return PotentialModel::schwarzschild(3, {-1.5, -1.0, -0.6}, {0.5, 1.0 / 3.0, 0.2});
}

}  // namespace

TEST_CASE("dimer energy at the unit-separation minimum") {
  auto model = PotentialModel::lennard_jones(2);
  CHECK(model.energy(lj2_min()) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("equilateral trimer energy") {
  auto model = PotentialModel::lennard_jones(3);
  const Configuration q = lj3_min();
  CHECK(q.distance(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.distance(0, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.distance(1, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(model.energy(q) == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("schwarzschild pair value at unit distance") {
  // a/r + b/r^3 at r = 1 gives a + b, here -3/2 + 1/2 = -1 per pair
  auto profile = PairProfile::schwarzschild(-1.5, 0.5);
  CHECK(profile.value(1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(profile.deriv(1.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("schwarzschild parameters must straddle zero") {
  CHECK_THROWS_AS(PairProfile::schwarzschild(1.0, 1.0), Error);
  CHECK_THROWS_AS(PairProfile::schwarzschild(-1.0, -1.0), Error);
}

TEST_CASE("gradient vanishes at the dimer minimum") {
  auto model = PotentialModel::lennard_jones(2);
  CHECK(model.gradient(lj2_min()).norm() < 1e-14);
}

TEST_CASE("gradient and hessian match finite differences") {
  std::mt19937_64 rng(7);
  auto lj = PotentialModel::lennard_jones(3);
  auto sch = schwarzschild_example();
  for (int rep = 0; rep < 10; ++rep) {
    for (const auto* model : {&lj, &sch}) {
      const Configuration q = testing::random_configuration(3, rng);
      const Vector g = model->gradient(q);
      const Vector g_fd = testing::fd_gradient(*model, q);
      CHECK((g - g_fd).norm() <= 1e-6 * (1.0 + g.norm()));
      const Matrix h = model->hessian(q);
      const Matrix h_fd = testing::fd_hessian(*model, q);
      CHECK((h - h_fd).norm() <= 1e-5 * (1.0 + h.norm()));
    }
  }
}

TEST_CASE("dimer hessian spectrum is 0,0,0,144") {
  auto model = PotentialModel::lennard_jones(2);
  Eigen::SelfAdjointEigenSolver<Matrix> es(model.hessian(lj2_min()));
  const Vector ev = es.eigenvalues();
  CHECK(std::abs(ev[0]) < 1e-10);
  CHECK(std::abs(ev[1]) < 1e-10);
  CHECK(std::abs(ev[2]) < 1e-10);
  CHECK(ev[3] == doctest::Approx(144.0).epsilon(1e-12));
}

TEST_CASE("hessian is symmetric and relabeling-symmetric for identical profiles") {
  std::mt19937_64 rng(11);
  auto model = PotentialModel::lennard_jones(3);
  const Configuration q = testing::random_configuration(3, rng);
  const Matrix h = model.hessian(q);
  CHECK((h - h.transpose()).norm() < 1e-12 * (1.0 + h.norm()));

  // swap particles 1 and 2: hessian blocks permute accordingly
  Vector swapped = q.coords;
  swapped.segment<2>(0).swap(swapped.segment<2>(2));
  const Matrix hs = model.hessian(Configuration(3, swapped));
  Matrix perm = Matrix::Zero(6, 6);
  perm.block<2, 2>(0, 2).setIdentity();
  perm.block<2, 2>(2, 0).setIdentity();
  perm.block<2, 2>(4, 4).setIdentity();
  CHECK((perm * h * perm.transpose() - hs).norm() < 1e-11 * (1.0 + h.norm()));
}

TEST_CASE("rotation invariance and equivariance") {
  std::mt19937_64 rng(13);
  auto model = PotentialModel::lennard_jones(3);
  const Configuration q = testing::random_configuration(3, rng);
  const double u0 = model.energy(q);

  CHECK((rotate_configuration(q, 0.0).coords - q.coords).norm() == 0.0);
  CHECK(invariance_audit(model, q, 32) < 1e-12 * (1.0 + std::abs(u0)));

  const double theta = 0.7345;
  const Configuration qr = rotate_configuration(q, theta);
  const Vector g = model.gradient(q);
  Vector g_rot(6);
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix2d rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    g_rot.segment<2>(2 * i) = rot * g.segment<2>(2 * i);
  }
  CHECK((model.gradient(qr) - g_rot).norm() <= 1e-10 * (1.0 + g.norm()));
}

TEST_CASE("translation invariance") {
  std::mt19937_64 rng(17);
  auto model = schwarzschild_example();
  const Configuration q = testing::random_configuration(3, rng);
  Vector shifted = q.coords;
  for (int i = 0; i < 3; ++i) {
    shifted[2 * i] += 0.37;
    shifted[2 * i + 1] -= 1.21;
  }
  CHECK(model.energy(Configuration(3, shifted)) ==
        doctest::Approx(model.energy(q)).epsilon(1e-12));
}

TEST_CASE("infinitesimal rotation is orthogonal to the configuration") {
  std::mt19937_64 rng(19);
  const Configuration q = testing::random_configuration(3, rng);
  CHECK(std::abs(infinitesimal_rotation(q).dot(q.coords)) < 1e-14 * q.coords.squaredNorm());
}

TEST_CASE("com projector is an orthogonal projector of rank 2N-2") {
  const Matrix p = com_projector(3);
  CHECK((p - p.transpose()).norm() < 1e-14);
  CHECK((p * p - p).norm() < 1e-14);
  CHECK(std::lround(p.trace()) == 4);
}

TEST_CASE("rotation-tangent direction lies in the hessian kernel at critical points") {
  auto model = PotentialModel::lennard_jones(2);
  const Configuration q = lj2_min();
  const Vector jq = infinitesimal_rotation(q);
  CHECK((model.hessian(q) * jq).norm() < 1e-8);
}

TEST_CASE("coincident particles raise a domain error naming the pair") {
  auto model = PotentialModel::lennard_jones(2);
  Vector q(4);
  q << 0.3, 0.4, 0.3, 0.4;
  try {
    model.energy(Configuration(2, q));
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("custom power-sum profile reproduces the built-in forms") {
  // lennard-jones as powers r^-12 - 2 r^-6
  auto lj_powers = PairProfile::power_sum({{1.0, -12.0}, {-2.0, -6.0}});
  auto lj = PairProfile::lennard_jones();
  for (double r : {0.9, 1.0, 1.3, 2.2}) {
    CHECK(lj_powers.value(r) == doctest::Approx(lj.value(r)).epsilon(1e-13));
    CHECK(lj_powers.deriv(r) == doctest::Approx(lj.deriv(r)).epsilon(1e-13));
    CHECK(lj_powers.deriv2(r) == doctest::Approx(lj.deriv2(r)).epsilon(1e-13));
  }
}

TEST_CASE("pair table size is validated") {
  CHECK_THROWS_AS(PotentialModel(3, {PairProfile::lennard_jones()}), Error);
}
