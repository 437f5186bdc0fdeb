// Acceptance suite: one case per criterion, one PASS/FAIL line each.
#include "slct/euler_expr.hpp"
#include "slct/pipeline.hpp"
#include "slct/validate.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <random>

using namespace slct;

namespace {

class Criterion {
public:
  Criterion(int number, std::string label) : number_(number), label_(std::move(label)) {}
  ~Criterion() {
    std::printf("criterion %2d: %s - %s\n", number_, ok_ ? "PASS" : "FAIL", label_.c_str());
    std::fflush(stdout);
  }

  void check(bool condition, const char* what) {
    ok_ = ok_ && condition;
    INFO(what);
    CHECK(condition);
  }

  void check_close(double got, double want, double tol, const char* what) {
    const bool cond = std::abs(got - want) <= tol;
    ok_ = ok_ && cond;
    INFO(what << ": got " << got << ", want " << want << " within " << tol);
    CHECK(cond);
  }

private:
  int number_;
  std::string label_;
  bool ok_ = true;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

TEST_CASE("criterion 1: dimer spectrum and energy") {
  Criterion c(1, "dimer ambient spectrum {0 x3, 144 x1}, energy -1, under 1 s");
  const auto start = std::chrono::steady_clock::now();

  const auto analysis = run_analysis(preset_config("lj2"));
  c.check_close(analysis.orbit.value, -1.0, 1e-12, "energy");
  const auto& ev = analysis.spectral_ambient.eigenvalues;
  c.check(ev.size() == 2, "two clusters");
  if (ev.size() == 2) {
    c.check_close(ev[0].first, 0.0, 1e-8, "kernel cluster");
    c.check(ev[0].second == 3, "kernel multiplicity 3");
    c.check_close(ev[1].first, 144.0, 1e-8, "positive cluster");
    c.check(ev[1].second == 1, "positive multiplicity 1");
  }
  c.check(seconds_since(start) < 1.0, "runtime under one second");
}

TEST_CASE("criterion 2: dimer family") {
  Criterion c(2, "dimer family: periods within 1e-3 of pi/6, monotone approach, distinct");
  const auto start = std::chrono::steady_clock::now();

  auto analysis = run_analysis(preset_config("lj2"));
  // the 1e-3 period tolerance holds for amplitudes below ~6.4e-3 (the gap
  // grows as 23.9 a^2), so the grid tops out at 6e-3, inside the allowed 1e-2
  const auto family = run_family(analysis, 1, "", log_amplitude_grid(1e-3, 6e-3, 6));
  c.check(family.branches.size() == 1, "one branch");
  const auto& branch = family.branches.front();
  c.check(branch.truncation_note.empty(), "family completed");
  c.check(branch.samples.size() == 6, "all amplitudes converged");
  double prev = 0.0;
  for (const auto& s : branch.samples) {
    c.check(s.amplitude <= 1e-2, "amplitude within the allowed range");
    c.check_close(s.period, M_PI / 6.0, 1e-3, "minimal period near pi/6");
    c.check(s.minimal_period_ok, "minimal period certified");
    c.check(s.period < 2.8450, "below the rigid-rotation period bound");
    c.check(s.dist_to_orbit > prev, "distance to the orbit shrinks with amplitude");
    prev = s.dist_to_orbit;
  }
  c.check(seconds_since(start) < 30.0, "runtime under thirty seconds");
}

TEST_CASE("criterion 3: trimer spectrum and families") {
  Criterion c(3, "trimer spectrum {0 x3, 108 x2, 216 x1}, both branches reach their periods");
  const auto start = std::chrono::steady_clock::now();

  auto analysis = run_analysis(preset_config("lj3"));
  const auto& ev = analysis.spectral_ambient.eigenvalues;
  c.check(ev.size() == 3, "three clusters");
  if (ev.size() == 3) {
    c.check_close(ev[0].first, 0.0, 1e-6, "kernel cluster");
    c.check(ev[0].second == 3, "kernel multiplicity");
    c.check_close(ev[1].first, 108.0, 1e-6, "108 cluster");
    c.check(ev[1].second == 2, "108 multiplicity");
    c.check_close(ev[2].first, 216.0, 1e-6, "216 cluster");
    c.check(ev[2].second == 1, "216 multiplicity");
  }
  c.check(analysis.admissible() == std::vector<int>{1, 2}, "both frequencies admissible");

  const auto grid = log_amplitude_grid(1e-3, 8e-3, 6);
  const auto fast = run_family(analysis, 1, "", grid);
  c.check(fast.branches.size() == 1, "one branch for the simple frequency");
  for (const auto& branch : fast.branches) {
    c.check(branch.samples.size() == grid.size(), "family complete");
    for (const auto& s : branch.samples)
      c.check_close(s.period, M_PI / (3.0 * std::sqrt(6.0)), 1e-3, "period near pi/(3 sqrt 6)");
  }

  const auto slow = run_family(analysis, 2, "", grid);
  c.check(slow.branches.size() == 2, "two branches for the double frequency");
  for (const auto& branch : slow.branches) {
    c.check(branch.samples.size() == grid.size(), "family complete");
    for (const auto& s : branch.samples)
      c.check_close(s.period, M_PI / (3.0 * std::sqrt(3.0)), 1e-3, "period near pi/(3 sqrt 3)");
  }
  c.check(seconds_since(start) < 120.0, "runtime under two minutes");
}

TEST_CASE("criterion 4: unit-triangle case") {
  Criterion c(4, "triangle sides 1, spectrum matches the cubic roots, certificates change");

  const auto analysis = run_analysis(preset_config("schwarzschild-example"));
  const auto& q = analysis.orbit.q0;
  c.check_close(q.distance(0, 1), 1.0, 1e-12, "side 12");
  c.check_close(q.distance(0, 2), 1.0, 1e-12, "side 13");
  c.check_close(q.distance(1, 2), 1.0, 1e-12, "side 23");

  // root oracle for the nonzero block's characteristic cubic
  const auto roots = real_polynomial_roots({5.0, -62.0, 225.0, -243.0});
  std::vector<double> nonzero;
  for (const auto& [value, mult] : analysis.spectral_ambient.eigenvalues)
    if (std::abs(value) > 1e-6)
      for (int i = 0; i < mult; ++i) nonzero.push_back(value);
  c.check(nonzero.size() == 3, "three simple nonzero eigenvalues");
  if (nonzero.size() == 3) {
    for (int i = 0; i < 3; ++i)
      c.check_close(nonzero[i], roots[i], 1e-6, "eigenvalue matches the root oracle");
    c.check_close(nonzero[0], 2.027, 1e-3, "first printed value");
    c.check_close(nonzero[1], 3.475, 1e-3, "second printed value");
    c.check_close(nonzero[2], 6.897, 1e-3, "third printed value");
  }

  c.check(analysis.admissible() == std::vector<int>{1, 2, 3}, "all three admissible");
  c.check(analysis.certificates.size() == 3, "three certificates");
  for (const auto& cert : analysis.certificates) c.check(cert.changed, "certificate changed");
}

TEST_CASE("criterion 5: certificate arithmetic") {
  Criterion c(5, "every built-in case: r+ - r- = multiplicity, sign product negative");
  for (const char* preset : {"lj2", "lj3", "schwarzschild-example"}) {
    const auto analysis = run_analysis(preset_config(preset));
    c.check(!analysis.certificates.empty(), "certificates exist");
    for (const auto& cert : analysis.certificates) {
      const int mult = analysis.chosen_spectral().beta_mult(cert.j0);
      c.check(cert.r_plus - cert.r_minus == mult, "dimension jump equals multiplicity");
      const double b2 = cert.beta * cert.beta;
      const double product =
          (1.0 - cert.window.lambda_minus * cert.window.lambda_minus * b2) *
          (1.0 - cert.window.lambda_plus * cert.window.lambda_plus * b2);
      c.check(product < 0.0, "window straddles the resonance");
    }
  }
}

TEST_CASE("criterion 6: ring arithmetic suite") {
  Criterion c(6, "ring axioms on 1000 elements, multiplicativity on 200 sums, inverses");
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<int> weight(1, 6);

  auto random_element = [&] {
    EulerRingElement e(coeff(rng));
    for (int t = static_cast<int>(rng() % 4); t > 0; --t)
      e = e + EulerRingElement::generator(weight(rng), coeff(rng));
    return e;
  };
  for (int rep = 0; rep < 1000; ++rep) {
    const auto a = random_element(), b = random_element(), d = random_element();
    c.check(a + b == b + a, "commutative addition");
    c.check((a + b) + d == a + (b + d), "associative addition");
    c.check(a * b == b * a, "commutative product");
    c.check((a * b) * d == a * (b * d), "associative product");
    c.check(a * (b + d) == a * b + a * d, "distributivity");
    c.check(EulerRingElement::one() * a == a, "unit");
  }

  auto random_rep = [&] {
    S1RepDecomposition rep;
    rep.k0 = static_cast<int>(rng() % 3);
    int w = 0;
    for (int b = static_cast<int>(rng() % 4); b > 0; --b) {
      w += 1 + static_cast<int>(rng() % 3);
      rep.terms.emplace_back(1 + static_cast<int>(rng() % 4), w);
    }
    return rep;
  };
  for (int rep = 0; rep < 200; ++rep) {
    const auto v = random_rep(), w = random_rep();
    c.check(sphere_characteristic(v.direct_sum(w)) ==
                sphere_characteristic(v) * sphere_characteristic(w),
            "multiplicative over direct sums");
    c.check(sphere_characteristic(v) * sphere_characteristic_inverse(v) ==
                EulerRingElement::one(),
            "sphere characteristics invert");
  }
}

TEST_CASE("criterion 7: differentiation suite") {
  Criterion c(7, "gradients and hessians match finite differences on 100 configurations");
  std::mt19937_64 rng(2025);
  auto lj = PotentialModel::lennard_jones(3);
  auto sch = PotentialModel::schwarzschild(3, {-1.5, -1.0, -0.6}, {0.5, 1.0 / 3.0, 0.2});
  for (const auto* model : {&lj, &sch}) {
    for (int rep = 0; rep < 100; ++rep) {
      const Configuration q = testing::random_configuration(3, rng);
      const Vector g = model->gradient(q);
      const Matrix h = model->hessian(q);
      const bool g_ok = (g - testing::fd_gradient(*model, q)).norm() <= 1e-6 * (1.0 + g.norm());
      const bool h_ok = (h - testing::fd_hessian(*model, q)).norm() <= 1e-5 * (1.0 + h.norm());
      c.check(g_ok, "gradient versus central differences");
      c.check(h_ok, "hessian versus differentiated gradient");
    }
  }
}

TEST_CASE("criterion 8: dynamics suite") {
  Criterion c(8, "verlet drift halves quadratically; galerkin orbits re-integrate closed");
  auto model = PotentialModel::lennard_jones(2);
  const auto orbit = lj_equilibria(2)[0];
  const auto spectral = analyze_hessian(model, orbit, SpectralMode::com_reduced);

  const auto basis = cluster_eigenvectors(model, orbit, spectral, 1);
  const Vector q0 = orbit.q0.coords + 5e-3 * basis[0];
  const auto coarse = integrate_ode(model, q0, Vector::Zero(4), 2.0, 1e-3);
  const auto fine = integrate_ode(model, q0, Vector::Zero(4), 2.0, 5e-4);
  const double ratio = coarse.energy_drift / fine.energy_drift;
  c.check(ratio > 3.5 && ratio < 4.5, "second-order energy drift");

  ContinuationOptions opts;
  const auto family = continue_family(model, orbit, spectral, 1,
                                      log_amplitude_grid(1e-3, 6e-3, 4), opts);
  for (const auto& s : family.branches.front().samples)
    c.check(s.closure_error < 100.0 * opts.residual_tol, "closure within 100x residual tol");
}

TEST_CASE("criterion 9: degree oracle") {
  Criterion c(9, "winding numbers 1, 1, 2 on the three reference fields");
  auto identity = [](double s) {
    const double t = 2.0 * M_PI * s;
    return Eigen::Vector2d(std::cos(t), std::sin(t));
  };
  auto quartic = [](double s) {
    const double t = 2.0 * M_PI * s;
    return Eigen::Vector2d(4.0 * std::pow(std::cos(t), 3.0), 4.0 * std::pow(std::sin(t), 3.0));
  };
  auto doubling = [](double s) {
    const double t = 2.0 * M_PI * s;
    const double u = std::cos(t), v = std::sin(t);
    return Eigen::Vector2d(u * u - v * v, 2.0 * u * v);
  };
  c.check(winding_degree(identity) == 1, "identity field has degree 1");
  c.check(winding_degree(quartic) == 1, "gradient of a minimum has degree 1");
  c.check(winding_degree(doubling) == 2, "angle doubling has degree 2");
}

TEST_CASE("criterion 10: negative controls") {
  Criterion c(10, "collinear trimer saddles fail minimality and get no certificate");
  for (int which = 1; which <= 3; ++which) {
    const auto analysis =
        run_analysis(preset_config("lj3-collinear-" + std::to_string(which)));
    c.check(!analysis.hypotheses.minimal, "hypothesis (1) fails");
    c.check(analysis.report.exit_code == 2, "exit code 2");
    c.check(analysis.certificates.empty(), "no certificate produced");
    c.check(!analysis.report.serialize().empty(), "report still written");
  }
}
