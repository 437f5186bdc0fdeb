#include "slct/resonance.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace slct;

namespace {
const double b6 = 6.0 * std::sqrt(6.0);
const double b3 = 6.0 * std::sqrt(3.0);
}

TEST_CASE("resonance values for a single frequency") {
  const auto points = lambda_set({{12.0, 1}}, 0.3);
  REQUIRE(points.size() == 3);
  CHECK(points[0].value == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(points[1].value == doctest::Approx(2.0 / 12).epsilon(1e-15));
  CHECK(points[2].value == doctest::Approx(3.0 / 12).epsilon(1e-15));
  CHECK(points[0].provenance == std::vector<std::pair<int, int>>{{1, 1}});
}

TEST_CASE("integer frequencies enumerate the integers") {
  const auto points = lambda_set({{1.0, 1}}, 3.5);
  REQUIRE(points.size() == 3);
  CHECK(points[0].value == 1.0);
  CHECK(points[1].value == 2.0);
  CHECK(points[2].value == 3.0);
}

TEST_CASE("two-frequency set starts with both reciprocals") {
  const auto points = lambda_set({{b6, 1}, {b3, 2}}, 0.2);
  REQUIRE(points.size() >= 2);
  CHECK(points[0].value == doctest::Approx(1.0 / b6).epsilon(1e-14));
  CHECK(points[1].value == doctest::Approx(1.0 / b3).epsilon(1e-14));
  // sorted and unique, all within the bound
  for (size_t i = 0; i < points.size(); ++i) {
    CHECK(points[i].value <= 0.2 + 1e-12);
    if (i > 0) CHECK(points[i].value > points[i - 1].value);
  }
}

TEST_CASE("duplicate resonance values merge their provenance") {
  // 2/2 and 1/1 coincide
  const auto points = lambda_set({{2.0, 1}, {1.0, 1}}, 1.0);
  REQUIRE(points.size() == 2);
  CHECK(points[0].value == doctest::Approx(0.5));
  CHECK(points[1].value == doctest::Approx(1.0));
  CHECK(points[1].provenance.size() == 2);
}

TEST_CASE("single frequency is admissible") {
  const auto rep = admissible_frequencies({{12.0, 1}});
  CHECK(rep.admissible == std::vector<int>{1});
  CHECK(rep.rejections.empty());
}

TEST_CASE("the sqrt-two pair is admissible both ways") {
  const auto rep = admissible_frequencies({{b6, 1}, {b3, 2}});
  CHECK(rep.admissible == std::vector<int>{1, 2});
  CHECK(rep.ratios(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(rep.ratios(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("integer ratios are rejected with diagnostics") {
  const auto rep = admissible_frequencies({{2.0, 1}, {1.0, 1}});
  // beta_1 / beta_2 = 2 kills j0 = 2; beta_2 / beta_1 = 0.5 is fine for j0 = 1
  CHECK(rep.admissible == std::vector<int>{1});
  REQUIRE(rep.rejections.size() == 1);
  CHECK(rep.rejections[0].first == 2);
  CHECK(rep.rejections[0].second.j == 1);
  CHECK(rep.rejections[0].second.nearest == 2);
}

TEST_CASE("near-integer ratios within tolerance are flagged") {
  const auto rep = admissible_frequencies({{2.0 + 1e-12, 1}, {1.0, 1}}, 1e-9);
  CHECK(rep.admissible == std::vector<int>{1});
}

TEST_CASE("window around the dimer frequency") {
  const auto w = choose_window({{12.0, 1}}, 1);
  CHECK(w.epsilon == doctest::Approx(1e-2));
  CHECK(w.lambda_minus == doctest::Approx(0.99 / 12.0).epsilon(1e-14));
  CHECK(w.lambda_plus == doctest::Approx(1.01 / 12.0).epsilon(1e-14));
  // defining property, re-checked by independent enumeration
  const auto points = lambda_set({{12.0, 1}}, w.lambda_plus * 1.5);
  int inside = 0;
  for (const auto& p : points)
    if (p.value >= w.lambda_minus && p.value <= w.lambda_plus) ++inside;
  CHECK(inside == 1);
}

TEST_CASE("window for ratio one-half keeps only the center") {
  const auto w = choose_window({{2.0, 1}, {1.0, 1}}, 1);  // lambda0 = 1/2
  const auto points = lambda_set({{2.0, 1}, {1.0, 1}}, 2.0);
  int inside = 0;
  for (const auto& p : points)
    if (p.value >= w.lambda_minus && p.value <= w.lambda_plus) ++inside;
  CHECK(inside == 1);
  CHECK(w.lambda_minus < 0.5);
  CHECK(w.lambda_plus > 0.5);
}

TEST_CASE("crowded spectra shrink the window") {
  // a second frequency very close to the first forces a tiny epsilon
  const auto w = choose_window({{1.0, 1}, {0.9999, 1}}, 1, 1e-2);
  CHECK(w.epsilon < 1e-3);
  const auto points = lambda_set({{1.0, 1}, {0.9999, 1}}, 1.1);
  int inside = 0;
  for (const auto& p : points)
    if (p.value >= w.lambda_minus && p.value <= w.lambda_plus) ++inside;
  CHECK(inside == 1);
}

TEST_CASE("impossibly crowded spectra raise the crowding error") {
  // the neighbor sits closer than the smallest allowed half-width
  CHECK_THROWS_AS(choose_window({{1.0, 1}, {1.0 - 1e-13, 1}}, 1), Error);
}

TEST_CASE("minimal period guarantee on the built-in spectra") {
  CHECK(minimal_period_guarantee({{12.0, 1}}, 1).guaranteed);
  CHECK(minimal_period_guarantee({{b6, 1}, {b3, 2}}, 2).guaranteed);
  CHECK(minimal_period_guarantee({{b6, 1}, {b3, 2}}, 1).guaranteed);
}

TEST_CASE("inadmissible j0 is rejected by the guarantee") {
  CHECK_THROWS_AS(minimal_period_guarantee({{2.0, 1}, {1.0, 1}}, 2), Error);
}

TEST_CASE("scaling covariance of the resonance machinery") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  const std::vector<std::pair<double, int>> betas = {{7.13, 1}, {3.41, 2}, {1.07, 1}};
  const double c = u(rng);
  std::vector<std::pair<double, int>> scaled;
  for (auto [b, m] : betas) scaled.emplace_back(c * b, m);

  const auto base = lambda_set(betas, 1.0);
  const auto scaled_set = lambda_set(scaled, 1.0 / c);
  REQUIRE(base.size() == scaled_set.size());
  for (size_t i = 0; i < base.size(); ++i) {
    CHECK(scaled_set[i].value == doctest::Approx(base[i].value / c).epsilon(1e-12));
    CHECK(scaled_set[i].provenance == base[i].provenance);
  }

  CHECK(admissible_frequencies(betas).admissible ==
        admissible_frequencies(scaled).admissible);

  const auto w = choose_window(betas, 2);
  const auto ws = choose_window(scaled, 2);
  CHECK(ws.epsilon == doctest::Approx(w.epsilon));
  CHECK(ws.lambda_minus == doctest::Approx(w.lambda_minus / c).epsilon(1e-12));
  CHECK(ws.lambda_plus == doctest::Approx(w.lambda_plus / c).epsilon(1e-12));
}

TEST_CASE("predicted period times frequency is exactly two pi") {
  const std::vector<std::pair<double, int>> betas = {{b6, 1}, {b3, 2}};
  SpectralData data;
  data.mode = SpectralMode::com_reduced;
  data.dim = 4;
  data.eigenvalues = {{108.0, 2}, {216.0, 1}};
  data.betas = betas;
  const auto report = resonance_report(data, 0.5);
  REQUIRE(report.branches.size() == 2);
  for (const auto& branch : report.branches) {
    const double beta = betas[branch.j0 - 1].first;
    CHECK(branch.predicted_period * beta == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(branch.minimal_period.guaranteed);
  }
}
