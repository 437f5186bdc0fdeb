#include "slct/euler_ring.hpp"
#include "slct/euler_expr.hpp"

#include <doctest.h>

#include <random>

using namespace slct;

namespace {

EulerRingElement random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-6, 6);
  std::uniform_int_distribution<int> weight(1, 5);
  EulerRingElement e(coeff(rng));
  const int terms = static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t)
    e = e + EulerRingElement::generator(weight(rng), coeff(rng));
  return e;
}

S1RepDecomposition random_rep(std::mt19937_64& rng) {
  S1RepDecomposition rep;
  rep.k0 = static_cast<int>(rng() % 3);
  int weight = 0;
  const int blocks = static_cast<int>(rng() % 4);
  for (int b = 0; b < blocks; ++b) {
    weight += 1 + static_cast<int>(rng() % 3);
    rep.terms.emplace_back(1 + static_cast<int>(rng() % 3), weight);
  }
  return rep;
}

}  // namespace

TEST_CASE("unit law") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    const auto x = random_element(rng);
    CHECK(EulerRingElement::one() * x == x);
    CHECK(x * EulerRingElement::one() == x);
  }
}

TEST_CASE("inverse pair of the first sphere element") {
  const auto minus = EulerRingElement::one() - EulerRingElement::generator(1, 3);
  const auto plus = EulerRingElement::one() + EulerRingElement::generator(1, 3);
  CHECK(minus * plus == EulerRingElement::one());
}

TEST_CASE("nontrivial generators multiply to zero") {
  const auto x2 = EulerRingElement::generator(2);
  const auto x3 = EulerRingElement::generator(3);
  CHECK((x2 * x3).is_zero());
  CHECK((x2 * x2).is_zero());
}

TEST_CASE("ring axioms hold exactly on random elements") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto a = random_element(rng);
    const auto b = random_element(rng);
    const auto c = random_element(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == EulerRingElement());
  }
}

TEST_CASE("integer overflow is reported, not wrapped") {
  const EulerRingElement huge(std::int64_t(1) << 62);
  CHECK_THROWS_AS(huge * huge, Error);
  CHECK_THROWS_AS(huge + huge, Error);
}

TEST_CASE("sphere characteristic of the basic representations") {
  // zero space
  CHECK(sphere_characteristic(S1RepDecomposition{}) == EulerRingElement::one());
  // one trivial direction flips the sign
  CHECK(sphere_characteristic(S1RepDecomposition{1, {}}) == -EulerRingElement::one());
  // two weight-1 blocks and one weight-3 block
  const S1RepDecomposition rep{0, {{2, 1}, {1, 3}}};
  const auto chi = sphere_characteristic(rep);
  CHECK(chi.unit_coeff() == 1);
  CHECK(chi.gen_coeff(1) == -2);
  CHECK(chi.gen_coeff(3) == -1);
  CHECK(chi.str() == "I - 2·X(1) - X(3)");
}

TEST_CASE("sphere characteristic is multiplicative over direct sums") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 200; ++rep) {
    const auto v = random_rep(rng);
    const auto w = random_rep(rng);
    CHECK(sphere_characteristic(v.direct_sum(w)) ==
          sphere_characteristic(v) * sphere_characteristic(w));
  }
}

TEST_CASE("every sphere characteristic is a unit with the explicit inverse") {
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 200; ++rep) {
    const auto v = random_rep(rng);
    CHECK(sphere_characteristic(v) * sphere_characteristic_inverse(v) ==
          EulerRingElement::one());
  }
}

TEST_CASE("canonical printing") {
  CHECK(EulerRingElement().str() == "0");
  CHECK(EulerRingElement::one().str() == "I");
  CHECK((-EulerRingElement::one()).str() == "-I");
  CHECK((EulerRingElement(2) - EulerRingElement::generator(4, 5)).str() ==
        "2·I - 5·X(4)");
}

TEST_CASE("expression calculator matches the ring") {
  CHECK(euler_eval("I").str() == "I");
  CHECK(euler_eval("S[0;(2,1),(1,3)]").str() == "I - 2·X(1) - X(3)");
  CHECK(euler_eval("X(2)*X(3)").str() == "0");
  CHECK(euler_eval("(I - X(1))*(I + X(1))").str() == "I");
  CHECK(euler_eval("S[1]").str() == "-I");
  CHECK(euler_eval("3*X(2) - X(2)").str() == "2·X(2)");
  CHECK(euler_eval("-2").str() == "-2·I");
  // canonical output is accepted back as input
  const auto chi = euler_eval("S[3;(4,2),(1,7)]");
  CHECK(euler_eval(chi.str()) == chi);
}

TEST_CASE("parse errors carry the position") {
  try {
    euler_eval("I + X(");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
  CHECK_THROWS_AS(euler_eval("S[0;(0,1)]"), Error);
  CHECK_THROWS_AS(euler_eval("X(0)"), Error);
  CHECK_THROWS_AS(euler_eval("I I"), Error);
}

TEST_CASE("representations validate their shape") {
  S1RepDecomposition bad{0, {{1, 3}, {1, 2}}};  // weights must increase
  CHECK_THROWS_AS(sphere_characteristic(bad), Error);
}
