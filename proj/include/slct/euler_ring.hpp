#pragma once

#include "slct/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace slct {

/// Element of the Euler ring of the circle group: an integer combination of
/// the unit I and the generators X(m), m >= 1, one per nontrivial isotropy
/// class. Multiplication follows I * x = x and X(m) * X(m') = 0; the null
/// product of nontrivial generators is the unique bilinear rule under which
/// I - sum k_i X(m_i) has the inverse I + sum k_i X(m_i), which the sphere
/// elements below are known to possess.
class EulerRingElement {
public:
  EulerRingElement() = default;
  explicit EulerRingElement(std::int64_t unit) : unit_(unit) {}

  static EulerRingElement one() { return EulerRingElement(1); }
  static EulerRingElement generator(int weight, std::int64_t coeff = 1);

  std::int64_t unit_coeff() const { return unit_; }
  std::int64_t gen_coeff(int weight) const;
  const std::map<int, std::int64_t>& gen_coeffs() const { return gens_; }

  bool is_zero() const { return unit_ == 0 && gens_.empty(); }

  EulerRingElement operator+(const EulerRingElement& o) const;
  EulerRingElement operator-(const EulerRingElement& o) const;
  EulerRingElement operator-() const;
  EulerRingElement operator*(const EulerRingElement& o) const;
  bool operator==(const EulerRingElement& o) const = default;

  /// Canonical form, e.g. "I - 2*X(1) - X(3)" or "0".
  std::string str() const;

private:
  void set_gen(int weight, std::int64_t coeff);

  std::int64_t unit_ = 0;
  std::map<int, std::int64_t> gens_;  // weight -> coefficient, nonzero entries only
};

EulerRingElement ring_add(const EulerRingElement& a, const EulerRingElement& b);
EulerRingElement ring_mul(const EulerRingElement& a, const EulerRingElement& b);
EulerRingElement ring_neg(const EulerRingElement& a);

/// Finite-dimensional representation of the circle group, as the trivial
/// multiplicity k0 plus rotation blocks of multiplicity k_i and weight m_i
/// (strictly increasing weights).
struct S1RepDecomposition {
  int k0 = 0;
  std::vector<std::pair<int, int>> terms;  // (multiplicity k_i >= 1, weight m_i >= 1)

  void validate() const;
  S1RepDecomposition direct_sum(const S1RepDecomposition& other) const;
  int real_dim() const;
};

/// Euler characteristic of the one-point compactification of the
/// representation: (-1)^{k0} (I - sum k_i X(m_i)).
EulerRingElement sphere_characteristic(const S1RepDecomposition& rep);

/// Explicit inverse (-1)^{k0} (I + sum k_i X(m_i)) of the above.
EulerRingElement sphere_characteristic_inverse(const S1RepDecomposition& rep);

}  // namespace slct
