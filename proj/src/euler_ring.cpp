#include "slct/euler_ring.hpp"

#include <sstream>

namespace slct {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    fail(ErrorCode::argument, "integer overflow in Euler ring arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    fail(ErrorCode::argument, "integer overflow in Euler ring arithmetic");
  return r;
}

}  // namespace

EulerRingElement EulerRingElement::generator(int weight, std::int64_t coeff) {
  if (weight < 1) fail(ErrorCode::argument, "generator weight must be >= 1");
  EulerRingElement e;
  e.set_gen(weight, coeff);
  return e;
}

std::int64_t EulerRingElement::gen_coeff(int weight) const {
  auto it = gens_.find(weight);
  return it == gens_.end() ? 0 : it->second;
}

void EulerRingElement::set_gen(int weight, std::int64_t coeff) {
  if (coeff == 0)
    gens_.erase(weight);
  else
    gens_[weight] = coeff;
}

EulerRingElement EulerRingElement::operator+(const EulerRingElement& o) const {
  EulerRingElement r = *this;
  r.unit_ = checked_add(r.unit_, o.unit_);
  for (const auto& [w, c] : o.gens_) r.set_gen(w, checked_add(r.gen_coeff(w), c));
  return r;
}

EulerRingElement EulerRingElement::operator-() const {
  EulerRingElement r;
  r.unit_ = checked_mul(unit_, -1);
  for (const auto& [w, c] : gens_) r.set_gen(w, checked_mul(c, -1));
  return r;
}

EulerRingElement EulerRingElement::operator-(const EulerRingElement& o) const {
  return *this + (-o);
}

EulerRingElement EulerRingElement::operator*(const EulerRingElement& o) const {
  // (a I + sum a_m X(m)) (b I + sum b_m X(m)) = ab I + sum (a b_m + b a_m) X(m)
  EulerRingElement r;
  r.unit_ = checked_mul(unit_, o.unit_);
  for (const auto& [w, c] : gens_) r.set_gen(w, checked_mul(o.unit_, c));
  for (const auto& [w, c] : o.gens_)
    r.set_gen(w, checked_add(r.gen_coeff(w), checked_mul(unit_, c)));
  return r;
}

EulerRingElement ring_add(const EulerRingElement& a, const EulerRingElement& b) { return a + b; }
EulerRingElement ring_mul(const EulerRingElement& a, const EulerRingElement& b) { return a * b; }
EulerRingElement ring_neg(const EulerRingElement& a) { return -a; }

std::string EulerRingElement::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto emit = [&](std::int64_t coeff, const std::string& symbol) {
    if (coeff == 0) return;
    const std::int64_t mag = coeff < 0 ? -coeff : coeff;
    if (first) {
      if (coeff < 0) os << "-";
      first = false;
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    if (mag == 1)
      os << symbol;
    else
      os << mag << "·" << symbol;
  };
  emit(unit_, "I");
  for (const auto& [w, c] : gens_) emit(c, "X(" + std::to_string(w) + ")");
  return os.str();
}

void S1RepDecomposition::validate() const {
  if (k0 < 0) fail(ErrorCode::argument, "trivial multiplicity must be >= 0");
  int prev = 0;
  for (const auto& [k, m] : terms) {
    if (k < 1) fail(ErrorCode::argument, "block multiplicity must be >= 1");
    if (m < 1) fail(ErrorCode::argument, "block weight must be >= 1");
    if (m <= prev) fail(ErrorCode::argument, "block weights must be strictly increasing");
    prev = m;
  }
}

S1RepDecomposition S1RepDecomposition::direct_sum(const S1RepDecomposition& other) const {
  validate();
  other.validate();
  S1RepDecomposition out;
  out.k0 = k0 + other.k0;
  std::map<int, int> merged;
  for (const auto& [k, m] : terms) merged[m] += k;
  for (const auto& [k, m] : other.terms) merged[m] += k;
  for (const auto& [m, k] : merged) out.terms.emplace_back(k, m);
  return out;
}

int S1RepDecomposition::real_dim() const {
  int d = k0;
  for (const auto& [k, m] : terms) d += 2 * k;
  return d;
}

EulerRingElement sphere_characteristic(const S1RepDecomposition& rep) {
  rep.validate();
  const std::int64_t sign = rep.k0 % 2 == 0 ? 1 : -1;
  EulerRingElement e(sign);
  for (const auto& [k, m] : rep.terms)
    e = e + EulerRingElement::generator(m, -sign * static_cast<std::int64_t>(k));
  return e;
}

EulerRingElement sphere_characteristic_inverse(const S1RepDecomposition& rep) {
  rep.validate();
  const std::int64_t sign = rep.k0 % 2 == 0 ? 1 : -1;
  EulerRingElement e(sign);
  for (const auto& [k, m] : rep.terms)
    e = e + EulerRingElement::generator(m, sign * static_cast<std::int64_t>(k));
  return e;
}

}  // namespace slct
