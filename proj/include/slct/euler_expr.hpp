#pragma once

#include "slct/euler_ring.hpp"

#include <string>

namespace slct {

/// Evaluate a ring expression over the literals
///   I                     the unit,
///   X(m)                  the weight-m generator,
///   S[k0; (k1,m1), ...]   the sphere characteristic of a representation,
/// integer literals, parentheses and the operators + - * (the middle dot
/// from canonical printing is accepted as multiplication). Parse errors
/// report the byte position.
EulerRingElement euler_eval(const std::string& expression);

}  // namespace slct
