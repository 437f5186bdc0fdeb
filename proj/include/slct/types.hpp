#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace slct {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Error categories shared between the C++ core and the C interface.
enum class ErrorCode {
  argument = 1,     // bad argument or violated precondition
  domain = 2,       // configuration left the admissible set (collision etc.)
  convergence = 3,  // an iterative solver did not converge
  parse = 4,        // config / expression / report syntax error
  hypothesis = 5,   // hypothesis check failed where success was required
  resonance = 6,    // resonance crowding or degenerate mode
  io = 7,           // file system failure
  internal = 8,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

/// Positions of N planar particles, stored as (x1, y1, ..., xN, yN).
struct Configuration {
  int n = 0;
  Vector coords;

  Configuration() = default;
  Configuration(int n_particles, Vector c) : n(n_particles), coords(std::move(c)) {
    if (n < 2) fail(ErrorCode::argument, "configuration needs at least 2 particles");
    if (coords.size() != 2 * n)
      fail(ErrorCode::argument, "configuration needs 2N coordinates, got " +
                                    std::to_string(coords.size()));
  }

  Eigen::Vector2d particle(int i) const { return coords.segment<2>(2 * i); }

  double distance(int i, int j) const { return (particle(i) - particle(j)).norm(); }
};

}  // namespace slct
