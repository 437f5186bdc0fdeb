#include "slct/presets.hpp"

#include <algorithm>
#include <cmath>

namespace slct {

namespace {

Vector lj2_point() {
  Vector q(4);
  q << 0.0, 0.5, 0.0, -0.5;
  return q;
}

Vector lj3_equilateral() {
  const double c = 1.0 / std::sqrt(3.0);
  const double alpha = 2.0 * M_PI / 3.0;
  const double beta = 4.0 * M_PI / 3.0;
  Vector q(6);
  q << c, 0, c * std::cos(alpha), c * std::sin(alpha), c * std::cos(beta), c * std::sin(beta);
  return q;
}

Vector lj3_collinear(int which) {
  const double a = std::pow(2731.0 / 43.0, 1.0 / 6.0);
  Vector q(6);
  switch (which) {
    case 1: q << a / 2, 0, 0, 0, -a / 2, 0; break;
    case 2: q << 0, 0, a / 2, 0, -a / 2, 0; break;
    default: q << a / 2, 0, -a / 2, 0, 0, 0; break;
  }
  return q;
}

Vector schwarzschild_triangle() {
  const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
  Vector q(6);
  q << s2 / 2, 0, 0, s2 / 2, (s2 + s6) / 4, (s2 + s6) / 4;
  return q;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"lj2",           "lj3",           "lj3-collinear-1",
          "lj3-collinear-2", "lj3-collinear-3", "schwarzschild-example"};
}

bool is_preset(const std::string& name) {
  const auto names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

AnalysisConfig preset_config(const std::string& name) {
  AnalysisConfig cfg;
  cfg.name = name;
  if (name == "lj2") {
    cfg.problem.type = ProblemSpec::Type::lennard_jones;
    cfg.problem.n = 2;
    cfg.seed = lj2_point();
    return cfg;
  }
  if (name == "lj3") {
    cfg.problem.type = ProblemSpec::Type::lennard_jones;
    cfg.problem.n = 3;
    cfg.seed = lj3_equilateral();
    return cfg;
  }
  if (name.rfind("lj3-collinear-", 0) == 0 && name.size() == 15) {
    const int which = name.back() - '0';
    if (which >= 1 && which <= 3) {
      cfg.problem.type = ProblemSpec::Type::lennard_jones;
      cfg.problem.n = 3;
      cfg.seed = lj3_collinear(which);
      return cfg;
    }
  }
  if (name == "schwarzschild-example") {
    cfg.problem.type = ProblemSpec::Type::schwarzschild;
    cfg.problem.n = 3;
    cfg.problem.schwarzschild_pairs[{1, 2}] = {-1.5, 0.5};
    cfg.problem.schwarzschild_pairs[{1, 3}] = {-1.0, 1.0 / 3.0};
    cfg.problem.schwarzschild_pairs[{2, 3}] = {-0.6, 0.2};
    cfg.seed = schwarzschild_triangle();
    return cfg;
  }
  fail(ErrorCode::argument, "unknown preset '" + name + "'; available: lj2, lj3, "
                            "lj3-collinear-{1,2,3}, schwarzschild-example");
}

}  // namespace slct
