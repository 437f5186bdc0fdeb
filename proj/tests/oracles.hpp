// Independent numeric oracles used only by tests; none of these share code
// with the implementation paths they check.
#pragma once

#include "slct/potentials.hpp"

#include <functional>
#include <random>
#include <vector>

namespace slct::testing {

/// Central difference with one Richardson extrapolation step.
inline double richardson_derivative(const std::function<double(double)>& f, double x,
                                    double h = 1e-5) {
  auto central = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
  const double d1 = central(h);
  const double d2 = central(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

/// Gradient of the model energy by finite differences.
inline Vector fd_gradient(const PotentialModel& model, const Configuration& q, double h = 1e-5) {
  Vector g(q.coords.size());
  for (int i = 0; i < q.coords.size(); ++i) {
    auto slice = [&](double x) {
      Vector c = q.coords;
      c[i] = x;
      return model.energy(Configuration(q.n, c));
    };
    g[i] = richardson_derivative(slice, q.coords[i], h);
  }
  return g;
}

/// Hessian by finite differences of the analytic gradient.
inline Matrix fd_hessian(const PotentialModel& model, const Configuration& q, double h = 1e-5) {
  const int dim = static_cast<int>(q.coords.size());
  Matrix hess(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      auto slice = [&](double x) {
        Vector c = q.coords;
        c[j] = x;
        return model.gradient(Configuration(q.n, c))[i];
      };
      hess(i, j) = richardson_derivative(slice, q.coords[j], h);
    }
  return hess;
}

/// Random collision-free configuration: particles drawn in a box, redrawn
/// until all pairwise distances stay comfortably inside the smooth region.
inline Configuration random_configuration(int n, std::mt19937_64& rng, double min_sep = 0.85,
                                          double box = 2.0) {
  std::uniform_real_distribution<double> u(-box, box);
  for (;;) {
    Vector c(2 * n);
    for (int i = 0; i < 2 * n; ++i) c[i] = u(rng);
    Configuration q(n, c);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j) ok = q.distance(i, j) > min_sep;
    if (ok) return q;
  }
}

/// Characteristic polynomial det(x I - A) by cofactor expansion over
/// polynomials, workable for dim <= 4; coefficients leading first.
inline std::vector<double> charpoly_by_determinant(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  using Poly = std::vector<double>;  // ascending powers
  auto mul = [](const Poly& p, const Poly& q) {
    Poly r(p.size() + q.size() - 1, 0.0);
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
  };
  auto add = [](Poly p, const Poly& q, double scale) {
    if (q.size() > p.size()) p.resize(q.size(), 0.0);
    for (size_t i = 0; i < q.size(); ++i) p[i] += scale * q[i];
    return p;
  };

  // entries of x I - A as degree-1 polynomials
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = i == j ? Poly{-a(i, j), 1.0} : Poly{-a(i, j)};

  std::function<Poly(std::vector<int>, std::vector<int>)> det =
      [&](std::vector<int> rows, std::vector<int> cols) -> Poly {
    if (rows.size() == 1) return m[rows[0]][cols[0]];
    Poly result{0.0};
    for (size_t c = 0; c < cols.size(); ++c) {
      std::vector<int> sub_rows(rows.begin() + 1, rows.end());
      std::vector<int> sub_cols;
      for (size_t k = 0; k < cols.size(); ++k)
        if (k != c) sub_cols.push_back(cols[k]);
      const Poly minor = det(sub_rows, sub_cols);
      const Poly term = mul(m[rows[0]][cols[c]], minor);
      result = add(result, term, c % 2 == 0 ? 1.0 : -1.0);
    }
    return result;
  };

  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  Poly p = det(idx, idx);
  std::vector<double> leading_first(p.rbegin(), p.rend());
  return leading_first;
}

/// Brute-force winding number: dense fixed sampling, no adaptivity.
inline double brute_winding(const std::function<Eigen::Vector2d(double)>& field,
                            int samples = 1 << 20) {
  double total = 0.0;
  Eigen::Vector2d prev = field(0.0);
  for (int s = 1; s <= samples; ++s) {
    const Eigen::Vector2d cur = field(static_cast<double>(s % samples) / samples);
    total += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
    prev = cur;
  }
  return total / (2.0 * M_PI);
}

}  // namespace slct::testing
