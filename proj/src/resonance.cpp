#include "slct/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slct {

namespace {

void require_betas(const std::vector<std::pair<double, int>>& betas) {
  if (betas.empty()) fail(ErrorCode::argument, "no positive frequencies");
  for (size_t i = 0; i < betas.size(); ++i) {
    if (!(betas[i].first > 0.0) || betas[i].second < 1)
      fail(ErrorCode::argument, "frequencies must be positive with multiplicity >= 1");
    if (i > 0 && !(betas[i - 1].first > betas[i].first))
      fail(ErrorCode::argument, "frequencies must be strictly descending");
  }
}

}  // namespace

std::vector<LambdaPoint> lambda_set(const std::vector<std::pair<double, int>>& betas,
                                    double lambda_max, double merge_tol) {
  require_betas(betas);
  if (!(lambda_max > 0.0)) fail(ErrorCode::argument, "lambda_max must be positive");
  std::vector<std::pair<double, std::pair<int, int>>> raw;
  for (size_t j = 0; j < betas.size(); ++j) {
    const double beta = betas[j].first;
    const int kmax = static_cast<int>(std::floor(lambda_max * beta * (1.0 + 1e-15)));
    for (int k = 1; k <= kmax; ++k)
      raw.emplace_back(k / beta, std::make_pair(k, static_cast<int>(j + 1)));
  }
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LambdaPoint> out;
  for (const auto& [v, prov] : raw) {
    if (!out.empty() && std::abs(v - out.back().value) <= merge_tol * std::max(1.0, v))
      out.back().provenance.push_back(prov);
    else
      out.push_back(LambdaPoint{v, {prov}});
  }
  return out;
}

AdmissibilityReport admissible_frequencies(const std::vector<std::pair<double, int>>& betas,
                                           double int_tol) {
  require_betas(betas);
  if (!(int_tol > 0.0 && int_tol < 0.5))
    fail(ErrorCode::argument, "integer tolerance must lie in (0, 0.5)");
  const int m = static_cast<int>(betas.size());
  AdmissibilityReport rep;
  rep.ratios = Matrix(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) rep.ratios(i, j) = betas[i].first / betas[j].first;

  for (int j0 = 1; j0 <= m; ++j0) {
    bool ok = true;
    for (int j = 1; j <= m; ++j) {
      if (j == j0) continue;
      const double ratio = rep.ratios(j - 1, j0 - 1);
      const int nearest = static_cast<int>(std::lround(ratio));
      if (nearest >= 1 && std::abs(ratio - nearest) <= int_tol) {
        rep.rejections.emplace_back(j0, RatioDiagnostic{j, ratio, nearest});
        ok = false;
      }
    }
    if (ok) rep.admissible.push_back(j0);
  }
  return rep;
}

Window choose_window(const std::vector<std::pair<double, int>>& betas, int j0, double eps_cap,
                     double eps_floor) {
  require_betas(betas);
  if (j0 < 1 || j0 > static_cast<int>(betas.size()))
    fail(ErrorCode::argument, "j0 out of range");
  const double beta0 = betas[j0 - 1].first;
  const double lambda0 = 1.0 / beta0;
  const double beta1 = betas.front().first;

  for (double eps = eps_cap; eps >= eps_floor; eps *= 0.5) {
    const double lo = (1.0 - eps) / beta0;
    const double hi = (1.0 + eps) / beta0;
    bool clean = true;
    const int kmax = static_cast<int>(std::ceil(hi * beta1)) + 1;
    for (size_t j = 0; j < betas.size() && clean; ++j)
      for (int k = 1; k <= kmax && clean; ++k) {
        const double point = k / betas[j].first;
        if (std::abs(point - lambda0) <= 1e-14 * lambda0) continue;  // the center itself
        if (point >= lo && point <= hi) clean = false;
      }
    if (clean) return Window{lo, hi, eps};
  }
  std::ostringstream os;
  os << "resonance crowding: no window around 1/beta_" << j0 << " = " << lambda0
     << " is free of other resonance points down to eps = " << eps_floor;
  fail(ErrorCode::resonance, os.str());
}

MinimalPeriodCheck minimal_period_guarantee(const std::vector<std::pair<double, int>>& betas,
                                            int j0, int k_max, double int_tol) {
  require_betas(betas);
  const auto adm = admissible_frequencies(betas, int_tol);
  if (std::find(adm.admissible.begin(), adm.admissible.end(), j0) == adm.admissible.end())
    fail(ErrorCode::argument, "minimal-period guarantee requires an admissible j0");
  const double beta0 = betas[j0 - 1].first;
  for (int k = 2; k <= k_max; ++k) {
    // 1/(k beta0) lies in the resonance set iff some beta_j / beta0 equals an
    // integer multiple of k; re-derive instead of assuming.
    for (size_t j = 0; j < betas.size(); ++j) {
      const double q = betas[j].first / (k * beta0);
      const int nearest = static_cast<int>(std::lround(q));
      if (nearest >= 1 && std::abs(q - nearest) <= int_tol)
        return MinimalPeriodCheck{false, k};
    }
  }
  return MinimalPeriodCheck{true, k_max};
}

ResonanceReport resonance_report(const SpectralData& spectral, double lambda_max, double int_tol,
                                 double eps_cap) {
  ResonanceReport rep;
  rep.betas = spectral.betas;
  rep.lambda_max = lambda_max;
  rep.lambda_points = lambda_set(rep.betas, lambda_max);
  rep.admissibility = admissible_frequencies(rep.betas, int_tol);
  for (int j0 : rep.admissibility.admissible) {
    ResonanceReport::PerJ0 br;
    br.j0 = j0;
    br.lambda0 = 1.0 / rep.betas[j0 - 1].first;
    br.window = choose_window(rep.betas, j0, eps_cap);
    br.predicted_period = 2.0 * M_PI * br.lambda0;
    br.minimal_period = minimal_period_guarantee(rep.betas, j0, 16, int_tol);
    rep.branches.push_back(br);
  }
  return rep;
}

}  // namespace slct
