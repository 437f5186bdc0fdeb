#include "slct/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace slct {

namespace {

CriticalOrbit construct_orbit(const PotentialModel& model, const AnalysisConfig& config) {
  RefineOptions refine;
  refine.tol = config.options.grad_tol;
  if (config.seed) return refine_critical(model, Configuration(config.problem.n, *config.seed), refine);
  // no explicit seed: use the built-in construction for the problem kind
  if (config.problem.type == ProblemSpec::Type::schwarzschild && config.problem.n == 3) {
    std::vector<PairProfile> profiles;
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j) {
        const auto& [a, b] = config.problem.schwarzschild_pairs.at({i, j});
        profiles.push_back(PairProfile::schwarzschild(a, b));
      }
    return schwarzschild_equilibrium(profiles);
  }
  if (config.problem.type == ProblemSpec::Type::lennard_jones &&
      (config.problem.n == 2 || config.problem.n == 3)) {
    // the last built-in equilibrium is the minimal one for both n
    auto orbits = lj_equilibria(config.problem.n);
    return config.problem.n == 2 ? orbits.front() : orbits[3];
  }
  fail(ErrorCode::argument,
       "no seed given and no built-in construction for this problem; set `seed`");
}

OrbitSummary summarize(const CriticalOrbit& orbit) {
  OrbitSummary s;
  s.n = orbit.q0.n;
  s.coords = orbit.q0.coords;
  s.value = 0.0;  // filled by caller with the model energy
  s.grad_norm = orbit.grad_norm;
  s.com_zero = orbit.com_zero;
  return s;
}

}  // namespace

const BifurcationCertificate* Analysis::certificate_for(int j0) const {
  for (const auto& cert : certificates)
    if (cert.j0 == j0) return &cert;
  return nullptr;
}

std::vector<int> Analysis::admissible() const {
  return resonance ? resonance->admissibility.admissible : std::vector<int>{};
}

Analysis run_analysis(const AnalysisConfig& config) {
  config.options.validate();
  PotentialModel model = config.problem.build_model();

  Analysis a{.config = config, .model = model};
  a.orbit = construct_orbit(model, config);

  AnalyzeOptions spectral_opts;
  spectral_opts.cluster_tol = config.options.cluster_tol;
  a.spectral_ambient = analyze_hessian(model, a.orbit, SpectralMode::ambient, spectral_opts);
  a.spectral_reduced = analyze_hessian(model, a.orbit, SpectralMode::com_reduced, spectral_opts);

  a.isolation = isolation_scan(model, a.orbit, config.options.isolation_radius,
                               config.options.isolation_samples,
                               /*com_zero=*/config.options.mode != SpectralMode::ambient);
  a.hypotheses = check_hypotheses(a.chosen_spectral(), a.isolation);

  std::vector<std::string> warnings;
  for (const auto& w : a.spectral_ambient.warnings) warnings.push_back("spectral.ambient: " + w);
  for (const auto& w : a.spectral_reduced.warnings)
    warnings.push_back("spectral.com_reduced: " + w);

  if (a.hypotheses.all()) {
    const auto& spectral = a.chosen_spectral();
    double lambda_max = config.options.lambda_max;
    if (lambda_max == 0.0) lambda_max = 3.5 / spectral.betas.back().first;
    a.resonance =
        resonance_report(spectral, lambda_max, config.options.int_tol, config.options.eps_cap);
    for (auto& branch : a.resonance->branches) {
      // shrink the window until the truncation margin is positive
      for (;;) {
        try {
          a.certificates.push_back(bifurcation_certificate(spectral, branch.j0, branch.window));
          break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::resonance || branch.window.epsilon <= 1e-12) throw;
          branch.window = choose_window(spectral.betas, branch.j0,
                                        branch.window.epsilon * 0.5);
          std::ostringstream os;
          os << "window for j0=" << branch.j0 << " shrunk to eps=" << branch.window.epsilon
             << " to keep the truncation margin positive";
          warnings.push_back(os.str());
        }
      }
    }
  }

  // assemble the report
  AnalysisReport& rep = a.report;
  rep.case_name = config.name;
  rep.problem = to_string(config.problem.type) + " n=" + std::to_string(config.problem.n);
  rep.mode = config.options.mode;
  rep.exit_code = a.hypotheses.all() ? 0 : 2;
  rep.orbit = summarize(a.orbit);
  rep.orbit.value = a.orbit.value;
  rep.spectral_ambient = a.spectral_ambient;
  rep.spectral_reduced = a.spectral_reduced;
  rep.isolation = a.isolation;
  rep.hypotheses = a.hypotheses;
  rep.resonance = a.resonance;
  rep.certificates = a.certificates;
  rep.warnings = warnings;
  return a;
}

FamilyResult run_family(Analysis& analysis, int j0, const std::string& trajectory_dir,
                        std::vector<double> amplitudes) {
  if (!analysis.hypotheses.all())
    fail(ErrorCode::hypothesis,
         "families require all hypotheses to hold; analysis of '" + analysis.config.name +
             "' reports a failure");
  const auto adm = analysis.admissible();
  if (std::find(adm.begin(), adm.end(), j0) == adm.end()) {
    std::ostringstream os;
    os << "j0=" << j0 << " is not admissible; admissible indices:";
    for (int j : adm) os << " " << j;
    fail(ErrorCode::argument, os.str());
  }

  const auto& opts = analysis.config.options;
  if (amplitudes.empty())
    amplitudes = log_amplitude_grid(opts.amplitude_lo, opts.amplitude_hi, opts.amplitude_count);

  ContinuationOptions copts;
  copts.modes = opts.modes;
  copts.residual_tol = opts.residual_tol;
  FamilyResult result =
      continue_family(analysis.model, analysis.orbit, analysis.chosen_spectral(), j0, amplitudes,
                      copts, analysis.certificate_for(j0));

  for (const auto& branch : result.branches) {
    FamilySummary summary;
    summary.j0 = j0;
    summary.branch = branch.branch;
    summary.lambda_quadratic_coeff = branch.lambda_quadratic_coeff;
    summary.truncation_note = branch.truncation_note;
    for (const auto& s : branch.samples)
      summary.rows.push_back(FamilySummaryRow{s.amplitude, s.trajectory.lambda, s.period,
                                              s.residual, s.closure_error, s.dist_to_orbit,
                                              s.minimal_period_ok});
    analysis.report.families.push_back(std::move(summary));

    if (!trajectory_dir.empty()) {
      std::filesystem::create_directories(trajectory_dir);
      const std::string stem = analysis.config.name + "-j" + std::to_string(j0) + "-b" +
                               std::to_string(branch.branch);
      export_family_csv(trajectory_dir + "/" + stem + "-family.csv", branch);
      for (size_t i = 0; i < branch.samples.size(); ++i)
        export_trajectory_csv(trajectory_dir + "/" + stem + "-a" + std::to_string(i) + ".csv",
                              analysis.model, branch.samples[i]);
    }
  }
  for (const auto& w : result.warnings) analysis.report.warnings.push_back(w);
  return result;
}

}  // namespace slct
