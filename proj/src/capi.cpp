#include "slct/slct.h"

#include "slct/euler_expr.hpp"
#include "slct/pipeline.hpp"
#include "slct/validate.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

using namespace slct;

struct slct_model {
  PotentialModel model;
};

struct slct_orbit {
  CriticalOrbit orbit;
};

struct slct_analysis {
  Analysis analysis;
};

namespace {

thread_local std::string g_last_error = "no error";

slct_status set_error(ErrorCode code, const char* what) {
  g_last_error = what;
  switch (code) {
    case ErrorCode::argument: return SLCT_ERR_ARGUMENT;
    case ErrorCode::domain: return SLCT_ERR_DOMAIN;
    case ErrorCode::convergence: return SLCT_ERR_CONVERGENCE;
    case ErrorCode::parse: return SLCT_ERR_PARSE;
    case ErrorCode::hypothesis: return SLCT_ERR_HYPOTHESIS;
    case ErrorCode::resonance: return SLCT_ERR_RESONANCE;
    case ErrorCode::io: return SLCT_ERR_IO;
    case ErrorCode::internal: return SLCT_ERR_INTERNAL;
  }
  return SLCT_ERR_INTERNAL;
}

template <typename Fn>
slct_status guarded(Fn&& fn) {
  try {
    fn();
    return SLCT_OK;
  } catch (const Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::exception& e) {
    return set_error(ErrorCode::internal, e.what());
  } catch (...) {
    return set_error(ErrorCode::internal, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::argument, what);
}

Configuration to_config(const PotentialModel& model, const double* q, size_t len) {
  require(q != nullptr, "coordinate array is NULL");
  require(len == static_cast<size_t>(model.dim()), "coordinate length must be 2 * particles");
  Vector v(len);
  for (size_t i = 0; i < len; ++i) v[static_cast<int>(i)] = q[i];
  return Configuration(model.particles(), std::move(v));
}

AnalysisConfig apply_mode(AnalysisConfig cfg, const char* mode_override) {
  if (mode_override != nullptr && *mode_override != '\0')
    cfg.options.mode = spectral_mode_from_string(mode_override);
  return cfg;
}

}  // namespace

extern "C" {

const char* slct_version(void) { return "0.1.0"; }

const char* slct_last_error(void) { return g_last_error.c_str(); }

void slct_string_free(char* s) { std::free(s); }

slct_status slct_model_lennard_jones(int n_particles, slct_model** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = new slct_model{PotentialModel::lennard_jones(n_particles)};
  });
}

slct_status slct_model_schwarzschild(int n_particles, const double* a_coeffs,
                                     const double* b_coeffs, slct_model** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    require(a_coeffs != nullptr && b_coeffs != nullptr, "coefficient arrays are NULL");
    const size_t count = static_cast<size_t>(n_particles) * (n_particles - 1) / 2;
    std::vector<double> as(a_coeffs, a_coeffs + count);
    std::vector<double> bs(b_coeffs, b_coeffs + count);
    *out = new slct_model{PotentialModel::schwarzschild(n_particles, as, bs)};
  });
}

void slct_model_free(slct_model* model) { delete model; }

slct_status slct_model_particles(const slct_model* model, int* out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "NULL argument");
    *out = model->model.particles();
  });
}

slct_status slct_model_energy(const slct_model* model, const double* q, size_t len, double* out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "NULL argument");
    *out = model->model.energy(to_config(model->model, q, len));
  });
}

slct_status slct_model_gradient(const slct_model* model, const double* q, size_t len,
                                double* out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "NULL argument");
    const Vector g = model->model.gradient(to_config(model->model, q, len));
    for (int i = 0; i < g.size(); ++i) out[i] = g[i];
  });
}

slct_status slct_model_hessian(const slct_model* model, const double* q, size_t len, double* out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "NULL argument");
    const Matrix h = model->model.hessian(to_config(model->model, q, len));
    for (int r = 0; r < h.rows(); ++r)
      for (int c = 0; c < h.cols(); ++c) out[r * h.cols() + c] = h(r, c);
  });
}

slct_status slct_orbit_lennard_jones_count(int n_particles, int* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = static_cast<int>(lj_equilibria(n_particles).size());
  });
}

slct_status slct_orbit_lennard_jones(int n_particles, int index, slct_orbit** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    auto orbits = lj_equilibria(n_particles);
    require(index >= 0 && index < static_cast<int>(orbits.size()), "orbit index out of range");
    *out = new slct_orbit{std::move(orbits[index])};
  });
}

slct_status slct_orbit_refine(const slct_model* model, const double* seed, size_t len,
                              slct_orbit** out) {
  return guarded([&] {
    require(model != nullptr && out != nullptr, "NULL argument");
    *out = new slct_orbit{refine_critical(model->model, to_config(model->model, seed, len))};
  });
}

void slct_orbit_free(slct_orbit* orbit) { delete orbit; }

slct_status slct_orbit_coords(const slct_orbit* orbit, double* out, size_t len) {
  return guarded([&] {
    require(orbit != nullptr && out != nullptr, "NULL argument");
    const Vector& q = orbit->orbit.q0.coords;
    require(len == static_cast<size_t>(q.size()), "coordinate length mismatch");
    for (int i = 0; i < q.size(); ++i) out[i] = q[i];
  });
}

slct_status slct_orbit_value(const slct_orbit* orbit, double* out) {
  return guarded([&] {
    require(orbit != nullptr && out != nullptr, "NULL argument");
    *out = orbit->orbit.value;
  });
}

slct_status slct_orbit_grad_norm(const slct_orbit* orbit, double* out) {
  return guarded([&] {
    require(orbit != nullptr && out != nullptr, "NULL argument");
    *out = orbit->orbit.grad_norm;
  });
}

slct_status slct_analyze_preset(const char* name, const char* mode_override,
                                slct_analysis** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "NULL argument");
    *out = new slct_analysis{run_analysis(apply_mode(preset_config(name), mode_override))};
  });
}

slct_status slct_analyze_file(const char* config_path, const char* mode_override,
                              slct_analysis** out) {
  return guarded([&] {
    require(config_path != nullptr && out != nullptr, "NULL argument");
    *out = new slct_analysis{run_analysis(apply_mode(load_config(config_path), mode_override))};
  });
}

void slct_analysis_free(slct_analysis* analysis) { delete analysis; }

slct_status slct_analysis_report(const slct_analysis* analysis, char** out_text) {
  return guarded([&] {
    require(analysis != nullptr && out_text != nullptr, "NULL argument");
    *out_text = dup_string(analysis->analysis.report.serialize());
  });
}

slct_status slct_analysis_write_report(const slct_analysis* analysis, const char* path) {
  return guarded([&] {
    require(analysis != nullptr && path != nullptr, "NULL argument");
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io, std::string("cannot open ") + path + " for writing");
    out << analysis->analysis.report.serialize();
  });
}

slct_status slct_analysis_exit_code(const slct_analysis* analysis, int* out) {
  return guarded([&] {
    require(analysis != nullptr && out != nullptr, "NULL argument");
    *out = analysis->analysis.report.exit_code;
  });
}

slct_status slct_analysis_admissible(const slct_analysis* analysis, int* js, size_t cap,
                                     size_t* count) {
  return guarded([&] {
    require(analysis != nullptr && count != nullptr, "NULL argument");
    const auto adm = analysis->analysis.admissible();
    *count = adm.size();
    if (js != nullptr)
      for (size_t i = 0; i < adm.size() && i < cap; ++i) js[i] = adm[i];
  });
}

slct_status slct_analysis_report_path(const slct_analysis* analysis, char** out) {
  return guarded([&] {
    require(analysis != nullptr && out != nullptr, "NULL argument");
    *out = dup_string(analysis->analysis.config.outputs.report_path);
  });
}

slct_status slct_family_run(slct_analysis* analysis, int j0, const char* trajectory_dir,
                            char** out_summary) {
  return guarded([&] {
    require(analysis != nullptr, "NULL argument");
    // NULL = the config's trajectory_dir (falling back to the working
    // directory); an explicit empty string suppresses the CSV exports.
    std::string dir;
    if (trajectory_dir == nullptr) {
      dir = analysis->analysis.config.outputs.trajectory_dir;
      if (dir.empty()) dir = ".";
    } else {
      dir = trajectory_dir;
    }
    const FamilyResult result = run_family(analysis->analysis, j0, dir);
    if (out_summary != nullptr) {
      std::ostringstream os;
      os.precision(10);
      os << "family j0=" << result.j0 << " beta=" << result.beta
         << " predicted period=" << 2.0 * M_PI * result.lambda0 << "\n";
      for (const auto& branch : result.branches) {
        os << "branch " << branch.branch << " (lambda(a) fit: lambda0 + "
           << branch.lambda_quadratic_coeff << " a^2)\n";
        os << "  amplitude      lambda        period        residual     closure      dist\n";
        for (const auto& s : branch.samples) {
          os << "  " << std::scientific;
          os.precision(3);
          os << s.amplitude << "  ";
          os.precision(8);
          os << std::defaultfloat << s.trajectory.lambda << "  " << s.period << "  ";
          os << std::scientific;
          os.precision(2);
          os << s.residual << "  " << s.closure_error << "  " << s.dist_to_orbit << "\n";
          os << std::defaultfloat;
        }
        if (!branch.truncation_note.empty()) os << "  " << branch.truncation_note << "\n";
      }
      for (const auto& w : result.warnings) os << "warning: " << w << "\n";
      *out_summary = dup_string(os.str());
    }
  });
}

slct_status slct_validate(const char* names_csv, char** out_table, int* all_pass) {
  return guarded([&] {
    std::vector<std::string> names;
    if (names_csv != nullptr && *names_csv != '\0') {
      std::istringstream in(names_csv);
      std::string tok;
      while (std::getline(in, tok, ',')) names.push_back(tok);
    }
    const ValidationResult result = run_validation_subset(names);
    if (out_table != nullptr) *out_table = dup_string(result.table());
    if (all_pass != nullptr) *all_pass = result.all_pass ? 1 : 0;
  });
}

slct_status slct_euler_eval(const char* expression, char** out_text) {
  return guarded([&] {
    require(expression != nullptr && out_text != nullptr, "NULL argument");
    *out_text = dup_string(euler_eval(expression).str());
  });
}

}  // extern "C"
