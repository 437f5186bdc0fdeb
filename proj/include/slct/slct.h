/* C interface to the slct toolkit.
 *
 * All functions return slct_status; SLCT_OK means success. On failure the
 * thread-local message from slct_last_error() describes what went wrong.
 * Objects returned through out-parameters are owned by the caller and must
 * be released with the matching *_free function. Strings returned through
 * char** out-parameters are released with slct_string_free.
 */
#ifndef SLCT_H
#define SLCT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slct_status {
  SLCT_OK = 0,
  SLCT_ERR_ARGUMENT = 1,    /* bad argument or violated precondition */
  SLCT_ERR_DOMAIN = 2,      /* configuration outside the admissible set */
  SLCT_ERR_CONVERGENCE = 3, /* an iterative solver did not converge */
  SLCT_ERR_PARSE = 4,       /* config / expression / report syntax error */
  SLCT_ERR_HYPOTHESIS = 5,  /* a required hypothesis check failed */
  SLCT_ERR_RESONANCE = 6,   /* resonance crowding or degenerate mode */
  SLCT_ERR_IO = 7,
  SLCT_ERR_INTERNAL = 8
} slct_status;

typedef struct slct_model slct_model;
typedef struct slct_orbit slct_orbit;
typedef struct slct_analysis slct_analysis;

const char* slct_version(void);

/* Message of the most recent failure on this thread; never NULL. */
const char* slct_last_error(void);

void slct_string_free(char* s);

/* ---- potential models ------------------------------------------------ */

slct_status slct_model_lennard_jones(int n_particles, slct_model** out);

/* a_coeffs / b_coeffs hold one value per unordered pair (i < j) in
 * lexicographic order, n (n - 1) / 2 entries each. */
slct_status slct_model_schwarzschild(int n_particles, const double* a_coeffs,
                                     const double* b_coeffs, slct_model** out);
void slct_model_free(slct_model* model);

slct_status slct_model_particles(const slct_model* model, int* out);

/* q has 2 n coordinates (x1, y1, ..., xn, yn). */
slct_status slct_model_energy(const slct_model* model, const double* q, size_t len, double* out);
slct_status slct_model_gradient(const slct_model* model, const double* q, size_t len,
                                double* out /* len */);
slct_status slct_model_hessian(const slct_model* model, const double* q, size_t len,
                               double* out /* len * len, row-major */);

/* ---- critical orbits -------------------------------------------------- */

slct_status slct_orbit_lennard_jones_count(int n_particles, int* out);
slct_status slct_orbit_lennard_jones(int n_particles, int index, slct_orbit** out);
slct_status slct_orbit_refine(const slct_model* model, const double* seed, size_t len,
                              slct_orbit** out);
void slct_orbit_free(slct_orbit* orbit);

slct_status slct_orbit_coords(const slct_orbit* orbit, double* out, size_t len);
slct_status slct_orbit_value(const slct_orbit* orbit, double* out);
slct_status slct_orbit_grad_norm(const slct_orbit* orbit, double* out);

/* ---- analysis pipeline ------------------------------------------------ */

/* mode_override: NULL to keep the config value, else "ambient" or "com". */
slct_status slct_analyze_preset(const char* name, const char* mode_override,
                                slct_analysis** out);
slct_status slct_analyze_file(const char* config_path, const char* mode_override,
                              slct_analysis** out);
void slct_analysis_free(slct_analysis* analysis);

slct_status slct_analysis_report(const slct_analysis* analysis, char** out_text);
slct_status slct_analysis_write_report(const slct_analysis* analysis, const char* path);

/* 0 = all hypotheses hold, 2 = a hypothesis failed (report still valid). */
slct_status slct_analysis_exit_code(const slct_analysis* analysis, int* out);

/* Admissible frequency indices (1-based); *count receives how many exist
 * even when it exceeds cap. */
slct_status slct_analysis_admissible(const slct_analysis* analysis, int* js, size_t cap,
                                     size_t* count);

/* Configured report path from the analysis config; empty string if unset. */
slct_status slct_analysis_report_path(const slct_analysis* analysis, char** out);

/* ---- families ---------------------------------------------------------- */

/* Continue the bifurcating family for the admissible index j0, append its
 * summary to the analysis report, and write per-sample CSVs plus a family
 * summary CSV. trajectory_dir: NULL = the directory configured in the
 * analysis config (or the working directory), "" = skip the CSV exports,
 * anything else = that directory. A human-readable summary is returned
 * through out_summary when non-NULL. */
slct_status slct_family_run(slct_analysis* analysis, int j0, const char* trajectory_dir,
                            char** out_summary);

/* ---- validation + ring calculator -------------------------------------- */

/* names_csv: comma-separated row names, NULL or "" = the full table. */
slct_status slct_validate(const char* names_csv, char** out_table, int* all_pass);

slct_status slct_euler_eval(const char* expression, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* SLCT_H */
