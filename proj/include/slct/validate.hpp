#pragma once

#include "slct/pipeline.hpp"

#include <string>
#include <vector>

namespace slct {

/// One expectation about a built-in preset. The expectations are plain data
/// so that callers (and tests) can modify a copy and watch the row fail.
struct ValidationRow {
  enum class Kind {
    energy,           // expected = {value}
    spectrum,         // expected = {value, mult, value, mult, ...} for the ambient spectrum
    spectrum_poly,    // expected = polynomial coefficients, leading first; the
                      // nonzero ambient eigenvalues must match its real roots
    admissible,       // ints = the exact admissible j0 list
    certificates,     // every certificate: changed, r+ - r- = mult, sign product < 0
    triangle_sides,   // expected = {r12, r13, r23} of the refined orbit
    family_period,    // ints = {j0, amplitude_count, expected_branches},
                      // expected = {target_period, period_tol, amp_lo, amp_hi,
                      //             period_upper_bound (0 = none)}
    hypothesis_failure  // exit code 2, no certificates
  };

  std::string name;
  std::string preset;
  Kind kind = Kind::energy;
  std::vector<double> expected;
  std::vector<int> ints;
  double tol = 0.0;
};

struct ValidationOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationResult {
  std::vector<ValidationOutcome> rows;
  bool all_pass = false;
  std::string table() const;
};

std::vector<ValidationRow> builtin_validation_rows();

ValidationResult run_validation(const std::vector<ValidationRow>& rows);

/// Run the built-in rows, optionally restricted to the given names.
ValidationResult run_validation_subset(const std::vector<std::string>& names = {});

/// Real roots of a polynomial (coefficients leading first) via the companion
/// matrix; errors if any root has a significant imaginary part.
std::vector<double> real_polynomial_roots(const std::vector<double>& coeffs,
                                          double imag_tol = 1e-9);

}  // namespace slct
