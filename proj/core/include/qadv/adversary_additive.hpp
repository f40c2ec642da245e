#pragma once

// Additive adversary matrices: validation of the zero pattern, the
// ADV lower-bound value, and principal eigenvectors with deterministic
// tie-breaking.

#include <utility>
#include <vector>

#include "qadv/function_spec.hpp"
#include "qadv/linalg.hpp"

namespace qadv {

struct AdditiveAdversary {
  Matrix gamma;         // Hermitian over X, zero where outputs agree
  double epsilon = 0.0; // allowed error, in [0, 1/2)
};

struct AdditiveValidationReport {
  double hermiticity_residual = 0.0;
  bool nonzero = false;
  // (row, col) pairs with f(x) = f(y) but |gamma[x,y]| above tolerance.
  std::vector<std::pair<int, int>> zero_pattern_violations;
  bool pass = false;
};

AdditiveValidationReport validate_additive(const Matrix& gamma, const FunctionSpec& spec,
                                           double tol = kDefaultTol);

struct AdvValue {
  double value = 0.0;           // epsilon_factor * norm_ratio, clamped at 0
  double norm_ratio = 0.0;      // ||Gamma|| / max_i ||Gamma o D_i||
  double epsilon_factor = 0.0;  // before clamping
  double gamma_norm = 0.0;
  double max_hadamard_norm = 0.0;
  bool boolean_output = false;  // strengthened factor used
  bool clamped = false;         // epsilon factor was <= 0
};

// The ADV_epsilon value.  For Boolean-output functions the strengthened
// error factor 1/2 - sqrt(eps(1-eps)) applies; otherwise the generic
// 1/2 - sqrt(eps(1-eps)) - eps.  A non-positive factor clamps the value to
// zero and sets `clamped`.
AdvValue adv_value(const AdditiveAdversary& adv, const FunctionSpec& spec,
                   double tol = kDefaultTol);

// Unit eigenvector for the eigenvalue of largest magnitude.  Inside a
// degenerate (in magnitude) eigenspace the vector with maximal overlap with
// the uniform vector is returned, deterministically.
Vector principal_eigenvector(const Matrix& gamma, double tol = kDefaultTol);

// Ready-made valid adversary matrices for tests and the CLI.
Matrix star_gamma(const FunctionSpec& spec);             // all-zeros input vs its weight-1 neighbours
Matrix distinct_outputs_gamma(const FunctionSpec& spec); // 1 wherever f(x) != f(y)
Matrix hamming_gamma(const FunctionSpec& spec);          // f(x) != f(y) and Hamming distance 1

}  // namespace qadv
