#include "qadv/adversary_additive.hpp"

#include <algorithm>
#include <cmath>

#include "qadv/query_matrices.hpp"

namespace qadv {

AdditiveValidationReport validate_additive(const Matrix& gamma, const FunctionSpec& spec,
                                           double tol) {
  if (gamma.rows() != spec.size() || gamma.cols() != spec.size()) {
    fail(ErrorCode::ShapeMismatch, "adversary matrix must be square over X");
  }
  AdditiveValidationReport report;
  report.hermiticity_residual = hermiticity_residual(gamma);
  const double scale = std::max(1.0, gamma.norm());
  report.nonzero = gamma.norm() > tol;
  for (int x = 0; x < spec.size(); ++x) {
    for (int y = 0; y < spec.size(); ++y) {
      if (spec.values[x] == spec.values[y] && std::abs(gamma(x, y)) > tol * scale) {
        report.zero_pattern_violations.emplace_back(x, y);
      }
    }
  }
  report.pass = report.nonzero && report.zero_pattern_violations.empty() &&
                report.hermiticity_residual <= tol * scale;
  return report;
}

AdvValue adv_value(const AdditiveAdversary& adv, const FunctionSpec& spec, double tol) {
  const auto report = validate_additive(adv.gamma, spec, tol);
  if (!report.pass) fail(ErrorCode::InvariantViolation, "invalid additive adversary matrix");
  if (adv.epsilon < 0.0 || adv.epsilon > 0.5) {
    fail(ErrorCode::BadParameters, "epsilon must lie in [0, 1/2]");
  }

  const QueryMatrices q = build_query_matrices(spec);
  AdvValue out;
  out.gamma_norm = spectral_norm(adv.gamma);
  for (int i = 0; i < spec.n; ++i) {
    out.max_hadamard_norm =
        std::max(out.max_hadamard_norm, spectral_norm(hadamard(adv.gamma, q.difference[i])));
  }
  if (out.max_hadamard_norm <= tol) {
    fail(ErrorCode::ZeroDenominator, "Gamma o D_i vanishes for every i");
  }
  out.norm_ratio = out.gamma_norm / out.max_hadamard_norm;

  const double eps = adv.epsilon;
  const double spread = std::sqrt(eps * (1.0 - eps));
  out.boolean_output = spec.boolean_output();
  out.epsilon_factor = out.boolean_output ? 0.5 - spread : 0.5 - spread - eps;
  if (out.epsilon_factor <= 0.0) {
    out.clamped = true;
    out.value = 0.0;
  } else {
    out.value = out.epsilon_factor * out.norm_ratio;
  }
  return out;
}

Vector principal_eigenvector(const Matrix& gamma, double tol) {
  const HermitianEigenSystem sys = hermitian_eig(gamma, tol);
  const double top = sys.eigenvalues.cwiseAbs().maxCoeff();
  if (top <= tol) fail(ErrorCode::InvariantViolation, "matrix is numerically zero");

  // Collect the eigenvectors whose |eigenvalue| ties with the maximum, then
  // pick the direction closest to the uniform vector.
  const Eigen::Index dim = gamma.rows();
  std::vector<Eigen::Index> picked;
  for (Eigen::Index k = 0; k < sys.eigenvalues.size(); ++k) {
    if (std::abs(sys.eigenvalues(k)) >= top - tol * top) picked.push_back(k);
  }
  Matrix basis(dim, static_cast<Eigen::Index>(picked.size()));
  for (Eigen::Index c = 0; c < basis.cols(); ++c) basis.col(c) = sys.eigenvectors.col(picked[c]);

  const Vector uniform = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  Vector projected = basis * (basis.adjoint() * uniform);
  if (projected.norm() > tol) return projected / projected.norm();
  // Uniform vector orthogonal to the whole eigenspace: fall back to the
  // first basis vector with its largest entry rotated to be real positive.
  Vector v = basis.col(0);
  Eigen::Index argmax = 0;
  v.cwiseAbs().maxCoeff(&argmax);
  const Complex a = v(argmax);
  if (std::abs(a) > 0) v *= std::conj(a) / std::abs(a);
  return v;
}

Matrix star_gamma(const FunctionSpec& spec) {
  const int center = spec.find_input(std::string(spec.n, '0'));
  if (center < 0) {
    fail(ErrorCode::BadParameters, "star adversary needs the all-zeros input in X");
  }
  Matrix gamma = Matrix::Zero(spec.size(), spec.size());
  for (int x = 0; x < spec.size(); ++x) {
    if (x == center || spec.values[x] == spec.values[center]) continue;
    int distance = 0;
    for (int pos = 0; pos < spec.n; ++pos) distance += spec.digit(x, pos) != 0;
    if (distance == 1) {
      gamma(center, x) = 1.0;
      gamma(x, center) = 1.0;
    }
  }
  return gamma;
}

Matrix distinct_outputs_gamma(const FunctionSpec& spec) {
  Matrix gamma = Matrix::Zero(spec.size(), spec.size());
  for (int x = 0; x < spec.size(); ++x) {
    for (int y = 0; y < spec.size(); ++y) {
      if (spec.values[x] != spec.values[y]) gamma(x, y) = 1.0;
    }
  }
  return gamma;
}

Matrix hamming_gamma(const FunctionSpec& spec) {
  Matrix gamma = Matrix::Zero(spec.size(), spec.size());
  for (int x = 0; x < spec.size(); ++x) {
    for (int y = 0; y < spec.size(); ++y) {
      if (spec.values[x] == spec.values[y]) continue;
      int distance = 0;
      for (int pos = 0; pos < spec.n && distance < 2; ++pos) {
        distance += spec.digit(x, pos) != spec.digit(y, pos);
      }
      if (distance == 1) gamma(x, y) = 1.0;
    }
  }
  return gamma;
}

}  // namespace qadv
