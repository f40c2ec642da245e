#include "qadv/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace qadv {

bool is_finite(const Matrix& m) {
  return m.allFinite();
}

double hermiticity_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

Matrix HermitianEigenSystem::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

Matrix HermitianEigenSystem::eigenspace(double lo, double hi) const {
  std::vector<Eigen::Index> picked;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    if (eigenvalues(k) >= lo && eigenvalues(k) <= hi) picked.push_back(k);
  }
  Matrix basis(eigenvectors.rows(), static_cast<Eigen::Index>(picked.size()));
  for (Eigen::Index c = 0; c < basis.cols(); ++c) basis.col(c) = eigenvectors.col(picked[c]);
  return basis;
}

Matrix HermitianEigenSystem::band_projector(double lo, double hi) const {
  const Matrix basis = eigenspace(lo, hi);
  if (basis.cols() == 0) return Matrix::Zero(eigenvectors.rows(), eigenvectors.rows());
  return basis * basis.adjoint();
}

HermitianEigenSystem hermitian_eig(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) fail(ErrorCode::ShapeMismatch, "matrix must be square");
  if (!is_finite(m)) fail(ErrorCode::InvariantViolation, "matrix has non-finite entries");
  const double scale = std::max(1.0, m.norm());
  if (hermiticity_residual(m) > tol * scale) {
    fail(ErrorCode::NonHermitian, "asymmetry " + std::to_string(hermiticity_residual(m)) +
                                      " exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) fail(ErrorCode::NonConvergent, "eigensolver did not converge");
  HermitianEigenSystem sys;
  sys.eigenvalues = solver.eigenvalues();
  sys.eigenvectors = solver.eigenvectors();
  return sys;
}

double spectral_norm(const Matrix& m) {
  if (!is_finite(m)) fail(ErrorCode::InvariantViolation, "matrix has non-finite entries");
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols()) {
    const double scale = std::max(1.0, m.norm());
    if (hermiticity_residual(m) <= 1e-13 * scale) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
      if (solver.info() == Eigen::Success) {
        return solver.eigenvalues().cwiseAbs().maxCoeff();
      }
    }
  }
  // General case: largest eigenvalue of the Gram matrix.
  const Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  if (solver.info() != Eigen::Success) fail(ErrorCode::NonConvergent, "eigensolver did not converge");
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

Matrix pd_inverse_sqrt(const Matrix& m, double tol) {
  const HermitianEigenSystem sys = hermitian_eig(m, tol);
  const double scale = std::max(std::abs(sys.max()), std::abs(sys.min()));
  if (sys.min() <= tol * scale) {
    fail(ErrorCode::NotPositiveDefinite,
         "smallest eigenvalue " + std::to_string(sys.min()) + " not positive");
  }
  RealVector inv_sqrt = sys.eigenvalues.cwiseSqrt().cwiseInverse();
  return sys.eigenvectors * inv_sqrt.asDiagonal() * sys.eigenvectors.adjoint();
}

double relative_norm(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    fail(ErrorCode::ShapeMismatch, "operands must be square and of equal size");
  }
  const double a_scale = std::max(1.0, a.norm());
  if (hermiticity_residual(a) > tol * a_scale) {
    fail(ErrorCode::NonHermitian, "first operand not Hermitian");
  }
  const Matrix b_inv_sqrt = pd_inverse_sqrt(b, tol);
  const HermitianEigenSystem sysa = hermitian_eig(a, tol);
  if (sysa.min() <= tol * std::max(std::abs(sysa.max()), 1.0)) {
    fail(ErrorCode::NotPositiveDefinite, "first operand not positive definite");
  }
  const Matrix conjugated = b_inv_sqrt * a * b_inv_sqrt;
  // Hermitian by construction; take the largest eigenvalue directly.
  Eigen::SelfAdjointEigenSolver<Matrix> solver((conjugated + conjugated.adjoint()) / 2.0);
  return solver.eigenvalues().maxCoeff();
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::ShapeMismatch, "entrywise product needs equal shapes");
  }
  return a.cwiseProduct(b);
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::string ProjectorSet::label(int k) const {
  if (k >= 0 && k < static_cast<int>(labels.size())) return labels[k];
  return "#" + std::to_string(k);
}

ProjectorSetReport validate_projector_set(const ProjectorSet& set, double tol) {
  ProjectorSetReport report;
  auto add = [&](const std::string& name, double residual) {
    const bool ok = residual <= tol;
    report.checks.push_back({name, residual, ok});
    report.max_residual = std::max(report.max_residual, residual);
    report.pass = report.pass && ok;
  };

  if (set.projectors.empty()) {
    report.checks.push_back({"nonempty", 1.0, false});
    report.pass = false;
    return report;
  }
  const int dim = set.dimension();
  for (const auto& p : set.projectors) {
    if (p.rows() != dim || p.cols() != dim) {
      fail(ErrorCode::ShapeMismatch, "projectors must share one square dimension");
    }
  }
  for (int k = 0; k < set.size(); ++k) {
    const Matrix& p = set.projectors[k];
    add("hermitian[" + set.label(k) + "]", spectral_norm(p - p.adjoint()));
    add("idempotent[" + set.label(k) + "]", spectral_norm(p * p - p));
  }
  for (int k = 0; k < set.size(); ++k) {
    for (int l = k + 1; l < set.size(); ++l) {
      add("orthogonal[" + set.label(k) + "," + set.label(l) + "]",
          spectral_norm(set.projectors[k] * set.projectors[l]));
    }
  }
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& p : set.projectors) sum += p;
  add("complete", spectral_norm(sum - Matrix::Identity(dim, dim)));
  return report;
}

OrthonormalBasis orthonormalize(const Matrix& vectors, double drop_tol) {
  OrthonormalBasis out;
  out.basis = Matrix(vectors.rows(), vectors.cols());
  int kept = 0;
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Vector v = vectors.col(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < kept; ++k) {
        v -= out.basis.col(k).dot(v) * out.basis.col(k);
      }
    }
    const double norm = v.norm();
    if (norm <= drop_tol) continue;
    out.basis.col(kept++) = v / norm;
  }
  out.basis.conservativeResize(Eigen::NoChange, kept);
  out.rank = kept;
  return out;
}

}  // namespace qadv
