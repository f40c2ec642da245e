#pragma once

// Dense complex linear algebra shared by all adversary-bound computations:
// Hermitian eigendecomposition, spectral and relative operator norms,
// Hadamard/Kronecker products, projector-set validation and deterministic
// Gram-Schmidt orthonormalization.
//
// Everything is double precision and dense.  Intended scale is a few
// thousand rows at most; no sparse or iterative paths.

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "qadv/errors.hpp"

namespace qadv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default relative tolerance (scaled by the operand's spectral norm).
inline constexpr double kDefaultTol = 1e-9;

// Drop threshold for near-zero vectors in Gram-Schmidt.
inline constexpr double kRankTol = 1e-10;

bool is_finite(const Matrix& m);

// Frobenius residual of M - M*; cheap upper bound on the spectral one.
double hermiticity_residual(const Matrix& m);

struct HermitianEigenSystem {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns, col(k) pairs with eigenvalues[k]

  Matrix reconstruct() const;

  // Orthonormal basis of the direct sum of eigenspaces with eigenvalue in
  // [lo, hi].  Subspace extraction is always banded like this, never by
  // index, so degenerate clusters stay together.
  Matrix eigenspace(double lo, double hi) const;

  // Projector onto the same band.
  Matrix band_projector(double lo, double hi) const;

  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

// Spectral decomposition of a Hermitian matrix.  The input must be square
// and Hermitian within tol * ||M||; the result reconstructs M to the same
// accuracy.
HermitianEigenSystem hermitian_eig(const Matrix& m, double tol = kDefaultTol);

// Largest singular value.  Equals max |eigenvalue| for Hermitian input.
double spectral_norm(const Matrix& m);

// ||B^{-1/2} A B^{-1/2}|| for positive definite A, B; by similarity this is
// the largest eigenvalue of A B^{-1}, which is real and positive.
double relative_norm(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

// Inverse square root of a positive definite matrix via eigendecomposition.
// Eigenvalues at or below tol * ||M|| are rejected, never clamped.
Matrix pd_inverse_sqrt(const Matrix& m, double tol = kDefaultTol);

Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix kronecker(const Matrix& a, const Matrix& b);

struct ProjectorSet {
  std::vector<Matrix> projectors;
  std::vector<std::string> labels;  // optional, parallel to projectors

  int size() const { return static_cast<int>(projectors.size()); }
  int dimension() const {
    return projectors.empty() ? 0 : static_cast<int>(projectors.front().rows());
  }
  std::string label(int k) const;
};

struct ProjectorSetReport {
  struct Entry {
    std::string name;
    double residual = 0.0;
    bool pass = true;
  };
  std::vector<Entry> checks;
  double max_residual = 0.0;
  bool pass = true;
};

// Checks Hermiticity and idempotence of each projector, pairwise
// orthogonality, and completeness (sum equals identity).
ProjectorSetReport validate_projector_set(const ProjectorSet& set, double tol = kDefaultTol);

struct OrthonormalBasis {
  Matrix basis;  // orthonormal columns spanning the input's column span
  int rank = 0;
};

// Modified Gram-Schmidt with one re-orthogonalization pass, processing
// columns in the given order.  Columns whose residual norm is at most
// drop_tol are dropped and the surviving count reported as rank.
OrthonormalBasis orthonormalize(const Matrix& vectors, double drop_tol = kRankTol);

}  // namespace qadv
