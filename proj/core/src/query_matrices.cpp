#include "qadv/query_matrices.hpp"

#include <cmath>
#include <numbers>

namespace qadv {

Matrix QueryMatrices::phase_dense(int i, int p) const {
  return Matrix(phase.at(i).at(p).asDiagonal());
}

Matrix QueryMatrices::output_dense(int z) const {
  return Matrix(output_proj.at(z).asDiagonal());
}

Matrix QueryMatrices::conjugate_by_phase(const Matrix& g, int i, int p) const {
  const Vector& d = phase.at(i).at(p);
  Matrix out = g;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      out(r, c) *= std::conj(d(r)) * d(c);
    }
  }
  return out;
}

QueryMatrices build_query_matrices(const FunctionSpec& spec) {
  spec.validate();
  const int m = spec.size();
  QueryMatrices q;
  q.n = spec.n;
  q.sigma = spec.sigma;

  q.difference.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    Matrix d = Matrix::Zero(m, m);
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) {
        if (spec.digit(x, i) != spec.digit(y, i)) d(x, y) = 1.0;
      }
    }
    q.difference.push_back(std::move(d));
  }

  const Complex root = std::exp(Complex(0.0, 2.0 * std::numbers::pi / spec.sigma));
  q.phase.assign(spec.n, std::vector<Vector>(spec.sigma));
  for (int i = 0; i < spec.n; ++i) {
    for (int p = 0; p < spec.sigma; ++p) {
      Vector d(m);
      for (int x = 0; x < m; ++x) {
        d(x) = std::pow(root, p * spec.digit(x, i));
      }
      q.phase[i][p] = std::move(d);
    }
  }

  q.output_proj.assign(spec.outputs.size(), Vector());
  for (size_t z = 0; z < spec.outputs.size(); ++z) {
    Vector d = Vector::Zero(m);
    for (int x = 0; x < m; ++x) {
      if (spec.values[x] == static_cast<int>(z)) d(x) = 1.0;
    }
    q.output_proj[z] = std::move(d);
  }
  return q;
}

DifferenceIdentity verify_difference_identity(const FunctionSpec& spec, int i, double tol) {
  if (i < 0 || i >= spec.n) {
    fail(ErrorCode::IndexOutOfRange,
         "query index " + std::to_string(i) + " outside [0, " + std::to_string(spec.n) + ")");
  }
  const QueryMatrices q = build_query_matrices(spec);
  const int m = spec.size();
  const Matrix ones = Matrix::Constant(m, m, 1.0);
  Matrix sum = Matrix::Zero(m, m);
  for (int p = 0; p < spec.sigma; ++p) {
    sum += q.conjugate_by_phase(ones, i, p);
  }
  const Matrix lhs = q.difference[i];
  const Matrix rhs = ones - sum / static_cast<double>(spec.sigma);
  const double residual = spectral_norm(lhs - rhs);
  return {residual, residual <= tol};
}

}  // namespace qadv
