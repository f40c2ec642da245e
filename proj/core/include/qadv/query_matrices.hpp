#pragma once

// The standard matrices attached to a finite function in the quantum query
// model: difference matrices D_i, diagonal phase unitaries O_{i,p}, and the
// output projectors F_z.  Diagonal matrices are kept as their diagonals.

#include <vector>

#include "qadv/function_spec.hpp"
#include "qadv/linalg.hpp"

namespace qadv {

struct QueryMatrices {
  int n = 0;
  int sigma = 0;
  std::vector<Matrix> difference;            // difference[i], i in [0, n)
  std::vector<std::vector<Vector>> phase;    // phase[i][p], diagonal of O_{i,p}
  std::vector<Vector> output_proj;           // output_proj[z], 0/1 diagonal per output letter

  Matrix phase_dense(int i, int p) const;
  Matrix output_dense(int z) const;

  // conj(O_{i,p}) * G * O_{i,p} via the diagonal, no dense products.
  Matrix conjugate_by_phase(const Matrix& g, int i, int p) const;
};

QueryMatrices build_query_matrices(const FunctionSpec& spec);

struct DifferenceIdentity {
  double residual;
  bool pass;
};

// Residual of D_i against the geometric phase sum
// Y_{i,0} - (1/sigma) * sum_p Y_{i,p}, with Y_{i,p} = O_{i,p}* E O_{i,p}.
DifferenceIdentity verify_difference_identity(const FunctionSpec& spec, int i,
                                              double tol = 1e-12);

}  // namespace qadv
