#pragma once

// Explicit multiplicative adversary families for unordered search, t-fold
// search, threshold, and OR: the invariant subspace ladders, the projector
// sets that simultaneously block-diagonalize Gamma and the query operator,
// and every closed-form block spectrum these constructions admit.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qadv/function_spec.hpp"
#include "qadv/linalg.hpp"

namespace qadv {

double binomial(int n, int k);
double falling_factorial(double a, int j);

// One level of a psi-state ladder: uniform superpositions over the inputs
// of a fixed weight consistent with "ones on J", their projections away
// from the previous levels, and an orthonormal basis of the new subspace.
struct FamilyLevel {
  std::vector<std::vector<int>> supports;  // J sets, lex order, 0-based positions
  Matrix raw;            // columns are the psi_J states over X
  Matrix dotted;         // normalized residuals against earlier levels (zero column if dropped)
  RealVector tilde_norms;
  Matrix basis;          // orthonormal basis of the level subspace
  int dim() const { return static_cast<int>(basis.cols()); }
};

struct StateFamily {
  int n = 0;          // ambient string length
  int weight = 0;     // Hamming weight of the supporting inputs
  int fixed_pos = -1; // optional pinned position
  int fixed_val = 0;
  std::vector<FamilyLevel> levels;

  const FamilyLevel& level(int j) const;
  Matrix level_projector(int j) const;

  // Norm shared by every tilde state on level j (falling-factorial rule).
  double tilde_norm_formula(int j) const;
};

// Builds the ladder over the rows of `inputs` (lex-sorted digit strings).
// Levels run j = 0..max_level; levels with no surviving states are empty.
StateFamily build_state_family(const std::vector<std::string>& inputs, int n, int weight,
                               int max_level, int fixed_pos = -1, int fixed_val = 0);

struct GammaWithThreshold {
  Matrix gamma;
  double lambda = 0.0;
  bool degenerate = false;  // q == 1 collapses Gamma to the identity
};

// Gamma = (1-q)|v><v| + q I over the search domain, lambda = q.
GammaWithThreshold search_gamma(int n, double q);

struct SearchBlockNorm {
  double exact = 1.0;       // largest eigenvalue of the 2x2 ratio block
  double asymptotic = 1.0;  // 1 + 2(q-1)/sqrt(q n)
  double gap = 0.0;
  Matrix block_gamma;   // diag(1, q)
  Matrix block_oracle;  // the reflection the query operator induces on the block
};
SearchBlockNorm search_block_norm(int n, double q);

// {2-dim nontrivial block, its orthogonal complement} for the search family.
ProjectorSet search_blocks(int n, int query_index = 0);

struct SubspaceFamily {
  int n = 0, t = 0;
  FunctionSpec spec;
  StateFamily states;                    // plain family of weight t
  std::vector<Matrix> level_projectors;  // per level j = 0..t
  std::vector<int> level_dims;
};
SubspaceFamily tfold_subspaces(int n, int t);

// Gamma = sum_j q^j Pi_{S_j}, lambda = q^{t/2}.
GammaWithThreshold tfold_gamma(const SubspaceFamily& family, double q);

struct TwoDimBlocks {
  int query_index = 0;
  ProjectorSet projectors;        // 2-dim blocks plus trivial rank-1 leftovers
  std::vector<int> block_level;   // level per projector, -1 for trivial
  std::vector<double> alpha, beta;  // mixing coefficients per level j = 0..t-1
  std::vector<double> scale;        // norm of the index-shift map per level
  std::vector<Matrix> basis_zero;   // phi columns (queried bit 0) per level
  std::vector<Matrix> basis_one;    // images under the level unitary per level
};
TwoDimBlocks tfold_blocks(int n, int t, int query_index = 0);

// Eigenvalues 1 + 2 a^2 b^2 (q-1)^2/q +- 2 a b ((q-1)/q) sqrt((a^2+b^2 q)(b^2+a^2 q)).
std::pair<double, double> two_dim_ratio_eigs(double alpha, double beta, double q);

struct BlockEigenvalues {
  double closed_low = 1.0, closed_high = 1.0;
  double numeric_low = 1.0, numeric_high = 1.0;
  double max_gap = 0.0;
  double alpha = 0.0, beta = 0.0;
};
BlockEigenvalues tfold_block_eigs(int n, int t, double q, int j);

struct EtaBound {
  double numeric = 0.0;
  double binomial_bound = 0.0;     // C(n, t/2) / C(n, t); defined for even t
  double exponential_bound = 0.0;  // 2^{-t/2}
  bool t_even = false;
  bool exponential_applicable = false;  // t <= n / (4e)
};
EtaBound tfold_eta_bound(int n, int t, double q = 2.0);

struct ThresholdConstruction {
  int n = 0, t = 0, cutoff = 0;  // cutoff = ceil(t/2), the good/bad exponent split
  FunctionSpec spec;
  StateFamily low;   // weight t-1
  StateFamily high;  // weight t
  std::vector<Matrix> plus_projectors;   // j = 0..t-1
  std::vector<Matrix> minus_projectors;  // j = 0..t; last is level t of `high`
  GammaWithThreshold gamma;
};
ThresholdConstruction threshold_gamma(int n, int t, double q);

struct ThresholdBlocks {
  int query_index = 0;
  ProjectorSet projectors;
  std::vector<int> block_level;  // -1 for the rank-1 leftovers
  std::vector<int> block_dim;
};
ThresholdBlocks threshold_blocks(int n, int t, int query_index = 0);

struct ThresholdBlockMatrices {
  Matrix u, g, z;  // 4x4 model of one block in the split-state basis
  double alpha0 = 0, beta0 = 0, alpha1 = 0, beta1 = 0;
  Matrix numeric_gamma_block;   // measured over X
  Matrix numeric_oracle_block;
  Matrix numeric_ratio_block;   // block of Gamma_1 Gamma^{-1}
  double gamma_gap = 0.0;       // ||u g u* - measured||
  double oracle_gap = 0.0;      // ||z - measured||
  double ratio_gap = 0.0;       // model ratio vs measured ratio
};
ThresholdBlockMatrices threshold_block_matrices(int n, int t, double q, int j);

struct ThresholdHjReport {
  Matrix h;  // 2x2 coupling block
  double norm = 0.0;
  double direct_norm = 0.0;       // ||(u g u*) o D1|| computed without the swap
  double swap_residual = 0.0;     // reassembled anti-diagonal form vs direct
  double corollary_quantity = 0;  // 2 ||Gamma^{(j)} o D_1|| / lambda_min(Gamma^{(j)})
  double bound_first_term = 0.0;  // 2 (q-1) sqrt(2t/n)
  double skew = 0.0;              // |alpha1 beta0 - alpha0 beta1|
  double skew_scaled = 0.0;       // skew * sqrt(t n)
};
ThresholdHjReport threshold_hj(int n, int t, double q, int j);

// Threshold with t = 1; lambda = q.
GammaWithThreshold or_gamma(int n, double q);

struct OrBlockEigs {
  double beta = 0.0;         // mixing coefficient measured from the construction
  double gamma_coeff = 0.0;  // (q-1)^2/(2q) (2 beta^2 - beta^4)
  std::array<double, 3> closed{};   // ascending
  std::array<double, 3> numeric{};  // ascending
  double max_gap = 0.0;
  double nontrivial_product = 0.0;  // of the two non-unit closed-form eigenvalues
  double asymptotic = 0.0;          // 1 + 2(q-1)/sqrt(q n)
  Matrix u, g, z;  // 3x3 model
};
OrBlockEigs or_block_eigs(int n, double q);

}  // namespace qadv
