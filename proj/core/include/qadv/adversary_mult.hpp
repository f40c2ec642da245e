#pragma once

// Multiplicative adversary matrices: validation and rescaling to smallest
// eigenvalue 1, bad/good spectral projectors, eta, per-query ratio norms,
// the MADV value, and the block-diagonal route to the same quantities.

#include <optional>
#include <string>
#include <vector>

#include "qadv/function_spec.hpp"
#include "qadv/linalg.hpp"
#include "qadv/query_matrices.hpp"

namespace qadv {

struct MultiplicativeAdversary {
  Matrix gamma;                 // positive definite, smallest eigenvalue 1
  HermitianEigenSystem eigen;   // of the rescaled gamma
  double rescale_factor = 1.0;  // original smallest eigenvalue divided out
  double norm = 0.0;            // ||gamma||

  // Set once a threshold is attached.
  double lambda = 0.0;
  Matrix projector_bad, projector_good;
  int bad_rank = 0;
  int boundary_flagged = 0;  // eigenvalues within the tolerance band of lambda
  double eta = -1.0;         // set by compute_eta
};

// Partial construction: checks Hermiticity and positive definiteness and
// rescales so the smallest eigenvalue is exactly 1 (factor recorded).
MultiplicativeAdversary validate_mult(const Matrix& gamma, double tol = kDefaultTol);

// Attaches 1 < lambda <= ||gamma|| and fills the spectral projectors.
// Eigenvalues below lambda minus the tolerance band are bad; eigenvalues
// within the band count as good and are flagged.
void set_lambda(MultiplicativeAdversary& adv, double lambda, double tol = kDefaultTol);

// max_z ||F_z Pi_bad||^2; requires set_lambda to have run.
double compute_eta(MultiplicativeAdversary& adv, const FunctionSpec& spec);

struct RatioEntry {
  int index = 0;  // queried position, 0-based
  int phase = 0;  // p >= 1
  double value = 1.0;
};

struct RatioReport {
  std::vector<RatioEntry> entries;
  double max_ratio = 1.0;
  int argmax_index = 0;
  int argmax_phase = 1;
};

// ||Gamma_{i,p} / Gamma|| for every i and p >= 1 (p = 0 is identically 1).
RatioReport ratio_norms(const MultiplicativeAdversary& adv, const FunctionSpec& spec,
                        double tol = kDefaultTol);

struct MadvValue {
  double value = 0.0;  // log(zeta^2 lambda) / log(max ratio), base-agnostic
  double lambda = 0.0;
  double zeta = 0.0;
  double max_ratio = 1.0;
  double log2_numerator = 0.0;
  double log2_denominator = 0.0;
  double success_threshold = 0.0;  // eta + 4 zeta when eta is known, else -1
};

MadvValue madv_value(const MultiplicativeAdversary& adv, const RatioReport& ratios,
                     double lambda, double zeta, double tol = kDefaultTol);

struct BlockDiagonalReport {
  struct Entry {
    int row_block = 0;
    int col_block = 0;
    double gamma_residual = 0.0;
    double oracle_residual = 0.0;
  };
  std::vector<Entry> entries;  // one per unordered block pair
  double max_residual = 0.0;
  bool pass = true;
};

// Off-diagonal residuals ||Pi_l Gamma Pi_m|| and ||Pi_l O_{i,1} Pi_m||.
BlockDiagonalReport verify_block_diagonal(const Matrix& gamma, const FunctionSpec& spec,
                                          int i, const ProjectorSet& set,
                                          double tol = kDefaultTol);

struct BlockRatio {
  std::string label;
  int dim = 0;
  double exact = 1.0;          // ||Gamma_{i,p}^{(l)} / Gamma^{(l)}|| maxed over p
  double lambda_min = 0.0;     // smallest eigenvalue of Gamma^{(l)}
  double hadamard_norm = 0.0;  // ||Gamma^{(l)} o D_i||
  double bound = 1.0;          // 1 + 2 hadamard_norm / lambda_min
};

struct BlockRatioReport {
  std::vector<BlockRatio> blocks;
  double max_exact = 1.0;
  double global_ratio = 1.0;  // full-space max_p ||Gamma_{i,p} / Gamma||
  double equality_gap = 0.0;  // |global - max over blocks|
};

// Per-block exact relative norms and the additive-style upper bound,
// together with the full-space ratio for the same i.
BlockRatioReport block_ratio_bound(const MultiplicativeAdversary& adv, const FunctionSpec& spec,
                                   int i, const ProjectorSet& set, double tol = kDefaultTol);

struct Madv2Value {
  double value = 0.0;
  double min_quotient = 0.0;  // min over (i, l) of lambda_min / (2 ||Gamma^(l) o D_i||)
  int excluded_blocks = 0;    // blocks with vanishing Hadamard norm, skipped
  double lambda = 0.0;
  double zeta = 0.0;
};

// The block-diagonal lower bound: log(zeta^2 lambda) * min over blocks and
// query indices of lambda_min(Gamma^(l)) / (2 ||Gamma^(l) o D_i||).
// per_index[i] must block-diagonalize Gamma and O_{i,1}.
Madv2Value madv2_value(const MultiplicativeAdversary& adv, const FunctionSpec& spec,
                       const std::vector<ProjectorSet>& per_index, double lambda, double zeta,
                       double tol = kDefaultTol);

}  // namespace qadv
