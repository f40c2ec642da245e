#include "qadv/adversary_mult.hpp"

#include <algorithm>
#include <cmath>

namespace qadv {

MultiplicativeAdversary validate_mult(const Matrix& gamma, double tol) {
  MultiplicativeAdversary adv;
  HermitianEigenSystem sys = hermitian_eig(gamma, tol);
  const double scale = std::max(std::abs(sys.max()), std::abs(sys.min()));
  if (sys.min() <= tol * scale) {
    fail(ErrorCode::NotPositiveDefinite,
         "smallest eigenvalue " + std::to_string(sys.min()) + " not positive");
  }
  adv.rescale_factor = sys.min();
  if (std::abs(sys.min() - 1.0) <= tol * std::max(1.0, scale)) {
    adv.rescale_factor = 1.0;
    adv.gamma = gamma;
    adv.eigen = std::move(sys);
  } else {
    adv.gamma = gamma / adv.rescale_factor;
    adv.eigen = hermitian_eig(adv.gamma, tol);
  }
  adv.norm = std::max(std::abs(adv.eigen.max()), std::abs(adv.eigen.min()));
  return adv;
}

void set_lambda(MultiplicativeAdversary& adv, double lambda, double tol) {
  const double band = tol * std::max(1.0, adv.norm);
  if (lambda <= 1.0 || lambda > adv.norm + band) {
    fail(ErrorCode::LambdaOutOfRange,
         "lambda must satisfy 1 < lambda <= ||Gamma|| = " + std::to_string(adv.norm));
  }
  adv.lambda = lambda;
  adv.bad_rank = 0;
  adv.boundary_flagged = 0;
  const Eigen::Index dim = adv.gamma.rows();
  Matrix bad_basis(dim, dim);
  Eigen::Index bad = 0;
  for (Eigen::Index k = 0; k < adv.eigen.eigenvalues.size(); ++k) {
    const double ev = adv.eigen.eigenvalues(k);
    if (std::abs(ev - lambda) <= band) ++adv.boundary_flagged;
    if (ev < lambda - band) bad_basis.col(bad++) = adv.eigen.eigenvectors.col(k);
  }
  bad_basis.conservativeResize(Eigen::NoChange, bad);
  adv.bad_rank = static_cast<int>(bad);
  adv.projector_bad = bad == 0 ? Matrix::Zero(dim, dim).eval()
                               : Matrix(bad_basis * bad_basis.adjoint());
  adv.projector_good = Matrix::Identity(dim, dim) - adv.projector_bad;
}

double compute_eta(MultiplicativeAdversary& adv, const FunctionSpec& spec) {
  if (adv.lambda <= 0.0) fail(ErrorCode::BadParameters, "set_lambda must run before eta");
  if (adv.gamma.rows() != spec.size()) {
    fail(ErrorCode::ShapeMismatch, "adversary dimension does not match |X|");
  }
  const QueryMatrices q = build_query_matrices(spec);
  double eta = 0.0;
  for (size_t z = 0; z < q.output_proj.size(); ++z) {
    const Matrix fz_bad = q.output_proj[z].asDiagonal() * adv.projector_bad;
    const double norm = spectral_norm(fz_bad);
    eta = std::max(eta, norm * norm);
  }
  adv.eta = std::min(eta, 1.0);
  return adv.eta;
}

RatioReport ratio_norms(const MultiplicativeAdversary& adv, const FunctionSpec& spec,
                        double tol) {
  if (adv.gamma.rows() != spec.size()) {
    fail(ErrorCode::ShapeMismatch, "adversary dimension does not match |X|");
  }
  const QueryMatrices q = build_query_matrices(spec);
  RatioReport report;
  for (int i = 0; i < spec.n; ++i) {
    for (int p = 1; p < spec.sigma; ++p) {
      const Matrix conjugated = q.conjugate_by_phase(adv.gamma, i, p);
      RatioEntry entry{i, p, relative_norm(conjugated, adv.gamma, tol)};
      if (entry.value > report.max_ratio) {
        report.max_ratio = entry.value;
        report.argmax_index = i;
        report.argmax_phase = p;
      }
      report.entries.push_back(entry);
    }
  }
  return report;
}

MadvValue madv_value(const MultiplicativeAdversary& adv, const RatioReport& ratios,
                     double lambda, double zeta, double tol) {
  MadvValue out;
  out.max_ratio = ratios.max_ratio;
  if (out.max_ratio <= 1.0 + tol) {
    fail(ErrorCode::TrivialRatio, "all per-query ratios are 1; the bound is undefined");
  }
  const double band = tol * std::max(1.0, adv.norm);
  if (lambda <= 1.0 || lambda > adv.norm + band) {
    fail(ErrorCode::LambdaOutOfRange, "lambda outside (1, ||Gamma||]");
  }
  if (zeta <= 0.0) fail(ErrorCode::BadParameters, "zeta must be positive");
  out.lambda = lambda;
  out.zeta = zeta;
  const double numerator = zeta * zeta * lambda;
  if (numerator <= 1.0) {
    fail(ErrorCode::VacuousBound,
         "zeta^2 lambda = " + std::to_string(numerator) + " does not exceed 1");
  }
  out.log2_numerator = std::log2(numerator);
  out.log2_denominator = std::log2(out.max_ratio);
  out.value = std::log(numerator) / std::log(out.max_ratio);
  out.success_threshold = adv.eta >= 0.0 ? adv.eta + 4.0 * zeta : -1.0;
  return out;
}

BlockDiagonalReport verify_block_diagonal(const Matrix& gamma, const FunctionSpec& spec,
                                          int i, const ProjectorSet& set, double tol) {
  if (i < 0 || i >= spec.n) fail(ErrorCode::IndexOutOfRange, "query index out of range");
  const QueryMatrices q = build_query_matrices(spec);
  const Matrix oracle = q.phase_dense(i, 1);
  BlockDiagonalReport report;
  for (int l = 0; l < set.size(); ++l) {
    for (int m = l + 1; m < set.size(); ++m) {
      BlockDiagonalReport::Entry entry;
      entry.row_block = l;
      entry.col_block = m;
      entry.gamma_residual = spectral_norm(set.projectors[l] * gamma * set.projectors[m]);
      entry.oracle_residual = spectral_norm(set.projectors[l] * oracle * set.projectors[m]);
      report.max_residual =
          std::max({report.max_residual, entry.gamma_residual, entry.oracle_residual});
      report.entries.push_back(entry);
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

namespace {

// Orthonormal column basis of a projector's range.
Matrix projector_range(const Matrix& projector, double tol) {
  const HermitianEigenSystem sys = hermitian_eig(projector, std::max(tol, 1e-8));
  return sys.eigenspace(0.5, 1.5);
}

}  // namespace

BlockRatioReport block_ratio_bound(const MultiplicativeAdversary& adv, const FunctionSpec& spec,
                                   int i, const ProjectorSet& set, double tol) {
  if (i < 0 || i >= spec.n) fail(ErrorCode::IndexOutOfRange, "query index out of range");
  const QueryMatrices q = build_query_matrices(spec);
  BlockRatioReport report;

  // Full-space ratio for this index, maxed over p.
  for (int p = 1; p < spec.sigma; ++p) {
    const Matrix conjugated = q.conjugate_by_phase(adv.gamma, i, p);
    report.global_ratio = std::max(report.global_ratio, relative_norm(conjugated, adv.gamma, tol));
  }

  const Matrix hadamard_full = hadamard(adv.gamma, q.difference[i]);
  for (int l = 0; l < set.size(); ++l) {
    const Matrix basis = projector_range(set.projectors[l], tol);
    BlockRatio block;
    block.label = set.label(l);
    block.dim = static_cast<int>(basis.cols());
    if (block.dim == 0) continue;

    const Matrix gamma_block = basis.adjoint() * adv.gamma * basis;
    const HermitianEigenSystem sys = hermitian_eig(gamma_block, std::max(tol, 1e-8));
    block.lambda_min = sys.min();
    if (block.lambda_min <= tol * std::max(1.0, adv.norm)) {
      fail(ErrorCode::BlockSingular, "block " + block.label + " of Gamma is singular");
    }
    for (int p = 1; p < spec.sigma; ++p) {
      const Matrix conj_block =
          basis.adjoint() * q.conjugate_by_phase(adv.gamma, i, p) * basis;
      block.exact = std::max(block.exact, relative_norm(conj_block, gamma_block, tol));
    }
    block.hadamard_norm = spectral_norm(basis.adjoint() * hadamard_full * basis);
    block.bound = 1.0 + 2.0 * block.hadamard_norm / block.lambda_min;
    report.max_exact = std::max(report.max_exact, block.exact);
    report.blocks.push_back(std::move(block));
  }
  report.equality_gap = std::abs(report.global_ratio - report.max_exact);
  return report;
}

Madv2Value madv2_value(const MultiplicativeAdversary& adv, const FunctionSpec& spec,
                       const std::vector<ProjectorSet>& per_index, double lambda, double zeta,
                       double tol) {
  if (static_cast<int>(per_index.size()) != spec.n) {
    fail(ErrorCode::BadParameters, "one projector set required per query index");
  }
  const double band = tol * std::max(1.0, adv.norm);
  if (lambda <= 1.0 || lambda > adv.norm + band) {
    fail(ErrorCode::LambdaOutOfRange, "lambda outside (1, ||Gamma||]");
  }
  if (zeta <= 0.0) fail(ErrorCode::BadParameters, "zeta must be positive");
  const double numerator = zeta * zeta * lambda;
  if (numerator <= 1.0) fail(ErrorCode::VacuousBound, "zeta^2 lambda does not exceed 1");

  Madv2Value out;
  out.lambda = lambda;
  out.zeta = zeta;
  bool any = false;
  double min_quotient = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    const BlockRatioReport blocks = block_ratio_bound(adv, spec, i, per_index[i], tol);
    for (const auto& block : blocks.blocks) {
      if (block.hadamard_norm <= tol) {
        ++out.excluded_blocks;  // ratio is exactly 1 there, contributes nothing
        continue;
      }
      const double quotient = block.lambda_min / (2.0 * block.hadamard_norm);
      min_quotient = any ? std::min(min_quotient, quotient) : quotient;
      any = true;
    }
  }
  if (!any) fail(ErrorCode::AllBlocksTrivial, "every block has vanishing Gamma o D_i");
  out.min_quotient = min_quotient;
  out.value = std::log(numerator) * min_quotient;
  return out;
}

}  // namespace qadv
