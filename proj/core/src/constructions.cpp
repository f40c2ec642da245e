#include "qadv/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qadv/adversary_mult.hpp"
#include "qadv/query_matrices.hpp"

namespace qadv {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return result;
}

double falling_factorial(double a, int j) {
  double result = 1.0;
  for (int i = 0; i < j; ++i) result *= a - i;
  return result;
}

namespace {

constexpr double kBuildTol = 1e-8;  // internal consistency checks of the constructions

struct BasisWithCoeffs {
  Matrix basis;   // orthonormal columns
  Matrix coeffs;  // basis = frame * coeffs
};

// Modified Gram-Schmidt tracking the coefficient representation of every
// basis vector in the original frame.
BasisWithCoeffs mgs_with_coeffs(const Matrix& frame, double drop_tol = kRankTol) {
  const Eigen::Index m = frame.cols();
  BasisWithCoeffs out;
  out.basis = Matrix(frame.rows(), m);
  out.coeffs = Matrix::Zero(m, m);
  Eigen::Index kept = 0;
  for (Eigen::Index c = 0; c < m; ++c) {
    Vector v = frame.col(c);
    Vector rep = Vector::Zero(m);
    rep(c) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < kept; ++k) {
        const Complex coef = out.basis.col(k).dot(v);
        v -= coef * out.basis.col(k);
        rep -= coef * out.coeffs.col(k);
      }
    }
    const double norm = v.norm();
    if (norm <= drop_tol) continue;
    out.basis.col(kept) = v / norm;
    out.coeffs.col(kept) = rep / norm;
    ++kept;
  }
  out.basis.conservativeResize(Eigen::NoChange, kept);
  out.coeffs.conservativeResize(Eigen::NoChange, kept);
  return out;
}

std::vector<std::vector<int>> combinations(const std::vector<int>& pool, int k) {
  std::vector<std::vector<int>> out;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (k > static_cast<int>(pool.size())) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = pool[idx[i]];
    out.push_back(std::move(pick));
    int i = k - 1;
    while (i >= 0 && idx[i] == static_cast<int>(pool.size()) - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

const FamilyLevel& StateFamily::level(int j) const {
  if (j < 0 || j >= static_cast<int>(levels.size())) {
    fail(ErrorCode::IndexOutOfRange, "family has no level " + std::to_string(j));
  }
  return levels[j];
}

Matrix StateFamily::level_projector(int j) const {
  const FamilyLevel& l = level(j);
  const Eigen::Index rows = l.raw.rows();
  if (l.basis.cols() == 0) return Matrix::Zero(rows, rows);
  return l.basis * l.basis.adjoint();
}

double StateFamily::tilde_norm_formula(int j) const {
  const int n_eff = n - (fixed_pos >= 0 ? 1 : 0);
  const int t_eff = weight - (fixed_pos >= 0 && fixed_val == 1 ? 1 : 0);
  const double num = falling_factorial(n_eff - t_eff, j);
  const double den = falling_factorial(n_eff + 1 - j, j);
  if (den <= 0.0) return 0.0;
  return std::sqrt(std::max(0.0, num / den));
}

StateFamily build_state_family(const std::vector<std::string>& inputs, int n, int weight,
                               int max_level, int fixed_pos, int fixed_val) {
  const int rows = static_cast<int>(inputs.size());
  StateFamily fam;
  fam.n = n;
  fam.weight = weight;
  fam.fixed_pos = fixed_pos;
  fam.fixed_val = fixed_val;

  std::vector<int> free_pos;
  for (int p = 0; p < n; ++p) {
    if (p != fixed_pos) free_pos.push_back(p);
  }

  Matrix cumulative(rows, 0);
  for (int j = 0; j <= max_level; ++j) {
    FamilyLevel level;
    level.supports = combinations(free_pos, j);
    const int count = static_cast<int>(level.supports.size());
    level.raw = Matrix::Zero(rows, count);
    bool any_state = false;
    for (int c = 0; c < count; ++c) {
      std::vector<int> hits;
      for (int r = 0; r < rows; ++r) {
        const std::string& x = inputs[r];
        int w = 0;
        for (char ch : x) w += ch == '1';
        if (w != weight) continue;
        if (fixed_pos >= 0 && x[fixed_pos] - '0' != fixed_val) continue;
        bool ok = true;
        for (int p : level.supports[c]) ok = ok && x[p] == '1';
        if (ok) hits.push_back(r);
      }
      if (hits.empty()) continue;
      any_state = true;
      const double amp = 1.0 / std::sqrt(static_cast<double>(hits.size()));
      for (int r : hits) level.raw(r, c) = amp;
    }
    if (!any_state) break;

    Matrix tilde = level.raw - cumulative * (cumulative.adjoint() * level.raw);
    level.tilde_norms = RealVector(count);
    level.dotted = Matrix::Zero(rows, count);
    for (int c = 0; c < count; ++c) {
      const double norm = tilde.col(c).norm();
      level.tilde_norms(c) = norm;
      if (norm > kRankTol) level.dotted.col(c) = tilde.col(c) / norm;
    }
    level.basis = orthonormalize(tilde).basis;
    Matrix next(rows, cumulative.cols() + level.basis.cols());
    next << cumulative, level.basis;
    cumulative = std::move(next);
    fam.levels.push_back(std::move(level));
  }
  return fam;
}

GammaWithThreshold search_gamma(int n, double q) {
  if (n < 2) fail(ErrorCode::BadParameters, "search needs n >= 2");
  if (q < 1.0) fail(ErrorCode::BadParameters, "search gamma needs q >= 1");
  GammaWithThreshold out;
  out.gamma = Matrix::Constant(n, n, (1.0 - q) / n) + q * Matrix::Identity(n, n);
  out.lambda = q;
  out.degenerate = q == 1.0;
  return out;
}

SearchBlockNorm search_block_norm(int n, double q) {
  if (n < 3) fail(ErrorCode::BadParameters, "block norm analysis needs n >= 3");
  if (q < 1.0) fail(ErrorCode::BadParameters, "needs q >= 1");
  SearchBlockNorm out;
  const double c = (n - 2.0) / n;
  const double s = 2.0 * std::sqrt(n - 1.0) / n;
  out.block_gamma = Matrix::Zero(2, 2);
  out.block_gamma(0, 0) = 1.0;
  out.block_gamma(1, 1) = q;
  out.block_oracle = Matrix::Zero(2, 2);
  out.block_oracle(0, 0) = c;
  out.block_oracle(0, 1) = s;
  out.block_oracle(1, 0) = s;
  out.block_oracle(1, 1) = -c;
  // trace of O Gamma O Gamma^{-1}; its determinant is exactly 1
  const double trace = 2.0 * c * c + s * s * (q + 1.0 / q);
  out.exact = (trace + std::sqrt(std::max(0.0, trace * trace - 4.0))) / 2.0;
  out.asymptotic = 1.0 + 2.0 * (q - 1.0) / std::sqrt(q * n);
  out.gap = std::abs(out.exact - out.asymptotic);
  return out;
}

ProjectorSet search_blocks(int n, int query_index) {
  if (n < 3) fail(ErrorCode::BadParameters, "needs n >= 3");
  if (query_index < 0 || query_index >= n) fail(ErrorCode::IndexOutOfRange, "bad query index");
  const FunctionSpec spec = search_function(n);
  std::string marked(n, '0');
  marked[query_index] = '1';
  const int row = spec.find_input(marked);
  Vector v = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector v1 = Vector::Constant(n, 1.0 / std::sqrt(n * (n - 1.0)));
  v1(row) = (1.0 - n) / std::sqrt(n * (n - 1.0));
  ProjectorSet set;
  set.projectors.push_back(v * v.adjoint() + v1 * v1.adjoint());
  set.projectors.push_back(Matrix::Identity(n, n) - set.projectors[0]);
  set.labels = {"mixing", "trivial"};
  return set;
}

SubspaceFamily tfold_subspaces(int n, int t) {
  if (t < 1 || 2 * t > n) fail(ErrorCode::BadParameters, "tfold subspaces need 1 <= t <= n/2");
  if (binomial(n, t) > 5000.0) fail(ErrorCode::TooLarge, "C(n,t) exceeds the 5000-row guard");
  SubspaceFamily fam;
  fam.n = n;
  fam.t = t;
  fam.spec = tfold_search_function(n, t);
  fam.states = build_state_family(fam.spec.inputs, n, t, t);
  int total = 0;
  for (int j = 0; j <= t; ++j) {
    const FamilyLevel& level = fam.states.level(j);
    fam.level_projectors.push_back(fam.states.level_projector(j));
    fam.level_dims.push_back(level.dim());
    total += level.dim();
    const int expected = static_cast<int>(binomial(n, j) - binomial(n, j - 1));
    if (level.dim() != expected) {
      fail(ErrorCode::InvariantViolation,
           "level " + std::to_string(j) + " has dimension " + std::to_string(level.dim()) +
               ", expected " + std::to_string(expected));
    }
    const double formula = fam.states.tilde_norm_formula(j);
    for (Eigen::Index c = 0; c < level.tilde_norms.size(); ++c) {
      if (std::abs(level.tilde_norms(c) - formula) > kBuildTol) {
        fail(ErrorCode::InvariantViolation, "tilde norm off the falling-factorial rule");
      }
    }
  }
  if (total != fam.spec.size()) {
    fail(ErrorCode::InvariantViolation, "subspace dimensions do not fill the input space");
  }
  return fam;
}

GammaWithThreshold tfold_gamma(const SubspaceFamily& family, double q) {
  if (q < 1.0) fail(ErrorCode::BadParameters, "tfold gamma needs q >= 1");
  GammaWithThreshold out;
  const int m = family.spec.size();
  out.gamma = Matrix::Zero(m, m);
  for (int j = 0; j <= family.t; ++j) {
    out.gamma += std::pow(q, j) * family.level_projectors[j];
  }
  out.lambda = std::pow(q, family.t / 2.0);
  out.degenerate = q == 1.0;
  return out;
}

TwoDimBlocks tfold_blocks(int n, int t, int query_index) {
  if (t < 1 || 2 * t > n) fail(ErrorCode::BadParameters, "tfold blocks need 1 <= t <= n/2");
  if (query_index < 0 || query_index >= n) fail(ErrorCode::IndexOutOfRange, "bad query index");
  if (binomial(n, t) > 5000.0) fail(ErrorCode::TooLarge, "C(n,t) exceeds the 5000-row guard");

  const FunctionSpec spec = tfold_search_function(n, t);
  const std::vector<std::string>& inputs = spec.inputs;
  const int m = spec.size();

  const StateFamily fam0 = build_state_family(inputs, n, t, t, query_index, 0);
  const StateFamily fam1 = build_state_family(inputs, n, t, t - 1, query_index, 1);

  // The index-shift map: move the queried bit from 0 to 1 while clearing one
  // of the other ones, summed over all choices.
  Matrix shift = Matrix::Zero(m, m);
  for (int r = 0; r < m; ++r) {
    if (inputs[r][query_index] != '0') continue;
    for (int p = 0; p < n; ++p) {
      if (p == query_index || inputs[r][p] != '1') continue;
      std::string y = inputs[r];
      y[query_index] = '1';
      y[p] = '0';
      shift(spec.find_input(y), r) += 1.0;
    }
  }

  TwoDimBlocks out;
  out.query_index = query_index;
  int total_rank = 0;
  for (int j = 0; j < t; ++j) {
    const FamilyLevel& l0 = fam0.level(j);
    const FamilyLevel& l1 = fam1.level(j);
    const double a_raw = std::sqrt((n - t) / static_cast<double>(n - j)) * l0.tilde_norms(0);
    const double b_raw = std::sqrt((t - j) / static_cast<double>(n - j)) * l1.tilde_norms(0);
    const double scale_ab = std::hypot(a_raw, b_raw);
    out.alpha.push_back(a_raw / scale_ab);
    out.beta.push_back(b_raw / scale_ab);

    Matrix images = shift * l0.basis;
    const double c_j = images.col(0).norm();
    for (Eigen::Index c = 0; c < images.cols(); ++c) {
      if (std::abs(images.col(c).norm() - c_j) > kBuildTol * std::max(1.0, c_j)) {
        fail(ErrorCode::InvariantViolation, "index-shift map is not a uniform multiple");
      }
    }
    images /= c_j;
    out.scale.push_back(c_j);

    const Matrix gram = images.adjoint() * images;
    if (spectral_norm(gram - Matrix::Identity(gram.rows(), gram.cols())) > kBuildTol) {
      fail(ErrorCode::InvariantViolation, "shifted basis is not orthonormal");
    }
    const Matrix residual = images - fam1.level_projector(j) * images;
    if (spectral_norm(residual) > kBuildTol) {
      fail(ErrorCode::InvariantViolation, "shifted basis leaves its target level");
    }

    for (Eigen::Index c = 0; c < l0.basis.cols(); ++c) {
      const Vector phi = l0.basis.col(c);
      const Vector chi = images.col(c);
      out.projectors.projectors.push_back(phi * phi.adjoint() + chi * chi.adjoint());
      out.projectors.labels.push_back("j" + std::to_string(j) + ".l" + std::to_string(c));
      out.block_level.push_back(j);
      total_rank += 2;
    }
    out.basis_zero.push_back(l0.basis);
    out.basis_one.push_back(images);
  }

  if (t < static_cast<int>(fam0.levels.size())) {
    const FamilyLevel& top = fam0.level(t);
    for (Eigen::Index c = 0; c < top.basis.cols(); ++c) {
      const Vector w = top.basis.col(c);
      out.projectors.projectors.push_back(w * w.adjoint());
      out.projectors.labels.push_back("triv.l" + std::to_string(c));
      out.block_level.push_back(-1);
      ++total_rank;
    }
  }
  if (total_rank != m) {
    fail(ErrorCode::InvariantViolation, "block projectors do not fill the input space");
  }
  return out;
}

std::pair<double, double> two_dim_ratio_eigs(double alpha, double beta, double q) {
  const double mid = 1.0 + 2.0 * alpha * alpha * beta * beta * (q - 1.0) * (q - 1.0) / q;
  const double split = 2.0 * alpha * beta * ((q - 1.0) / q) *
                       std::sqrt((alpha * alpha + beta * beta * q) *
                                 (beta * beta + alpha * alpha * q));
  return {mid - split, mid + split};
}

BlockEigenvalues tfold_block_eigs(int n, int t, double q, int j) {
  if (j < 0 || j >= t) fail(ErrorCode::BadParameters, "block eigenvalues need 0 <= j < t");
  const SubspaceFamily fam = tfold_subspaces(n, t);
  const GammaWithThreshold gt = tfold_gamma(fam, q);
  const TwoDimBlocks blocks = tfold_blocks(n, t);

  BlockEigenvalues out;
  out.alpha = blocks.alpha[j];
  out.beta = blocks.beta[j];
  std::tie(out.closed_low, out.closed_high) = two_dim_ratio_eigs(out.alpha, out.beta, q);

  const QueryMatrices qm = build_query_matrices(fam.spec);
  const Matrix gamma1 = qm.conjugate_by_phase(gt.gamma, blocks.query_index, 1);
  Matrix basis(fam.spec.size(), 2);
  basis.col(0) = blocks.basis_zero[j].col(0);
  basis.col(1) = blocks.basis_one[j].col(0);
  const Matrix gb = basis.adjoint() * gt.gamma * basis;
  const Matrix g1b = basis.adjoint() * gamma1 * basis;
  const Matrix inv_sqrt = pd_inverse_sqrt(gb);
  const HermitianEigenSystem sys = hermitian_eig(inv_sqrt * g1b * inv_sqrt, 1e-8);
  out.numeric_low = sys.eigenvalues(0);
  out.numeric_high = sys.eigenvalues(1);
  out.max_gap = std::max(std::abs(out.numeric_low - out.closed_low),
                         std::abs(out.numeric_high - out.closed_high));
  return out;
}

EtaBound tfold_eta_bound(int n, int t, double q) {
  if (q <= 1.0) fail(ErrorCode::BadParameters, "eta bound needs q > 1");
  const SubspaceFamily fam = tfold_subspaces(n, t);
  const GammaWithThreshold gt = tfold_gamma(fam, q);
  MultiplicativeAdversary adv = validate_mult(gt.gamma);
  set_lambda(adv, gt.lambda);
  EtaBound out;
  out.numeric = compute_eta(adv, fam.spec);
  out.t_even = t % 2 == 0;
  if (out.t_even) out.binomial_bound = binomial(n, t / 2) / binomial(n, t);
  out.exponential_bound = std::pow(2.0, -t / 2.0);
  out.exponential_applicable = out.t_even && t <= n / (4.0 * std::numbers::e);
  return out;
}

namespace {

// Shared plus/minus level machinery for threshold and OR.
struct PlusMinusLevels {
  std::vector<Matrix> plus_projectors;
  std::vector<Matrix> minus_projectors;
  int total_rank = 0;
};

PlusMinusLevels build_plus_minus(const StateFamily& low, const StateFamily& high, int t) {
  PlusMinusLevels out;
  for (int j = 0; j <= t - 1; ++j) {
    const Matrix& d_low = low.level(j).dotted;
    const Matrix& d_high = high.level(j).dotted;
    if (d_low.cols() != d_high.cols()) {
      fail(ErrorCode::InvariantViolation, "mismatched level frames");
    }
    const Matrix plus = (d_low + d_high) / std::numbers::sqrt2;
    const Matrix minus = (d_low - d_high) / std::numbers::sqrt2;
    const Matrix basis_plus = orthonormalize(plus).basis;
    const Matrix basis_minus = orthonormalize(minus).basis;
    out.total_rank += static_cast<int>(basis_plus.cols() + basis_minus.cols());
    out.plus_projectors.push_back(basis_plus * basis_plus.adjoint());
    out.minus_projectors.push_back(basis_minus * basis_minus.adjoint());
  }
  // The top minus level is the level-t subspace of the heavier family.
  out.minus_projectors.push_back(high.level_projector(t));
  out.total_rank += high.level(t).dim();
  return out;
}

}  // namespace

ThresholdConstruction threshold_gamma(int n, int t, double q) {
  if (t < 1 || 2 * t > n) fail(ErrorCode::BadParameters, "threshold needs 1 <= t <= n/2");
  if (q < 1.0) fail(ErrorCode::BadParameters, "threshold gamma needs q >= 1");
  ThresholdConstruction out;
  out.n = n;
  out.t = t;
  out.cutoff = (t + 1) / 2;
  out.spec = threshold_function(n, t);
  if (out.spec.size() > 5000) fail(ErrorCode::TooLarge, "input set exceeds the 5000-row guard");
  out.low = build_state_family(out.spec.inputs, n, t - 1, t - 1);
  out.high = build_state_family(out.spec.inputs, n, t, t);

  PlusMinusLevels pm = build_plus_minus(out.low, out.high, t);
  if (pm.total_rank != out.spec.size()) {
    fail(ErrorCode::InvariantViolation, "plus/minus subspaces do not fill the input space");
  }
  out.plus_projectors = std::move(pm.plus_projectors);
  out.minus_projectors = std::move(pm.minus_projectors);

  const int m = out.spec.size();
  const double top = std::pow(q, out.cutoff);
  Matrix gamma = Matrix::Zero(m, m);
  for (int j = 0; j <= t - 1; ++j) {
    gamma += (j < out.cutoff ? std::pow(q, j) : top) * out.plus_projectors[j];
  }
  for (int j = 0; j <= t; ++j) gamma += top * out.minus_projectors[j];
  out.gamma.gamma = std::move(gamma);
  out.gamma.lambda = top;
  out.gamma.degenerate = q == 1.0;
  return out;
}

ThresholdBlocks threshold_blocks(int n, int t, int query_index) {
  if (t < 1 || 2 * t > n) fail(ErrorCode::BadParameters, "threshold needs 1 <= t <= n/2");
  if (query_index < 0 || query_index >= n) fail(ErrorCode::IndexOutOfRange, "bad query index");
  const FunctionSpec spec = threshold_function(n, t);
  if (spec.size() > 5000) fail(ErrorCode::TooLarge, "input set exceeds the 5000-row guard");
  const std::vector<std::string>& inputs = spec.inputs;

  // Split families indexed by (weight selector a, queried bit b).
  const StateFamily fam[2][2] = {
      {build_state_family(inputs, n, t - 1, t, query_index, 0),
       build_state_family(inputs, n, t - 1, t, query_index, 1)},
      {build_state_family(inputs, n, t, t, query_index, 0),
       build_state_family(inputs, n, t, t, query_index, 1)},
  };

  ThresholdBlocks out;
  out.query_index = query_index;
  int total_rank = 0;
  for (int j = 0; j <= t; ++j) {
    const StateFamily& ref = j <= t - 1 ? fam[0][0] : fam[1][0];
    if (j >= static_cast<int>(ref.levels.size()) || ref.level(j).dim() == 0) continue;
    const BasisWithCoeffs reference = mgs_with_coeffs(ref.level(j).dotted);

    std::vector<Matrix> sides;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (j > t - 1 && !(a == 1 && b == 0)) continue;
        const StateFamily& f = fam[a][b];
        if (j >= static_cast<int>(f.levels.size()) || f.level(j).dim() == 0) continue;
        Matrix side = f.level(j).dotted * reference.coeffs;
        const Matrix gram = side.adjoint() * side;
        if (spectral_norm(gram - Matrix::Identity(gram.rows(), gram.cols())) > kBuildTol) {
          fail(ErrorCode::InvariantViolation, "level frames are not isometric across splits");
        }
        sides.push_back(std::move(side));
      }
    }
    const int dim = static_cast<int>(sides.size());
    for (Eigen::Index c = 0; c < reference.basis.cols(); ++c) {
      Matrix block(spec.size(), dim);
      for (int s = 0; s < dim; ++s) block.col(s) = sides[s].col(c);
      out.projectors.projectors.push_back(block * block.adjoint());
      out.projectors.labels.push_back((dim == 1 ? std::string("triv") : "j" + std::to_string(j)) +
                                      ".l" + std::to_string(c));
      out.block_level.push_back(dim == 1 ? -1 : j);
      out.block_dim.push_back(dim);
      total_rank += dim;
    }
  }
  if (total_rank != spec.size()) {
    fail(ErrorCode::InvariantViolation, "threshold blocks do not fill the input space");
  }
  return out;
}

namespace {

// Mixing coefficients of one weight family split by the queried bit,
// evaluated at level j: the threshold value is t-1+a for selector a.
std::pair<double, double> split_coefficients(const StateFamily& b0, const StateFamily& b1,
                                             int n, int weight, int j) {
  const double a_raw =
      std::sqrt((n - weight) / static_cast<double>(n - j)) * b0.level(j).tilde_norms(0);
  const double b_raw =
      std::sqrt((weight - j) / static_cast<double>(n - j)) * b1.level(j).tilde_norms(0);
  const double scale = std::hypot(a_raw, b_raw);
  return {a_raw / scale, b_raw / scale};
}

}  // namespace

ThresholdBlockMatrices threshold_block_matrices(int n, int t, double q, int j) {
  if (t < 2 || 2 * t > n) fail(ErrorCode::BadParameters, "needs 2 <= t <= n/2");
  if (j < 0 || j > t - 2) fail(ErrorCode::BadParameters, "4-dim blocks live at 0 <= j <= t-2");
  if (q < 1.0) fail(ErrorCode::BadParameters, "needs q >= 1");
  const ThresholdConstruction thr = threshold_gamma(n, t, q);
  const std::vector<std::string>& inputs = thr.spec.inputs;

  const StateFamily f00 = build_state_family(inputs, n, t - 1, j, 0, 0);
  const StateFamily f01 = build_state_family(inputs, n, t - 1, j, 0, 1);
  const StateFamily f10 = build_state_family(inputs, n, t, j, 0, 0);
  const StateFamily f11 = build_state_family(inputs, n, t, j, 0, 1);

  ThresholdBlockMatrices out;
  std::tie(out.alpha0, out.beta0) = split_coefficients(f00, f01, n, t - 1, j);
  std::tie(out.alpha1, out.beta1) = split_coefficients(f10, f11, n, t, j);

  const double a0 = out.alpha0, b0 = out.beta0, a1 = out.alpha1, b1 = out.beta1;
  out.u = Matrix::Zero(4, 4);
  out.u << a0, b0, a0, b0,
           b0, -a0, b0, -a0,
           a1, b1, -a1, -b1,
           b1, -a1, -b1, a1;
  out.u /= std::numbers::sqrt2;
  const double top = std::pow(q, thr.cutoff);
  out.g = Matrix::Zero(4, 4);
  out.g(0, 0) = std::min(std::pow(q, j), top);
  out.g(1, 1) = std::min(std::pow(q, j + 1), top);
  out.g(2, 2) = top;
  out.g(3, 3) = top;
  out.z = Matrix::Zero(4, 4);
  out.z(0, 0) = 1.0;
  out.z(1, 1) = -1.0;
  out.z(2, 2) = 1.0;
  out.z(3, 3) = -1.0;

  // Measured blocks over X in the split-state basis for the first support.
  Matrix basis(thr.spec.size(), 4);
  basis.col(0) = f00.level(j).dotted.col(0);
  basis.col(1) = f01.level(j).dotted.col(0);
  basis.col(2) = f10.level(j).dotted.col(0);
  basis.col(3) = f11.level(j).dotted.col(0);

  const QueryMatrices qm = build_query_matrices(thr.spec);
  const Matrix gamma1 = qm.conjugate_by_phase(thr.gamma.gamma, 0, 1);
  out.numeric_gamma_block = basis.adjoint() * thr.gamma.gamma * basis;
  out.numeric_oracle_block = basis.adjoint() * qm.phase_dense(0, 1) * basis;
  out.numeric_ratio_block =
      (basis.adjoint() * gamma1 * basis) * (basis.adjoint() * thr.gamma.gamma * basis).inverse();

  const Matrix model_gamma = out.u * out.g * out.u.adjoint();
  const Matrix model_ratio =
      out.z * model_gamma * out.z * out.u * out.g.inverse() * out.u.adjoint();
  out.gamma_gap = spectral_norm(model_gamma - out.numeric_gamma_block);
  out.oracle_gap = spectral_norm(out.z - out.numeric_oracle_block);
  out.ratio_gap = spectral_norm(model_ratio - out.numeric_ratio_block);
  return out;
}

ThresholdHjReport threshold_hj(int n, int t, double q, int j) {
  const ThresholdBlockMatrices block = threshold_block_matrices(n, t, q, j);
  const int cutoff = (t + 1) / 2;
  if (j >= cutoff) fail(ErrorCode::BadParameters, "coupling analysis needs j below the cutoff");

  const double a0 = block.alpha0, b0 = block.beta0, a1 = block.alpha1, b1 = block.beta1;
  const double e = std::pow(q, cutoff - j);
  ThresholdHjReport out;
  out.h = Matrix::Zero(2, 2);
  out.h(0, 0) = a0 * b0 * (q - 1.0);
  out.h(0, 1) = a1 * b0 * (e - 1.0) - a0 * b1 * (e - q);
  out.h(1, 0) = a0 * b1 * (e - 1.0) - a1 * b0 * (e - q);
  out.h(1, 1) = a1 * b1 * (q - 1.0);
  out.norm = spectral_norm(out.h);

  Matrix d1 = Matrix::Zero(4, 4);
  d1 << 0, 1, 0, 1,
        1, 0, 1, 0,
        0, 1, 0, 1,
        1, 0, 1, 0;
  const Matrix had = hadamard(block.u * block.g * block.u.adjoint(), d1);
  out.direct_norm = spectral_norm(had);

  // Swap the middle two rows and columns; the product becomes block
  // anti-diagonal with the coupling matrix in the corner.
  Eigen::Vector4i perm(0, 2, 1, 3);
  Matrix swapped(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) swapped(r, c) = had(perm(r), perm(c));
  }
  Matrix expected = Matrix::Zero(4, 4);
  const double scale = -std::pow(q, j) / 2.0;
  expected.block(0, 2, 2, 2) = scale * out.h.transpose();
  expected.block(2, 0, 2, 2) = scale * out.h.conjugate();
  out.swap_residual = spectral_norm(swapped - expected);

  out.corollary_quantity = 2.0 * out.direct_norm / std::pow(q, j);
  out.bound_first_term = 2.0 * (q - 1.0) * std::sqrt(2.0 * t / n);
  out.skew = std::abs(a1 * b0 - a0 * b1);
  out.skew_scaled = out.skew * std::sqrt(static_cast<double>(t) * n);
  return out;
}

GammaWithThreshold or_gamma(int n, double q) {
  return threshold_gamma(n, 1, q).gamma;
}

OrBlockEigs or_block_eigs(int n, double q) {
  if (n < 3) fail(ErrorCode::BadParameters, "needs n >= 3");
  if (q < 1.0) fail(ErrorCode::BadParameters, "needs q >= 1");
  const ThresholdConstruction thr = threshold_gamma(n, 1, q);
  const std::vector<std::string>& inputs = thr.spec.inputs;

  const StateFamily f00 = build_state_family(inputs, n, 0, 0, 0, 0);
  const StateFamily f10 = build_state_family(inputs, n, 1, 0, 0, 0);
  const StateFamily f11 = build_state_family(inputs, n, 1, 0, 0, 1);

  OrBlockEigs out;
  const auto [alpha, beta] = split_coefficients(f10, f11, n, 1, 0);
  out.beta = beta;
  out.gamma_coeff = ((q - 1.0) * (q - 1.0) / (2.0 * q)) *
                    (2.0 * beta * beta - std::pow(beta, 4.0));
  const double root = std::sqrt(out.gamma_coeff * out.gamma_coeff + 2.0 * out.gamma_coeff);
  out.closed = {1.0 + out.gamma_coeff - root, 1.0, 1.0 + out.gamma_coeff + root};
  std::sort(out.closed.begin(), out.closed.end());
  out.nontrivial_product = (1.0 + out.gamma_coeff - root) * (1.0 + out.gamma_coeff + root);

  out.u = Matrix::Zero(3, 3);
  out.u << 1, 1, 0,
           alpha, -alpha, std::numbers::sqrt2 * beta,
           beta, -beta, -std::numbers::sqrt2 * alpha;
  out.u /= std::numbers::sqrt2;
  out.g = Matrix::Zero(3, 3);
  out.g(0, 0) = 1.0;
  out.g(1, 1) = q;
  out.g(2, 2) = q;
  out.z = Matrix::Zero(3, 3);
  out.z(0, 0) = 1.0;
  out.z(1, 1) = 1.0;
  out.z(2, 2) = -1.0;

  Matrix basis(thr.spec.size(), 3);
  basis.col(0) = f00.level(0).dotted.col(0);
  basis.col(1) = f10.level(0).dotted.col(0);
  basis.col(2) = f11.level(0).dotted.col(0);
  const QueryMatrices qm = build_query_matrices(thr.spec);
  const Matrix gamma1 = qm.conjugate_by_phase(thr.gamma.gamma, 0, 1);
  const Matrix gb = basis.adjoint() * thr.gamma.gamma * basis;
  const Matrix g1b = basis.adjoint() * gamma1 * basis;
  const Matrix inv_sqrt = pd_inverse_sqrt(gb);
  const HermitianEigenSystem sys = hermitian_eig(inv_sqrt * g1b * inv_sqrt, 1e-8);
  out.numeric = {sys.eigenvalues(0), sys.eigenvalues(1), sys.eigenvalues(2)};
  out.max_gap = 0.0;
  for (int k = 0; k < 3; ++k) {
    out.max_gap = std::max(out.max_gap, std::abs(out.numeric[k] - out.closed[k]));
  }
  out.asymptotic = 1.0 + 2.0 * (q - 1.0) / std::sqrt(q * n);
  return out;
}

}  // namespace qadv
