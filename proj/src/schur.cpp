#include "cob/schur.hpp"

#include <cmath>
#include <limits>

#include "cob/random.hpp"

namespace cob {

SchurSymbol::SchurSymbol(CMatrix phi) : phi_(std::move(phi)) {
  if (phi_.rows() < 1 || phi_.rows() != phi_.cols()) throw ShapeError("Schur symbol must be square and non-empty");
  require_finite(phi_, "Schur symbol");
}

namespace {

// ‖u vᵀ‖ = ‖u‖‖v‖ when |φ| is exactly rank one (constant symbols, for
// instance); returns a negative value otherwise.
double rank_one_norm(const RMatrix& a) {
  Eigen::Index pi = 0;
  Eigen::Index pj = 0;
  const double pivot = a.maxCoeff(&pi, &pj);
  if (pivot == 0.0) return 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) * pivot != a(i, pj) * a(pi, j)) return -1.0;
    }
  }
  return std::sqrt(a.col(pj).squaredNorm() * a.row(pi).squaredNorm()) / pivot;
}

}  // namespace

double cob_norm_formula(const SchurSymbol& phi) {
  const RMatrix moduli = phi.matrix().cwiseAbs();
  const double exact = rank_one_norm(moduli);
  if (exact >= 0.0) return exact;
  return operator_norm(moduli.cast<Complex>());
}

sdp::SdpProblem haagerup_sdp(const SchurSymbol& phi) {
  const int n = phi.size();
  const CMatrix& f = phi.matrix();
  sdp::SdpProblem prob;
  // Block 0 is [[X, φ], [φ†, Y]]; blocks 1..2n are the scalars t − X_ii, t − Y_jj.
  prob.blocks.push_back(2 * n);
  for (int k = 0; k < 2 * n; ++k) prob.blocks.push_back(1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (f(i, j) != Complex(0.0)) prob.objective.push_back({0, i, n + j, f(i, j)});
    }
  }
  sdp::Constraint t_row;
  t_row.rhs = -1.0;
  for (int k = 0; k < 2 * n; ++k) t_row.terms.push_back({1 + k, 0, 0, -1.0});
  prob.constraints.push_back(std::move(t_row));

  for (int side = 0; side < 2; ++side) {
    const int offset = side * n;
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        const int variants = (a == b) ? 1 : 2;
        for (int v = 0; v < variants; ++v) {
          const Complex h = (v == 0) ? Complex(1.0, 0.0) : Complex(0.0, -1.0);
          sdp::Constraint row;
          row.terms.push_back({0, offset + a, offset + b, -h});
          if (a == b) row.terms.push_back({1 + offset + a, 0, 0, h});
          prob.constraints.push_back(std::move(row));
        }
      }
    }
  }
  return prob;
}

double cb_norm_haagerup(const SchurSymbol& phi, double tol) {
  const auto sol = sdp::solve(haagerup_sdp(phi), tol);
  if (sol.status != sdp::SdpStatus::Optimal) {
    throw NumericalFailure("factorization SDP: " + sdp::to_string(sol.status) + " (" + sol.message + ")");
  }
  return -sol.value();
}

CMatrix aligned_witness(const CMatrix& x) {
  const auto n = static_cast<int>(x.rows());
  CMatrix out = CMatrix::Zero(n * n, n * n);
  // e_ij ⊗ e_ij x_ij has its entry at ((i, i), (j, j)).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i * n + i, j * n + j) = x(i, j);
  }
  return out;
}

CMatrix flipped_witness(const CMatrix& x) {
  const auto n = static_cast<int>(x.rows());
  CMatrix out = CMatrix::Zero(n * n, n * n);
  // e_ji ⊗ e_ij x_ij has its entry at ((j, i), (i, j)).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(j * n + i, i * n + j) = x(i, j);
  }
  return out;
}

FlipWitnessReport verify_flip_witnesses(const CMatrix& x) {
  if (x.rows() != x.cols()) throw ShapeError("witness matrix must be square");
  FlipWitnessReport r;
  r.norm_aligned = operator_norm(aligned_witness(x));
  r.norm_flipped = operator_norm(flipped_witness(x));
  r.operator_norm_x = operator_norm(x);
  r.max_entry_x = max_abs_entry(x);
  r.pass = std::abs(r.norm_aligned - r.operator_norm_x) <= 1e-10 * (1.0 + r.operator_norm_x) &&
           std::abs(r.norm_flipped - r.max_entry_x) <= 1e-10 * (1.0 + r.max_entry_x);
  return r;
}

LinfFactorization::LinfFactorization(const SchurSymbol& phi)
    : n_(phi.size()), weights_(phi.matrix()), certified_cb_(cob_norm_formula(phi)) {}

std::vector<Complex> LinfFactorization::read_out(const CMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) throw ShapeError("read_out: shape mismatch");
  std::vector<Complex> v(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) v[static_cast<std::size_t>(i) * n_ + j] = x(i, j);
  }
  return v;
}

CMatrix LinfFactorization::reassemble(const std::vector<Complex>& values) const {
  if (values.size() != static_cast<std::size_t>(n_) * n_) throw ShapeError("reassemble: wrong length");
  CMatrix out(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) out(i, j) = weights_(i, j) * values[static_cast<std::size_t>(i) * n_ + j];
  }
  return out;
}

SuperOp LinfFactorization::inclusion_superop() const {
  const int n = n_;
  const int big = n * n;
  CMatrix choi = CMatrix::Zero(n * big, n * big);
  // J(e_ij) = e_{(i,j),(i,j)}.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int d = i * n + j;
      choi(i * big + d, j * big + d) = 1.0;
    }
  }
  return SuperOp(n, big, choi);
}

SuperOp LinfFactorization::multiplier_superop() const {
  const int n = n_;
  const int big = n * n;
  CMatrix choi = CMatrix::Zero(big * n, big * n);
  // Diagonal unit e_{(i,j),(i,j)} ↦ φ_ij e_ij; everything else ↦ 0.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int d = i * n + j;
      choi(d * n + i, d * n + j) = weights_(i, j);
    }
  }
  return SuperOp(big, n, choi);
}

LinfFactorization factor_through_linf(const SchurSymbol& phi) { return LinfFactorization(phi); }

CMatrix block_matrix(const BlockFamily& x) {
  const auto n = static_cast<Eigen::Index>(x.size());
  if (n == 0) throw ShapeError("empty block family");
  const Eigen::Index m = x[0][0].rows();
  CMatrix out(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(x[i].size()) != n) throw ShapeError("block family must be n x n");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (x[i][j].rows() != m || x[i][j].cols() != m) throw ShapeError("blocks must all be m x m");
      out.block(i * m, j * m, m, m) = x[i][j];
    }
  }
  return out;
}

double lp_of_schatten(const BlockFamily& x, SchattenP p) {
  std::vector<double> norms;
  for (const auto& row : x) {
    for (const auto& b : row) norms.push_back(schatten_norm(b, p));
  }
  double top = 0.0;
  for (double v : norms) top = std::max(top, v);
  if (p.is_infinite() || top == 0.0) return top;
  double acc = 0.0;
  for (double v : norms) acc += std::pow(v / top, p.value());
  return top * std::pow(acc, 1.0 / p.value());
}

SchattenIdentityReport schatten_identities(SchattenP p, const BlockFamily& x) {
  const CMatrix blocks = block_matrix(x);
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index m = x[0][0].rows();
  CMatrix flipped = CMatrix::Zero(n * n * m, n * n * m);
  CMatrix aligned = CMatrix::Zero(n * n * m, n * n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // e_ij ⊗ e_ji ⊗ x_ij: block row (i, j), block column (j, i).
      flipped.block((i * n + j) * m, (j * n + i) * m, m, m) = x[i][j];
      // e_ij ⊗ e_ij ⊗ x_ij: block row (i, i), block column (j, j).
      aligned.block((i * n + i) * m, (j * n + j) * m, m, m) = x[i][j];
    }
  }
  SchattenIdentityReport r;
  r.p = p.value();
  r.flipped_lhs = schatten_norm(flipped, p);
  r.flipped_rhs = lp_of_schatten(x, p);
  r.aligned_lhs = schatten_norm(aligned, p);
  r.aligned_rhs = schatten_norm(blocks, p);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); };
  r.flipped_rel_err = (r.flipped_lhs == r.flipped_rhs) ? 0.0 : rel(r.flipped_lhs, r.flipped_rhs);
  r.aligned_rel_err = (r.aligned_lhs == r.aligned_rhs) ? 0.0 : rel(r.aligned_lhs, r.aligned_rhs);
  r.pass = r.flipped_rel_err <= 1e-10 && r.aligned_rel_err <= 1e-10;
  return r;
}

namespace {

// Maximiser of Σ r_k a_k over the unit ball of ℓ_p (a_k >= 0).
std::vector<double> lp_dual_weights(const std::vector<double>& a, SchattenP p) {
  std::vector<double> r(a.size(), 0.0);
  double top = 0.0;
  for (double v : a) top = std::max(top, v);
  if (top == 0.0) return r;
  const SchattenP q = p.conjugate();
  if (p.is_infinite()) {
    std::fill(r.begin(), r.end(), 1.0);
    return r;
  }
  if (q.is_infinite()) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] == top) {
        r[k] = 1.0;
        break;
      }
    }
    return r;
  }
  double acc = 0.0;
  for (double v : a) acc += std::pow(v / top, q.value());
  const double scaled_norm = std::pow(acc, 1.0 / q.value());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = std::pow(a[k] / top / scaled_norm, q.value() - 1.0);
  return r;
}

double multiplier_value(const CMatrix& phi, const BlockFamily& x, SchattenP p) {
  BlockFamily weighted = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      weighted[i][j] *= phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return schatten_norm(block_matrix(weighted), p);
}

}  // namespace

SpBoundsReport sp_multiplier_bounds(const SchurSymbol& phi, SchattenP p, const SpSamplingOptions& options) {
  if (p.value() < 2.0) throw DomainError("sp_multiplier_bounds requires 2 <= p <= inf");
  if (options.block_size < 1 || options.trials < 1) throw DomainError("sp_multiplier_bounds: bad sampling options");
  const CMatrix& f = phi.matrix();
  const int n = phi.size();
  const int m = options.block_size;

  SpBoundsReport r;
  r.p = p.value();
  r.max_entry = max_abs_entry(f);
  r.cob_formula = cob_norm_formula(phi);
  const double theta = p.is_infinite() ? 0.0 : 2.0 / p.value();
  r.upper = std::pow(r.max_entry, theta) * std::pow(r.cob_formula, 1.0 - theta);

  // Start -1 is the single block at the largest |φ_ij|; the rest are random.
  Eigen::Index top_i = 0;
  Eigen::Index top_j = 0;
  f.cwiseAbs().maxCoeff(&top_i, &top_j);
  for (int t = -1; t < options.trials; ++t) {
    BlockFamily x(n, std::vector<CMatrix>(n, CMatrix::Zero(m, m)));
    if (t < 0) {
      x[top_i][top_j] = CMatrix::Identity(m, m);
    } else {
      Rng rng(trial_seed(options.seed, static_cast<std::uint64_t>(t)));
      for (auto& row : x) {
        for (auto& b : row) b = rng.gaussian(m, m);
      }
    }
    double norm = lp_of_schatten(x, p);
    for (auto& row : x) {
      for (auto& b : row) b /= norm;
    }
    double value = multiplier_value(f, x, p);
    for (int step = 0; step < options.ascent_steps; ++step) {
      BlockFamily weighted = x;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) weighted[i][j] *= f(i, j);
      }
      const CMatrix y = schatten_dual_element(block_matrix(weighted), p.conjugate());
      // Block-wise maximisation of Re Σ ⟨conj(φ_ij) Y_ij, x_ij⟩.
      std::vector<double> dual_norms;
      BlockFamily dirs(n, std::vector<CMatrix>(n));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const CMatrix w = std::conj(f(i, j)) * y.block(i * m, j * m, m, m);
          dual_norms.push_back(schatten_norm(w, p.conjugate()));
          dirs[i][j] = schatten_dual_element(w, p);
        }
      }
      const auto weights = lp_dual_weights(dual_norms, p);
      BlockFamily next = dirs;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) next[i][j] *= weights[static_cast<std::size_t>(i) * n + j];
      }
      norm = lp_of_schatten(next, p);
      if (norm == 0.0) break;
      for (auto& row : next) {
        for (auto& b : row) b /= norm;
      }
      const double next_value = multiplier_value(f, next, p);
      if (next_value <= value * (1.0 + 1e-14)) {
        value = std::max(value, next_value);
        break;
      }
      value = next_value;
      x = std::move(next);
    }
    r.lower = std::max(r.lower, value);
  }

  r.ordered = r.lower <= r.upper + 1e-8;
  if (p.is_infinite()) {
    r.endpoint_ok = r.upper == r.cob_formula && r.lower >= 0.95 * r.cob_formula;
  } else if (p.value() == 2.0) {
    r.endpoint_ok = std::abs(r.lower - r.max_entry) <= 1e-8 && std::abs(r.upper - r.max_entry) <= 1e-8;
  }
  r.pass = r.ordered && r.endpoint_ok;
  return r;
}

S1DominationWitness make_s1_witness(const RVector& lambda, const RVector& mu) {
  if (lambda.size() != mu.size() || lambda.size() < 1) throw ShapeError("s1 witness: λ and μ must have equal length");
  if ((lambda.array() < 0.0).any() || (mu.array() < 0.0).any()) {
    throw DomainError("s1 witness: λ and μ must be entrywise nonnegative");
  }
  const double sl = lambda.sum();
  const double sm = mu.sum();
  if (sl == 0.0 && sm == 0.0) throw DomainError("s1 witness: λ and μ are both zero");
  const auto n = lambda.size();
  S1DominationWitness w;
  w.lambda = lambda;
  w.mu = mu;
  w.c = std::max(sl, sm);
  const CMatrix uniform = CMatrix::Identity(n, n) / static_cast<double>(n);
  w.lambda_degenerate = sl == 0.0;
  w.mu_degenerate = sm == 0.0;
  w.f1 = w.lambda_degenerate ? uniform : CMatrix((lambda / sl).cast<Complex>().asDiagonal());
  w.f2 = w.mu_degenerate ? uniform : CMatrix((mu / sm).cast<Complex>().asDiagonal());
  w.g1 = w.f1;
  w.g2 = w.f2;
  return w;
}

Complex s1_pairing(const CMatrix& phi, const CMatrix& a, const CMatrix& b) {
  if (phi.rows() != a.rows() || phi.cols() != a.cols() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("s1_pairing: shape mismatch");
  }
  return (phi.array() * a.array() * b.array()).sum();
}

double s1_bound(const S1DominationWitness& w, const CMatrix& a, const CMatrix& b) {
  auto state = [](const CMatrix& f, const CMatrix& x) { return std::max(0.0, (f * x).trace().real()); };
  const CMatrix aa_star = a * a.adjoint();
  const CMatrix a_star_a = a.adjoint() * a;
  const CMatrix bb_star = b * b.adjoint();
  const CMatrix b_star_b = b.adjoint() * b;
  double rhs = 0.0;
  // Row weights λ_i pair with the row norms (aa*)_ii, column weights μ_j
  // with the column norms (a*a)_jj.
  if (!w.lambda_degenerate) rhs += std::sqrt(state(w.f1, aa_star) * state(w.g1, bb_star));
  if (!w.mu_degenerate) rhs += std::sqrt(state(w.f2, a_star_a) * state(w.g2, b_star_b));
  return w.c * rhs;
}

S1CheckReport s1_multiplier_check(const SchurSymbol& phi, const S1DominationWitness& w, int trials,
                                  std::uint64_t seed) {
  const CMatrix& f = phi.matrix();
  const int n = phi.size();
  if (w.lambda.size() != n) throw ShapeError("s1 check: witness length differs from symbol size");
  S1CheckReport r;
  r.c = w.c;
  r.dominated = true;
  const double slack = 1e-12 * (1.0 + max_abs_entry(f));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double excess = std::abs(f(i, j)) - (w.lambda(i) + w.mu(j));
      if (excess > r.max_violation) r.max_violation = excess;
      if (excess > slack && r.dominated) {
        r.dominated = false;
        r.violation_row = i;
        r.violation_col = j;
      }
    }
  }
  if (!r.dominated) return r;

  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
    const CMatrix a = rng.gaussian(n, n);
    const CMatrix b = rng.gaussian(n, n);
    const double lhs = std::abs(s1_pairing(f, a, b));
    const double rhs = s1_bound(w, a, b);
    double ratio = 0.0;
    if (rhs > 0.0) {
      ratio = lhs / rhs;
    } else if (lhs > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    r.max_ratio = std::max(r.max_ratio, ratio);
    ++r.trials;
  }
  r.pass = r.max_ratio <= 1.0 + 1e-9;
  return r;
}

}  // namespace cob
