#pragma once

#include <cstdint>
#include <vector>

#include "cob/linalg.hpp"
#include "cob/sdp.hpp"
#include "cob/superop.hpp"

namespace cob {

/// Symbol φ = [φ_ij] of the Schur multiplier M_φ: X ↦ [φ_ij X_ij].
class SchurSymbol {
 public:
  explicit SchurSymbol(CMatrix phi);

  const CMatrix& matrix() const { return phi_; }
  int size() const { return static_cast<int>(phi_.rows()); }
  SuperOp as_superop() const { return from_schur(phi_); }

 private:
  CMatrix phi_;
};

/// Completely co-bounded norm of M_φ in closed form: the operator norm of
/// the entrywise modulus [|φ_ij|].
double cob_norm_formula(const SchurSymbol& phi);

/// Factorization SDP for ‖M_φ‖_cb: minimize t subject to
/// [[X, φ], [φ†, Y]] ⪰ 0, X_ii <= t, Y_jj <= t. Optimal value is −‖M_φ‖_cb
/// (dual standard form; strictly feasible with X = Y = I, t = 2).
sdp::SdpProblem haagerup_sdp(const SchurSymbol& phi);
double cb_norm_haagerup(const SchurSymbol& phi, double tol = 1e-7);

struct FlipWitnessReport {
  /// ‖Σ e_ij ⊗ e_ij x_ij‖ and ‖Σ e_ji ⊗ e_ij x_ij‖.
  double norm_aligned = 0.0;
  double norm_flipped = 0.0;
  double operator_norm_x = 0.0;
  double max_entry_x = 0.0;
  bool pass = false;
};

/// Assembles both n²×n² witness matrices and checks that their norms are
/// ‖x‖_∞ and max|x_ij| (tolerance 1e-10, relative to 1 + value).
FlipWitnessReport verify_flip_witnesses(const CMatrix& x);
CMatrix aligned_witness(const CMatrix& x);
CMatrix flipped_witness(const CMatrix& x);

/// M_φ written as B(ℓ₂^n) → ℓ∞(n×n) → B(ℓ₂^n): the inclusion reads the
/// entries out, the weighted map puts φ_ij x_ij back.
class LinfFactorization {
 public:
  explicit LinfFactorization(const SchurSymbol& phi);

  int n() const { return n_; }
  const CMatrix& weights() const { return weights_; }
  /// ‖𝓜_φ: ℓ∞(n×n) → M_n‖_cb = ‖[|φ_ij|]‖.
  double certified_cb() const { return certified_cb_; }

  /// Inclusion J: the entries of x as an element of ℓ∞(n×n).
  std::vector<Complex> read_out(const CMatrix& x) const;
  /// Weighted re-assembly 𝓜_φ: ℓ∞(n×n) → M_n.
  CMatrix reassemble(const std::vector<Complex>& values) const;
  CMatrix apply(const CMatrix& x) const { return reassemble(read_out(x)); }

  /// J as a map M_n → D_{n²} ⊂ M_{n²} (diagonal algebra).
  SuperOp inclusion_superop() const;
  /// 𝓜_φ ∘ (diagonal compression) as a map M_{n²} → M_n.
  SuperOp multiplier_superop() const;

 private:
  int n_;
  CMatrix weights_;
  double certified_cb_;
};

LinfFactorization factor_through_linf(const SchurSymbol& phi);

/// n×n family of m×m blocks x_ij.
using BlockFamily = std::vector<std::vector<CMatrix>>;

struct SchattenIdentityReport {
  double p = 0.0;
  /// ‖Σ e_ij ⊗ e_ji ⊗ x_ij‖_p against (Σ‖x_ij‖_p^p)^{1/p}.
  double flipped_lhs = 0.0;
  double flipped_rhs = 0.0;
  /// ‖Σ e_ij ⊗ e_ij ⊗ x_ij‖_p against ‖[x_ij]‖_p.
  double aligned_lhs = 0.0;
  double aligned_rhs = 0.0;
  double flipped_rel_err = 0.0;
  double aligned_rel_err = 0.0;
  bool pass = false;
};

CMatrix block_matrix(const BlockFamily& x);
/// (Σ ‖x_ij‖_p^p)^{1/p}, max for p = ∞.
double lp_of_schatten(const BlockFamily& x, SchattenP p);
SchattenIdentityReport schatten_identities(SchattenP p, const BlockFamily& x);

struct SpBoundsReport {
  double p = 0.0;
  /// Best sampled ‖[φ_ij x_ij]‖_p over (Σ‖x_ij‖_p^p)^{1/p} <= 1.
  double lower = 0.0;
  /// max|φ|^{2/p} · ‖|φ|‖^{1−2/p}: interpolation between the p = 2 and
  /// p = ∞ endpoints (derived here, not a closed form for the norm).
  double upper = 0.0;
  double max_entry = 0.0;
  double cob_formula = 0.0;
  bool ordered = false;
  /// Endpoint checks; vacuous (true) for 2 < p < ∞.
  bool endpoint_ok = true;
  bool pass = false;
};

struct SpSamplingOptions {
  int trials = 50;
  int ascent_steps = 50;
  std::uint64_t seed = 0;
  /// Size m of the blocks x_ij.
  int block_size = 1;
};

SpBoundsReport sp_multiplier_bounds(const SchurSymbol& phi, SchattenP p, const SpSamplingOptions& options);

/// Domination data |φ_ij| <= λ_i + μ_j and the diagonal states built from it.
struct S1DominationWitness {
  RVector lambda;
  RVector mu;
  /// max(Σλ, Σμ).
  double c = 0.0;
  CMatrix f1, g1;  // diag(λ)/Σλ
  CMatrix f2, g2;  // diag(μ)/Σμ
  /// A zero weight vector has no normalised state; the uniform state is
  /// stored instead and its term is dropped from the bound.
  bool lambda_degenerate = false;
  bool mu_degenerate = false;
};

S1DominationWitness make_s1_witness(const RVector& lambda, const RVector& mu);

struct S1CheckReport {
  bool dominated = false;
  int violation_row = -1;
  int violation_col = -1;
  double max_violation = 0.0;
  double c = 0.0;
  /// max over trials of |⟨M_φ(a), b⟩| / RHS.
  double max_ratio = 0.0;
  int trials = 0;
  bool pass = false;
};

/// Bilinear pairing ⟨M_φ(a), b⟩ = Σ φ_ij a_ij b_ij.
Complex s1_pairing(const CMatrix& phi, const CMatrix& a, const CMatrix& b);
/// c·(√(f₁(aa*) g₁(bb*)) + √(f₂(a*a) g₂(b*b))); λ weights rows, μ columns.
double s1_bound(const S1DominationWitness& w, const CMatrix& a, const CMatrix& b);

S1CheckReport s1_multiplier_check(const SchurSymbol& phi, const S1DominationWitness& w, int trials,
                                  std::uint64_t seed);

}  // namespace cob
