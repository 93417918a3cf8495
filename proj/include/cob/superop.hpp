#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cob/linalg.hpp"
#include "cob/sdp.hpp"

namespace cob {

/// Linear map Φ: M_n → M_m stored through its Choi matrix
///
///   J(Φ) = Σ_ij e_ij ⊗ Φ(e_ij)        (input index outer),
///
/// so block (i, j) of the nm×nm matrix J is Φ(e_ij).
class SuperOp {
 public:
  SuperOp(int in_dim, int out_dim, CMatrix choi);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const CMatrix& choi() const { return choi_; }
  /// Φ(e_ij), read back from the Choi matrix.
  CMatrix image_of_unit(int i, int j) const;

  CMatrix apply(const CMatrix& x) const;
  /// (id_k ⊗ Φ) on a kn×kn block matrix.
  CMatrix apply_amplified(const CMatrix& x, int k) const;

  static SuperOp identity(int n);
  static SuperOp transpose(int n);
  /// Schur multiplier X ↦ φ ∘ X.
  static SuperOp schur(const CMatrix& phi);
  /// X ↦ a X b for n×n matrices a, b.
  static SuperOp sandwich(const CMatrix& a, const CMatrix& b);

 private:
  int in_dim_;
  int out_dim_;
  CMatrix choi_;
};

inline SuperOp identity_map(int n) { return SuperOp::identity(n); }
inline SuperOp transpose_map(int n) { return SuperOp::transpose(n); }
inline SuperOp from_schur(const CMatrix& phi) { return SuperOp::schur(phi); }
inline SuperOp sandwich(const CMatrix& a, const CMatrix& b) { return SuperOp::sandwich(a, b); }

/// outer ∘ inner.
SuperOp compose(const SuperOp& outer, const SuperOp& inner);
/// Acts as Φ_k on the k-th diagonal block and discards off-diagonal blocks.
SuperOp direct_sum(const std::vector<SuperOp>& parts);
/// Adjoint for the Hilbert–Schmidt inner product: ⟨Φ(X), Y⟩ = ⟨X, Φ†(Y)⟩.
SuperOp hs_adjoint(const SuperOp& phi);

/// Certified output of an SDP-backed norm computation.
struct NormCertificate {
  double value = 0.0;
  /// Bracket [lower, upper] returned by the solver.
  double lower = 0.0;
  double upper = 0.0;
  sdp::SdpSolution solution;
};

/// The SDP whose optimal value is −‖Ψ‖_⋄ (completely bounded 1→1 norm of Ψ):
/// minimize t over Hermitian Y₀, Y₁ with
///   [[Y₀, −J], [−J†, Y₁]] ⪰ 0,   t·I − Tr_out Y_i ⪰ 0,
/// written as the dual of a standard-form problem. Both sides are strictly
/// feasible (Y_i = c·I with t large; X = blocks of I/(2n)).
sdp::SdpProblem diamond_sdp(const SuperOp& psi);

NormCertificate diamond_norm_certified(const SuperOp& psi, double tol = 1e-7);
double diamond_norm(const SuperOp& psi, double tol = 1e-7);

/// ∞→∞ completely bounded norm, computed as ‖hs_adjoint(Φ)‖_⋄.
NormCertificate cb_norm_certified(const SuperOp& phi, double tol = 1e-7);
double cb_norm(const SuperOp& phi, double tol = 1e-7);

/// ‖Φ‖_cob = ‖T_m ∘ Φ‖_cb.
double cob_norm(const SuperOp& phi, double tol = 1e-7);

/// Completely co-bounded norm of Ψ viewed as a map on the trace class,
/// ‖T ∘ Ψ‖_⋄. For Ψ = hs_adjoint(Φ) this is the dual computation of
/// cob_norm(Φ).
double cob_norm_trace_class(const SuperOp& psi, double tol = 1e-7);

/// ‖(id_k ⊗ Φ)(X)‖_∞ / ‖X‖_∞.
double amplified_ratio(const SuperOp& phi, const CMatrix& x, int k);

struct SamplerOptions {
  int trials = 50;
  int ascent_steps = 200;
  std::uint64_t seed = 0;
  /// Extra deterministic starting points, each a kn×kn matrix.
  std::vector<CMatrix> starts;
};

/// Lower bound for ‖Φ‖_cb: best ‖(id_k ⊗ Φ)(X)‖ found over ‖X‖ <= 1 by
/// alternating singular-vector / polar ascent from random unitary starts.
double cb_lower_bound_sampler(const SuperOp& phi, int k, const SamplerOptions& options);

}  // namespace cob
