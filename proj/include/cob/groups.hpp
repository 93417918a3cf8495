#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cob/linalg.hpp"
#include "cob/superop.hpp"

namespace cob::groups {

/// Finite group given by its Cayley table. Elements are 0..order-1.
class FiniteGroup {
 public:
  /// Validates the table (Latin square, associativity, identity, inverses).
  FiniteGroup(std::vector<std::vector<int>> mult, std::vector<std::string> labels = {});

  int order() const { return static_cast<int>(mult_.size()); }
  int mul(int s, int t) const { return mult_[s][t]; }
  int inv(int s) const { return inv_[s]; }
  int identity() const { return id_; }
  const std::string& label(int s) const { return labels_[s]; }
  const std::vector<std::vector<int>>& table() const { return mult_; }

 private:
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  int id_ = 0;
  std::vector<std::string> labels_;
};

/// Unitary representation: one d×d matrix per group element.
struct Irrep {
  int dim = 0;
  std::vector<CMatrix> matrices;

  Complex character(int t) const { return matrices[t].trace(); }
};

/// Complete set of pairwise inequivalent unitary irreps of a group.
class IrrepCatalog {
 public:
  /// Runs every validation check; throws DomainError on failure.
  IrrepCatalog(FiniteGroup group, std::vector<Irrep> irreps);

  const FiniteGroup& group() const { return group_; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  std::vector<int> dimensions() const;

 private:
  FiniteGroup group_;
  std::vector<Irrep> irreps_;
};

struct CatalogValidation {
  double homomorphism_err = 0.0;
  double unitarity_err = 0.0;
  double irreducibility_err = 0.0;
  double orthogonality_err = 0.0;
  int dimension_sum = 0;
  bool pass = false;
};

/// Measures every catalog invariant; tolerances 1e-12 (homomorphism,
/// unitarity) and 1e-10 (character norms and orthogonality).
CatalogValidation validate(const FiniteGroup& g, const std::vector<Irrep>& irreps);

/// Names: "cyclic:k" (1 <= k <= 12), "S3", "D4", "Q8".
IrrepCatalog catalog(const std::string& name);
std::vector<std::string> catalog_names();

/// Relabels elements by the permutation `perm` (new index of old element s
/// is perm[s]); irreps are carried along.
IrrepCatalog relabel(const IrrepCatalog& cat, const std::vector<int>& perm);

// Text format:
//   order N
//   N lines of N element indices (the multiplication table)
//   irrep d                    repeated per irrep
//   N matrices, each d lines of d entries written "re im"
IrrepCatalog read_catalog(std::istream& is);
void write_catalog(std::ostream& os, const IrrepCatalog& cat);

/// Function f: G → ℂ, one value per element.
using GroupFunction = std::vector<Complex>;

GroupFunction delta(const FiniteGroup& g, int t, Complex scale = 1.0);
GroupFunction constant(const FiniteGroup& g, Complex value);

/// f̂(π) = (1/N) Σ_t f(t) π(t)†.
CMatrix fourier(const GroupFunction& f, const Irrep& pi);
/// (f*g)(s) = (1/N) Σ_t f(t) g(t⁻¹s).
GroupFunction convolve(const FiniteGroup& g, const GroupFunction& f, const GroupFunction& h);

struct Convolutors {
  CMatrix left;   // λ(f): x ↦ f * x
  CMatrix right;  // ρ(g): x ↦ x * g
};

Convolutors convolutor_matrices(const FiniteGroup& g, const GroupFunction& f, const GroupFunction& h);

/// Unitary U with columns √(d_π/N)·conj(π_kc(t)), ordered by irrep (catalog
/// order), then copy index c, then row index k. U† λ(N δ_t) U is
/// block-diagonal with d_π consecutive copies of π(t).
CMatrix peter_weyl_unitary(const IrrepCatalog& cat);

/// Max entrywise deviation of U† λ(N δ_t) U from ⊕_π (I_{d_π} ⊗ π(t)) over all t.
double peter_weyl_pattern_error(const IrrepCatalog& cat);

struct BlockReport {
  int irrep = 0;
  int dim = 0;
  /// ‖f̂(π)‖₂ · ‖ĝ(π)‖₂.
  double formula = 0.0;
  /// SDP value of cob(x ↦ f̂(π) x ĝ(π)).
  double sdp = 0.0;
};

struct GroupMultiplierReport {
  double formula_value = 0.0;
  std::vector<BlockReport> per_block;
  /// Max deviation of U† λ(f)ρ(g) U from ⊕_π (B_π ⊗ A_π) with
  /// A_π = (1/N) Σ f(t) π(t), B_π = (1/N) Σ g(t) π(t)ᵀ.
  double block_structure_err = 0.0;
  double max_block_discrepancy = 0.0;
  bool pass = false;
};

/// sup_π ‖f̂(π)‖₂‖ĝ(π)‖₂, with the per-block SDP oracle when `with_sdp`.
GroupMultiplierReport group_multiplier_cob(const GroupFunction& f, const GroupFunction& g, const IrrepCatalog& cat,
                                           bool with_sdp = true, double tol = 1e-7);

/// Norm of the identity map on the group algebra: max_π d_π.
double identity_cob(const IrrepCatalog& cat);

struct KestenReport {
  double l1_value = 0.0;
  double matrix_norm = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

/// Σ|f(t)| against ‖[|f(st⁻¹)|]‖.
KestenReport kesten_check(const FiniteGroup& g, const GroupFunction& f);
CMatrix translation_modulus_matrix(const FiniteGroup& g, const GroupFunction& f);

struct HerzSchurComparison {
  /// cob norm of the all-ones N×N Schur multiplier.
  double schur_cob = 0.0;
  /// cob norm of the identity on the group algebra.
  double herz_schur_cob = 0.0;
  double ratio = 0.0;
};

HerzSchurComparison herz_schur_vs_schur_report(const IrrepCatalog& cat);

}  // namespace cob::groups
