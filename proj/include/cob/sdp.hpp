#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cob/linalg.hpp"

namespace cob::sdp {

/// One coefficient of a Hermitian block matrix. Only one triangle is stored:
/// an entry at (row, col) with row != col also places conj(value) at
/// (col, row). Diagonal values must be real.
struct Entry {
  int block = 0;
  int row = 0;
  int col = 0;
  Complex value;
};

struct Constraint {
  std::vector<Entry> terms;
  double rhs = 0.0;
};

/// Standard-form SDP over block-diagonal Hermitian PSD variables:
///
///   minimize   Σ_b ⟨C_b, X_b⟩
///   subject to Σ_b ⟨A_kb, X_b⟩ = rhs_k,   X_b ⪰ 0,
///
/// where ⟨H, X⟩ = Tr(H X). The dual is max Σ rhs_k y_k subject to
/// Z = C − Σ y_k A_k ⪰ 0.
struct SdpProblem {
  std::vector<int> blocks;
  std::vector<Entry> objective;
  std::vector<Constraint> constraints;

  /// Checks block indices, ranges and Hermitian diagonals (|Im| <= 1e-12).
  void validate() const;
  int total_dimension() const;
};

enum class SdpStatus { Optimal, Infeasible, NumericalFailure };

std::string to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  double primal_value = 0.0;
  double dual_value = 0.0;
  /// |primal_value − dual_value|.
  double gap = 0.0;
  /// ⟨X, Z⟩ at the returned iterate.
  double complementarity = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  /// True when the bisection/alternating-projection path produced the result;
  /// its dual_value is then the highest level found infeasible, not a dual
  /// certificate.
  bool used_fallback = false;
  std::vector<CMatrix> primal_blocks;
  std::vector<CMatrix> dual_slack_blocks;
  std::vector<double> dual_multipliers;
  std::string message;

  /// Midpoint of the certified bracket.
  double value() const { return 0.5 * (primal_value + dual_value); }
  double scale() const;
};

struct SdpOptions {
  /// Relative duality gap target, measured against 1 + |primal_value|.
  double tol = 1e-7;
  /// Trace bound on X (and norm bound on y) beyond which the problem is
  /// declared infeasible.
  double big_m = 1e6;
  int max_iterations = 120;
  bool enable_fallback = true;
  /// Skip the interior-point path entirely (testing the fallback).
  bool force_fallback = false;
  int projection_budget = 20000;
};

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});
SdpSolution solve(const SdpProblem& problem, double tol);

/// The same problem with every Hermitian block replaced by its real
/// symmetric doubling [[Re, −Im], [Im, Re]] (stored with zero imaginary
/// parts). Has the same optimal value.
SdpProblem real_embedding(const SdpProblem& problem);

// Debug dump format (whitespace separated, '#' comments allowed):
//
//   blocks <K>
//   <d_1> ... <d_K>
//   constraints <M>
//   constraint <k> <nnz>
//   <block> <row> <col> <re> <im>    nnz lines, one stored triangle
//   ...
//   objective <nnz>
//   <block> <row> <col> <re> <im>
//   rhs
//   <b_1> ... <b_M>
void write_problem(std::ostream& os, const SdpProblem& problem);
SdpProblem read_problem(std::istream& is);

}  // namespace cob::sdp
