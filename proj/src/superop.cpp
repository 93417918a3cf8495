#include "cob/superop.hpp"

#include <cmath>

#include "cob/random.hpp"

namespace cob {

SuperOp::SuperOp(int in_dim, int out_dim, CMatrix choi) : in_dim_(in_dim), out_dim_(out_dim), choi_(std::move(choi)) {
  if (in_dim < 1 || out_dim < 1) throw DomainError("SuperOp: dimensions must be positive");
  if (choi_.rows() != in_dim * out_dim || choi_.cols() != in_dim * out_dim) {
    throw ShapeError("SuperOp: Choi matrix side must equal in_dim * out_dim");
  }
  require_finite(choi_, "Choi matrix");
}

CMatrix SuperOp::image_of_unit(int i, int j) const {
  return choi_.block(i * out_dim_, j * out_dim_, out_dim_, out_dim_);
}

CMatrix SuperOp::apply(const CMatrix& x) const {
  if (x.rows() != in_dim_ || x.cols() != in_dim_) throw ShapeError("apply: input must be in_dim x in_dim");
  CMatrix out = CMatrix::Zero(out_dim_, out_dim_);
  for (int i = 0; i < in_dim_; ++i) {
    for (int j = 0; j < in_dim_; ++j) {
      if (x(i, j) != Complex(0.0)) out += x(i, j) * image_of_unit(i, j);
    }
  }
  return out;
}

CMatrix SuperOp::apply_amplified(const CMatrix& x, int k) const {
  if (k < 1 || x.rows() != k * in_dim_ || x.cols() != k * in_dim_) {
    throw ShapeError("apply_amplified: input must be k*in_dim square");
  }
  CMatrix out(k * out_dim_, k * out_dim_);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      out.block(a * out_dim_, b * out_dim_, out_dim_, out_dim_) =
          apply(x.block(a * in_dim_, b * in_dim_, in_dim_, in_dim_));
    }
  }
  return out;
}

SuperOp SuperOp::identity(int n) {
  CMatrix j = CMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) j(a * n + a, b * n + b) = 1.0;
  }
  return SuperOp(n, n, j);
}

SuperOp SuperOp::transpose(int n) {
  CMatrix j = CMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) j(a * n + b, b * n + a) = 1.0;
  }
  return SuperOp(n, n, j);
}

SuperOp SuperOp::schur(const CMatrix& phi) {
  if (phi.rows() != phi.cols()) throw ShapeError("Schur symbol must be square");
  const auto n = static_cast<int>(phi.rows());
  CMatrix j = CMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) j(a * n + a, b * n + b) = phi(a, b);
  }
  return SuperOp(n, n, j);
}

SuperOp SuperOp::sandwich(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ShapeError("sandwich: a and b must be square of equal size");
  }
  const auto n = static_cast<int>(a.rows());
  CMatrix j(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) j.block(i * n, k * n, n, n) = a.col(i) * b.row(k);
  }
  return SuperOp(n, n, j);
}

SuperOp compose(const SuperOp& outer, const SuperOp& inner) {
  if (outer.in_dim() != inner.out_dim()) throw ShapeError("compose: dimension mismatch");
  const int n = inner.in_dim();
  const int m = outer.out_dim();
  CMatrix j(n * m, n * m);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) j.block(a * m, b * m, m, m) = outer.apply(inner.image_of_unit(a, b));
  }
  return SuperOp(n, m, j);
}

SuperOp direct_sum(const std::vector<SuperOp>& parts) {
  if (parts.empty()) throw DomainError("direct_sum: empty list");
  int n = 0;
  int m = 0;
  for (const auto& p : parts) {
    n += p.in_dim();
    m += p.out_dim();
  }
  CMatrix j = CMatrix::Zero(n * m, n * m);
  int in_off = 0;
  int out_off = 0;
  for (const auto& p : parts) {
    for (int a = 0; a < p.in_dim(); ++a) {
      for (int b = 0; b < p.in_dim(); ++b) {
        j.block((in_off + a) * m + out_off, (in_off + b) * m + out_off, p.out_dim(), p.out_dim()) =
            p.image_of_unit(a, b);
      }
    }
    in_off += p.in_dim();
    out_off += p.out_dim();
  }
  return SuperOp(n, m, j);
}

SuperOp hs_adjoint(const SuperOp& phi) {
  const int n = phi.in_dim();
  const int m = phi.out_dim();
  const CMatrix& j = phi.choi();
  CMatrix out(n * m, n * m);
  // Φ†(e_ab)_ij = conj(Φ(e_ij)_ab).
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) out(a * n + i, b * n + k) = std::conj(j(i * m + a, k * m + b));
      }
    }
  }
  return SuperOp(m, n, out);
}

sdp::SdpProblem diamond_sdp(const SuperOp& psi) {
  const int in = psi.in_dim();
  const int out = psi.out_dim();
  const int d = in * out;
  const CMatrix& j = psi.choi();

  sdp::SdpProblem prob;
  prob.blocks = {2 * d, in, in};
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (j(r, c) != Complex(0.0)) prob.objective.push_back({0, r, d + c, -j(r, c)});
    }
  }

  sdp::Constraint t_row;
  t_row.rhs = -1.0;
  for (int i = 0; i < in; ++i) {
    t_row.terms.push_back({1, i, i, -1.0});
    t_row.terms.push_back({2, i, i, -1.0});
  }
  prob.constraints.push_back(std::move(t_row));

  // Hermitian basis of Y_side: e_aa, e_ab + e_ba, −i e_ab + i e_ba.
  for (int side = 0; side < 2; ++side) {
    const int offset = side * d;
    const int trace_block = 1 + side;
    for (int a = 0; a < d; ++a) {
      for (int b = a; b < d; ++b) {
        const int variants = (a == b) ? 1 : 2;
        for (int v = 0; v < variants; ++v) {
          const Complex h = (v == 0) ? Complex(1.0, 0.0) : Complex(0.0, -1.0);
          sdp::Constraint row;
          row.terms.push_back({0, offset + a, offset + b, -h});
          const int ia = a / out;
          const int ib = b / out;
          if (a % out == b % out) row.terms.push_back({trace_block, ia, ib, h});
          prob.constraints.push_back(std::move(row));
        }
      }
    }
  }
  return prob;
}

NormCertificate diamond_norm_certified(const SuperOp& psi, double tol) {
  NormCertificate cert;
  cert.solution = sdp::solve(diamond_sdp(psi), tol);
  if (cert.solution.status != sdp::SdpStatus::Optimal) {
    throw NumericalFailure("diamond norm SDP: " + sdp::to_string(cert.solution.status) + " (" +
                           cert.solution.message + ")");
  }
  cert.lower = -cert.solution.primal_value;
  cert.upper = -cert.solution.dual_value;
  cert.value = -cert.solution.value();
  return cert;
}

double diamond_norm(const SuperOp& psi, double tol) { return diamond_norm_certified(psi, tol).value; }

NormCertificate cb_norm_certified(const SuperOp& phi, double tol) {
  return diamond_norm_certified(hs_adjoint(phi), tol);
}

double cb_norm(const SuperOp& phi, double tol) { return cb_norm_certified(phi, tol).value; }

double cob_norm(const SuperOp& phi, double tol) {
  return cb_norm(compose(SuperOp::transpose(phi.out_dim()), phi), tol);
}

double cob_norm_trace_class(const SuperOp& psi, double tol) {
  return diamond_norm(compose(SuperOp::transpose(psi.out_dim()), psi), tol);
}

double amplified_ratio(const SuperOp& phi, const CMatrix& x, int k) {
  const double denom = operator_norm(x);
  if (denom == 0.0) return 0.0;
  return operator_norm(phi.apply_amplified(x, k)) / denom;
}

double cb_lower_bound_sampler(const SuperOp& phi, int k, const SamplerOptions& options) {
  if (k < 1) throw DomainError("cb_lower_bound_sampler: k must be >= 1");
  const int dim = k * phi.in_dim();
  const SuperOp adj = hs_adjoint(phi);

  auto ascend = [&](CMatrix x) {
    const double nx = operator_norm(x);
    if (nx == 0.0) return 0.0;
    x /= nx;
    double best = 0.0;
    for (int step = 0; step < options.ascent_steps; ++step) {
      const CMatrix y = phi.apply_amplified(x, k);
      const Svd d = svd(y);
      const double value = d.s.size() ? d.s(0) : 0.0;
      if (value <= best * (1.0 + 1e-13) && step > 0) {
        best = std::max(best, value);
        break;
      }
      best = std::max(best, value);
      if (value == 0.0) break;
      const CMatrix w = adj.apply_amplified(d.u.col(0) * d.v.col(0).adjoint(), k);
      const CMatrix next = schatten_dual_element(w, SchattenP::infinity());
      if (operator_norm(next) == 0.0) break;
      x = next;
    }
    return best;
  };

  double best = 0.0;
  for (const auto& s : options.starts) {
    if (s.rows() != dim || s.cols() != dim) throw ShapeError("sampler start has the wrong shape");
    best = std::max(best, ascend(s));
  }
  for (int t = 0; t < options.trials; ++t) {
    Rng rng(trial_seed(options.seed, static_cast<std::uint64_t>(t)));
    best = std::max(best, ascend(rng.unitary(dim)));
  }
  return best;
}

}  // namespace cob
