#include "cob/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace cob::sdp {

namespace {

constexpr double kHermitianTol = 1e-12;

// Real symmetric coefficient; both triangles present.
struct RTerm {
  int block;
  int row;
  int col;
  double value;
};

using Blocks = std::vector<RMatrix>;

struct RealProblem {
  std::vector<int> sizes;
  Blocks c;
  std::vector<std::vector<RTerm>> a;
  RVector b;
};

Entry normalized(const Entry& e) {
  if (e.row <= e.col) return e;
  return Entry{e.block, e.col, e.row, std::conj(e.value)};
}

void push_symmetric(std::vector<RTerm>& out, int block, int p, int q, double v) {
  if (v == 0.0) return;
  out.push_back({block, p, q, v});
  if (p != q) out.push_back({block, q, p, v});
}

// Coefficients are halved so that the real Frobenius product of the doubled
// matrices equals Tr(H X) of the complex ones.
void embed_entry(std::vector<RTerm>& out, const Entry& raw, int n) {
  const Entry e = normalized(raw);
  const double re = 0.5 * e.value.real();
  const double im = 0.5 * e.value.imag();
  push_symmetric(out, e.block, e.row, e.col, re);
  push_symmetric(out, e.block, n + e.row, n + e.col, re);
  if (e.row != e.col) {
    push_symmetric(out, e.block, e.row, n + e.col, -im);
    push_symmetric(out, e.block, e.col, n + e.row, im);
  }
}

RealProblem embed(const SdpProblem& p) {
  RealProblem r;
  for (int n : p.blocks) r.sizes.push_back(2 * n);
  r.c.reserve(p.blocks.size());
  for (int s : r.sizes) r.c.push_back(RMatrix::Zero(s, s));
  std::vector<RTerm> obj;
  for (const auto& e : p.objective) embed_entry(obj, e, p.blocks[e.block]);
  for (const auto& t : obj) r.c[t.block](t.row, t.col) += t.value;
  r.a.resize(p.constraints.size());
  r.b.resize(static_cast<Eigen::Index>(p.constraints.size()));
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    for (const auto& e : p.constraints[k].terms) embed_entry(r.a[k], e, p.blocks[e.block]);
    std::stable_sort(r.a[k].begin(), r.a[k].end(),
                     [](const RTerm& x, const RTerm& y) { return x.block < y.block; });
    r.b(static_cast<Eigen::Index>(k)) = p.constraints[k].rhs;
  }
  return r;
}

double inner(const Blocks& x, const Blocks& y) {
  double acc = 0.0;
  for (std::size_t b = 0; b < x.size(); ++b) acc += (x[b].array() * y[b].array()).sum();
  return acc;
}

double frob(const Blocks& x) { return std::sqrt(inner(x, x)); }

RVector apply_a(const RealProblem& p, const Blocks& x) {
  RVector out(static_cast<Eigen::Index>(p.a.size()));
  for (std::size_t k = 0; k < p.a.size(); ++k) {
    double acc = 0.0;
    for (const auto& t : p.a[k]) acc += t.value * x[t.block](t.row, t.col);
    out(static_cast<Eigen::Index>(k)) = acc;
  }
  return out;
}

Blocks apply_at(const RealProblem& p, const RVector& y) {
  Blocks out;
  for (int s : p.sizes) out.push_back(RMatrix::Zero(s, s));
  for (std::size_t k = 0; k < p.a.size(); ++k) {
    const double yk = y(static_cast<Eigen::Index>(k));
    if (yk == 0.0) continue;
    for (const auto& t : p.a[k]) out[t.block](t.row, t.col) += yk * t.value;
  }
  return out;
}

Blocks zeros_like(const RealProblem& p) {
  Blocks out;
  for (int s : p.sizes) out.push_back(RMatrix::Zero(s, s));
  return out;
}

Blocks scaled_identity(const std::vector<double>& factors, const RealProblem& p) {
  Blocks out;
  for (std::size_t b = 0; b < p.sizes.size(); ++b) {
    out.push_back(factors[b] * RMatrix::Identity(p.sizes[b], p.sizes[b]));
  }
  return out;
}

void symmetrize(RMatrix& m) { m = 0.5 * (m + m.transpose()).eval(); }

double constraint_block_norm(const RealProblem& p, std::size_t k, int block) {
  double acc = 0.0;
  for (const auto& t : p.a[k]) {
    if (t.block == block) acc += t.value * t.value;
  }
  return std::sqrt(acc);
}

// Largest α with M + α·D ⪰ 0, given the Cholesky factor of M.
double max_step(const Eigen::LLT<RMatrix>& chol, const RMatrix& d) {
  const auto& l = chol.matrixL();
  RMatrix tmp = l.solve(d);
  RMatrix scaled = l.solve(tmp.transpose()).transpose();
  symmetrize(scaled);
  const double lmin =
      Eigen::SelfAdjointEigenSolver<RMatrix>(scaled, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

// Nesterov–Todd scaling of one block: W = G Gᵀ with W Z W = X and
// Gᵀ Z G = G⁻¹ X G⁻ᵀ = diag(v).
struct NtScaling {
  RMatrix g;
  RMatrix g_inv;
  RMatrix w;
  RVector v;
};

bool nt_scaling(const RMatrix& x, const RMatrix& z, NtScaling& out) {
  Eigen::LLT<RMatrix> lx(x);
  if (lx.info() != Eigen::Success) return false;
  const RMatrix l = lx.matrixL();
  RMatrix t = l.transpose() * z * l;
  symmetrize(t);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(t);
  if (es.info() != Eigen::Success) return false;
  const RVector lam = es.eigenvalues();
  if (lam.minCoeff() <= 0.0) return false;
  const RMatrix& q = es.eigenvectors();
  const RVector quarter = lam.array().pow(-0.25);
  out.g = l * q * quarter.asDiagonal();
  const RMatrix l_inv = l.triangularView<Eigen::Lower>().solve(RMatrix::Identity(l.rows(), l.cols()));
  out.g_inv = lam.array().pow(0.25).matrix().asDiagonal() * q.transpose() * l_inv;
  out.w = out.g * out.g.transpose();
  symmetrize(out.w);
  out.v = lam.array().sqrt();
  return true;
}

// Schur complement M_kl = ⟨A_k, W A_l W⟩ from the sparse coefficient lists.
RMatrix schur_complement(const RealProblem& p, const std::vector<NtScaling>& nt) {
  const auto m = static_cast<Eigen::Index>(p.a.size());
  RMatrix out = RMatrix::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& ak = p.a[k];
    for (Eigen::Index l = k; l < m; ++l) {
      const auto& al = p.a[l];
      double acc = 0.0;
      for (const auto& s : ak) {
        const RMatrix& w = nt[s.block].w;
        for (const auto& t : al) {
          if (t.block != s.block) continue;
          acc += s.value * t.value * w(s.row, t.row) * w(t.col, s.col);
        }
      }
      out(k, l) = acc;
      out(l, k) = acc;
    }
  }
  return out;
}

struct Direction {
  Blocks dx;
  RVector dy;
  Blocks dz;
};

// Solves A ΔX = rp, Aᵀ Δy + ΔZ = Rd, ΔX + W ΔZ W = Rc.
Direction solve_newton(const RealProblem& p, const std::vector<NtScaling>& nt,
                       const Eigen::LLT<RMatrix>& m_chol, const RVector& rp, const Blocks& rd,
                       const Blocks& rc) {
  Blocks tmp = rc;
  for (std::size_t b = 0; b < tmp.size(); ++b) tmp[b] -= nt[b].w * rd[b] * nt[b].w;
  Direction d;
  d.dy = m_chol.solve(rp - apply_a(p, tmp));
  const Blocks aty = apply_at(p, d.dy);
  d.dz.resize(rd.size());
  d.dx.resize(rd.size());
  for (std::size_t b = 0; b < rd.size(); ++b) {
    d.dz[b] = rd[b] - aty[b];
    symmetrize(d.dz[b]);
    d.dx[b] = rc[b] - nt[b].w * d.dz[b] * nt[b].w;
    symmetrize(d.dx[b]);
  }
  return d;
}

double block_step(const Blocks& m, const Blocks& d) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < m.size(); ++b) {
    Eigen::LLT<RMatrix> chol(m[b]);
    if (chol.info() != Eigen::Success) return 0.0;
    alpha = std::min(alpha, max_step(chol, d[b]));
  }
  return alpha;
}

CMatrix unembed(const RMatrix& r, double factor) {
  const Eigen::Index n = r.rows() / 2;
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = factor * Complex(r(i, j) + r(n + i, n + j), r(n + i, j) - r(i, n + j));
    }
  }
  return out;
}

struct Iterate {
  Blocks x;
  RVector y;
  Blocks z;
};

void fill_solution(SdpSolution& sol, const RealProblem& p, const Iterate& it, double bscale,
                   double cscale) {
  const double s = bscale * cscale;
  const double pobj = inner(p.c, it.x) * s;
  const double dobj = p.b.dot(it.y) * s;
  sol.primal_value = pobj;
  sol.dual_value = dobj;
  sol.gap = std::abs(pobj - dobj);
  sol.complementarity = inner(it.x, it.z) * s;
  sol.primal_blocks.clear();
  sol.dual_slack_blocks.clear();
  for (const auto& xb : it.x) sol.primal_blocks.push_back(unembed(xb, 0.5 * bscale));
  for (const auto& zb : it.z) sol.dual_slack_blocks.push_back(unembed(zb, cscale));
  sol.dual_multipliers.assign(it.y.data(), it.y.data() + it.y.size());
  for (auto& v : sol.dual_multipliers) v *= cscale;
}

SdpSolution interior_point(const RealProblem& p, const SdpOptions& opt, double bscale,
                           double cscale) {
  SdpSolution sol;
  const std::size_t nb = p.sizes.size();
  const auto m = static_cast<Eigen::Index>(p.a.size());
  double n_total = 0.0;
  for (int s : p.sizes) n_total += s;

  // Infeasible starting point (Toh–Todd–Tütüncü heuristic).
  std::vector<double> xi(nb);
  std::vector<double> eta(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const double s = p.sizes[b];
    double xmax = 0.0;
    double zmax = p.c[b].norm();
    for (Eigen::Index k = 0; k < m; ++k) {
      const double an = constraint_block_norm(p, static_cast<std::size_t>(k), static_cast<int>(b));
      xmax = std::max(xmax, (1.0 + std::abs(p.b(k))) / (1.0 + an));
      zmax = std::max(zmax, an);
    }
    xi[b] = std::max({10.0, std::sqrt(s), s * xmax});
    eta[b] = std::max({10.0, std::sqrt(s), zmax});
  }
  Iterate it{scaled_identity(xi, p), RVector::Zero(m), scaled_identity(eta, p)};

  const double norm_b = p.b.norm();
  const double norm_c = frob(p.c);
  int stalls = 0;

  for (int iter = 0; iter <= opt.max_iterations; ++iter) {
    sol.iterations = iter;
    const RVector rp = p.b - apply_a(p, it.x);
    Blocks rd = p.c;
    {
      const Blocks aty = apply_at(p, it.y);
      for (std::size_t b = 0; b < nb; ++b) rd[b] -= it.z[b] + aty[b];
    }
    const double pobj = inner(p.c, it.x);
    const double dobj = p.b.dot(it.y);
    const double xz = inner(it.x, it.z);
    const double pinf = rp.norm() / (1.0 + norm_b);
    const double dinf = frob(rd) / (1.0 + norm_c);
    sol.primal_infeasibility = pinf;
    sol.dual_infeasibility = dinf;
    fill_solution(sol, p, it, bscale, cscale);

    const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    const double rel_xz = std::abs(xz) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double feas_tol = std::min(1e-8, opt.tol);
    if (rel_gap <= opt.tol && rel_xz <= opt.tol && pinf <= feas_tol && dinf <= feas_tol) {
      sol.status = SdpStatus::Optimal;
      sol.message = "converged";
      return sol;
    }

    double trace_x = 0.0;
    for (const auto& xb : it.x) trace_x += xb.trace();
    if (trace_x * bscale > opt.big_m * (1.0 + n_total) ||
        it.y.cwiseAbs().maxCoeff() * cscale > opt.big_m * (1.0 + norm_c * cscale)) {
      sol.status = SdpStatus::Infeasible;
      sol.message = trace_x * bscale > opt.big_m * (1.0 + n_total)
                        ? "primal trace exceeded the big-M bound (dual infeasible)"
                        : "dual multipliers exceeded the big-M bound (primal infeasible)";
      return sol;
    }
    if (iter == opt.max_iterations) break;

    std::vector<NtScaling> nt(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      if (!nt_scaling(it.x[b], it.z[b], nt[b])) {
        sol.message = "lost positive definiteness while scaling";
        return sol;
      }
    }
    RMatrix schur = schur_complement(p, nt);
    Eigen::LLT<RMatrix> m_chol(schur);
    if (m_chol.info() != Eigen::Success) {
      const double bump = 1e-13 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      schur.diagonal().array() += bump;
      m_chol.compute(schur);
      if (m_chol.info() != Eigen::Success) {
        sol.message = "Schur complement is not positive definite";
        return sol;
      }
    }

    const double mu = xz / n_total;

    // Predictor (affine scaling): ΔX + W ΔZ W = −X.
    Blocks rc(nb);
    for (std::size_t b = 0; b < nb; ++b) rc[b] = -it.x[b];
    const Direction pred = solve_newton(p, nt, m_chol, rp, rd, rc);
    const double ap_pred = std::min(1.0, block_step(it.x, pred.dx));
    const double ad_pred = std::min(1.0, block_step(it.z, pred.dz));
    double mu_aff = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      mu_aff += ((it.x[b] + ap_pred * pred.dx[b]).array() * (it.z[b] + ad_pred * pred.dz[b]).array()).sum();
    }
    mu_aff /= n_total;
    const double ratio = std::max(0.0, mu_aff / mu);
    const double sigma = std::clamp(ratio * ratio * ratio, 0.0, 1.0);

    // Corrector in the scaled space where X̃ = Z̃ = diag(v).
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& sc = nt[b];
      const RMatrix dxs = sc.g_inv * pred.dx[b] * sc.g_inv.transpose();
      const RMatrix dzs = sc.g.transpose() * pred.dz[b] * sc.g;
      RMatrix r = -0.5 * (dxs * dzs + dzs * dxs);
      for (Eigen::Index i = 0; i < r.rows(); ++i) r(i, i) += sigma * mu - sc.v(i) * sc.v(i);
      RMatrix d(r.rows(), r.cols());
      for (Eigen::Index i = 0; i < r.rows(); ++i) {
        for (Eigen::Index j = 0; j < r.cols(); ++j) d(i, j) = 2.0 * r(i, j) / (sc.v(i) + sc.v(j));
      }
      rc[b] = sc.g * d * sc.g.transpose();
      symmetrize(rc[b]);
    }
    const Direction dir = solve_newton(p, nt, m_chol, rp, rd, rc);

    const double gamma = 0.9 + 0.09 * std::min(ap_pred, ad_pred);
    const double ap = std::min(1.0, gamma * block_step(it.x, dir.dx));
    const double ad = std::min(1.0, gamma * block_step(it.z, dir.dz));
    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalls >= 3) {
        sol.message = "step lengths collapsed";
        return sol;
      }
    } else {
      stalls = 0;
    }
    for (std::size_t b = 0; b < nb; ++b) {
      it.x[b] += ap * dir.dx[b];
      it.z[b] += ad * dir.dz[b];
      symmetrize(it.x[b]);
      symmetrize(it.z[b]);
    }
    it.y += ad * dir.dy;
  }
  sol.status = SdpStatus::NumericalFailure;
  sol.message = "iteration budget exhausted";
  return sol;
}

// ---------------------------------------------------------------------------
// Fallback: bisection on the objective level, feasibility of
// {A(X) = b, ⟨C, X⟩ <= level, X ⪰ 0} decided by cyclic projections.

class Projector {
 public:
  Projector(const RealProblem& p, const SdpOptions& opt) : p_(p), opt_(opt) {
    const auto m = static_cast<Eigen::Index>(p.a.size());
    RMatrix gram = RMatrix::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      for (Eigen::Index l = k; l < m; ++l) {
        double acc = 0.0;
        for (const auto& s : p.a[k]) {
          for (const auto& t : p.a[l]) {
            if (s.block == t.block && s.row == t.row && s.col == t.col) acc += s.value * t.value;
          }
        }
        gram(k, l) = acc;
        gram(l, k) = acc;
      }
    }
    gram_ = gram.completeOrthogonalDecomposition();
    c_norm2_ = inner(p.c, p.c);
  }

  // Returns a point of the intersection when one is found within budget.
  bool find(double level, Blocks& x) const {
    const double scale = 1.0 + p_.b.norm();
    for (int k = 0; k < opt_.projection_budget; ++k) {
      project_affine(x);
      if (std::isfinite(level)) project_halfspace(x, level);
      project_psd(x);
      const double res = (apply_a(p_, x) - p_.b).norm();
      const double over = std::isfinite(level) ? inner(p_.c, x) - level : 0.0;
      if (res <= 1e-10 * scale && over <= 1e-10 * (1.0 + std::abs(level))) return true;
    }
    return false;
  }

 private:
  void project_affine(Blocks& x) const {
    const RVector r = apply_a(p_, x) - p_.b;
    const RVector w = gram_.solve(r);
    const Blocks corr = apply_at(p_, w);
    for (std::size_t b = 0; b < x.size(); ++b) x[b] -= corr[b];
  }

  void project_halfspace(Blocks& x, double level) const {
    const double over = inner(p_.c, x) - level;
    if (over <= 0.0 || c_norm2_ == 0.0) return;
    for (std::size_t b = 0; b < x.size(); ++b) x[b] -= (over / c_norm2_) * p_.c[b];
  }

  static void project_psd(Blocks& x) {
    for (auto& xb : x) {
      symmetrize(xb);
      Eigen::SelfAdjointEigenSolver<RMatrix> es(xb);
      const RVector lam = es.eigenvalues().cwiseMax(0.0);
      xb = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    }
  }

  const RealProblem& p_;
  const SdpOptions& opt_;
  Eigen::CompleteOrthogonalDecomposition<RMatrix> gram_;
  double c_norm2_ = 0.0;
};

SdpSolution bisection_fallback(const RealProblem& p, const SdpOptions& opt, double bscale,
                               double cscale) {
  SdpSolution sol;
  sol.used_fallback = true;
  const Projector proj(p, opt);
  Blocks x = zeros_like(p);
  if (!proj.find(std::numeric_limits<double>::infinity(), x)) {
    sol.status = SdpStatus::NumericalFailure;
    sol.message = "fallback: no feasible point found by alternating projections";
    return sol;
  }
  double hi = inner(p.c, x);
  Blocks best = x;
  double step = 1.0 + std::abs(hi);
  double lo = hi - step;
  bool bracketed = false;
  for (int k = 0; k < 60; ++k) {
    Blocks trial = best;
    if (!proj.find(lo, trial)) {
      bracketed = true;
      break;
    }
    hi = std::min(hi, inner(p.c, trial));
    best = trial;
    step *= 2.0;
    lo = hi - step;
  }
  if (!bracketed) {
    sol.status = SdpStatus::Infeasible;
    sol.message = "fallback: objective unbounded below (dual infeasible)";
    return sol;
  }
  while (hi - lo > 0.25 * opt.tol * (1.0 + std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    Blocks trial = best;
    if (proj.find(mid, trial)) {
      hi = std::min(mid, inner(p.c, trial));
      best = trial;
    } else {
      lo = mid;
    }
  }
  const double s = bscale * cscale;
  sol.primal_value = hi * s;
  sol.dual_value = lo * s;
  sol.gap = (hi - lo) * s;
  for (const auto& xb : best) sol.primal_blocks.push_back(unembed(xb, 0.5 * bscale));
  sol.primal_infeasibility = (p.b - apply_a(p, best)).norm() / (1.0 + p.b.norm());
  sol.status = sol.gap <= opt.tol * (1.0 + std::abs(sol.primal_value)) ? SdpStatus::Optimal
                                                                        : SdpStatus::NumericalFailure;
  sol.message = "fallback: bisection bracket";
  return sol;
}

}  // namespace

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal:
      return "Optimal";
    case SdpStatus::Infeasible:
      return "Infeasible";
    case SdpStatus::NumericalFailure:
      return "NumericalFailure";
  }
  return "?";
}

double SdpSolution::scale() const { return 1.0 + std::abs(primal_value); }

void SdpProblem::validate() const {
  for (int n : blocks) {
    if (n < 1) throw DomainError("sdp: block sizes must be positive");
  }
  auto check = [&](const Entry& e, const char* where) {
    if (e.block < 0 || e.block >= static_cast<int>(blocks.size())) {
      throw ShapeError(std::string("sdp: ") + where + " references a missing block");
    }
    const int n = blocks[e.block];
    if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n) {
      throw ShapeError(std::string("sdp: ") + where + " entry outside its block");
    }
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
      throw DomainError(std::string("sdp: ") + where + " has a non-finite coefficient");
    }
    if (e.row == e.col && std::abs(e.value.imag()) > kHermitianTol) {
      throw DomainError(std::string("sdp: ") + where + " coefficient is not Hermitian");
    }
  };
  for (const auto& e : objective) check(e, "objective");
  for (const auto& c : constraints) {
    if (!std::isfinite(c.rhs)) throw DomainError("sdp: non-finite right-hand side");
    for (const auto& e : c.terms) check(e, "constraint");
  }
}

int SdpProblem::total_dimension() const {
  int acc = 0;
  for (int n : blocks) acc += n;
  return acc;
}

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  problem.validate();
  if (!(options.tol > 0.0)) throw DomainError("sdp: tolerance must be positive");
  RealProblem rp = embed(problem);

  double bscale = 1.0;
  double cscale = 1.0;
  if (rp.b.size() > 0) bscale = std::max(1.0, rp.b.cwiseAbs().maxCoeff());
  for (const auto& cb : rp.c) {
    if (cb.size() > 0) cscale = std::max(cscale, cb.cwiseAbs().maxCoeff());
  }
  rp.b /= bscale;
  for (auto& cb : rp.c) cb /= cscale;

  if (!options.force_fallback) {
    SdpSolution sol = interior_point(rp, options, bscale, cscale);
    if (sol.status != SdpStatus::NumericalFailure || !options.enable_fallback) return sol;
  }
  return bisection_fallback(rp, options, bscale, cscale);
}

SdpSolution solve(const SdpProblem& problem, double tol) {
  SdpOptions opt;
  opt.tol = tol;
  return solve(problem, opt);
}

SdpProblem real_embedding(const SdpProblem& problem) {
  problem.validate();
  SdpProblem out;
  for (int n : problem.blocks) out.blocks.push_back(2 * n);
  auto convert = [&](const std::vector<Entry>& in) {
    std::vector<RTerm> terms;
    for (const auto& e : in) embed_entry(terms, e, problem.blocks[e.block]);
    std::vector<Entry> res;
    for (const auto& t : terms) {
      // ½[[Re, −Im], [Im, Re]] paired with the doubled variable reproduces Tr(H X).
      if (t.row <= t.col) res.push_back(Entry{t.block, t.row, t.col, Complex(t.value, 0.0)});
    }
    return res;
  };
  out.objective = convert(problem.objective);
  for (const auto& c : problem.constraints) out.constraints.push_back(Constraint{convert(c.terms), c.rhs});
  return out;
}

void write_problem(std::ostream& os, const SdpProblem& problem) {
  const auto old_precision = os.precision();
  os << std::setprecision(17);
  os << "blocks " << problem.blocks.size() << '\n';
  for (std::size_t b = 0; b < problem.blocks.size(); ++b) {
    os << (b ? " " : "") << problem.blocks[b];
  }
  os << '\n';
  auto write_entries = [&](const std::vector<Entry>& es) {
    for (const auto& raw : es) {
      const Entry e = normalized(raw);
      os << e.block << ' ' << e.row << ' ' << e.col << ' ' << e.value.real() << ' ' << e.value.imag() << '\n';
    }
  };
  os << "constraints " << problem.constraints.size() << '\n';
  for (std::size_t k = 0; k < problem.constraints.size(); ++k) {
    os << "constraint " << k << ' ' << problem.constraints[k].terms.size() << '\n';
    write_entries(problem.constraints[k].terms);
  }
  os << "objective " << problem.objective.size() << '\n';
  write_entries(problem.objective);
  os << "rhs\n";
  for (std::size_t k = 0; k < problem.constraints.size(); ++k) {
    os << (k ? " " : "") << problem.constraints[k].rhs;
  }
  os << '\n';
  os.precision(old_precision);
}

SdpProblem read_problem(std::istream& is) {
  std::stringstream clean;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    clean << (hash == std::string::npos ? line : line.substr(0, hash)) << '\n';
  }
  auto expect = [&](const std::string& word) {
    std::string got;
    if (!(clean >> got) || got != word) throw DomainError("sdp dump: expected '" + word + "'");
  };
  auto read_count = [&]() {
    long v = -1;
    if (!(clean >> v) || v < 0) throw DomainError("sdp dump: bad count");
    return static_cast<std::size_t>(v);
  };
  auto read_entries = [&](std::size_t nnz) {
    std::vector<Entry> es(nnz);
    for (auto& e : es) {
      double re = 0;
      double im = 0;
      if (!(clean >> e.block >> e.row >> e.col >> re >> im)) throw DomainError("sdp dump: bad entry");
      e.value = Complex(re, im);
    }
    return es;
  };
  SdpProblem p;
  expect("blocks");
  p.blocks.resize(read_count());
  for (auto& b : p.blocks) {
    if (!(clean >> b)) throw DomainError("sdp dump: bad block size");
  }
  expect("constraints");
  p.constraints.resize(read_count());
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    expect("constraint");
    if (read_count() != k) throw DomainError("sdp dump: constraints out of order");
    p.constraints[k].terms = read_entries(read_count());
  }
  expect("objective");
  p.objective = read_entries(read_count());
  expect("rhs");
  for (auto& c : p.constraints) {
    if (!(clean >> c.rhs)) throw DomainError("sdp dump: bad rhs");
  }
  p.validate();
  return p;
}

}  // namespace cob::sdp
