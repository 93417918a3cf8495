#include "cob/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cob {

namespace {

constexpr double kJacobiThreshold = 1e-14;
constexpr int kJacobiSweeps = 80;

// One-sided Jacobi on the columns of `work` (rows >= cols). On exit the
// columns are mutually orthogonal and `v` holds the accumulated rotations.
void hestenes(CMatrix& work, CMatrix& v) {
  const Eigen::Index cols = work.cols();
  v = CMatrix::Identity(cols, cols);
  // Columns below this squared norm are roundoff; rotating them never settles.
  const double negligible = std::pow(std::numeric_limits<double>::epsilon(), 2) * work.squaredNorm();
  for (int sweep = 0; sweep < kJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < cols; ++p) {
      for (Eigen::Index q = p + 1; q < cols; ++q) {
        const double alpha = work.col(p).squaredNorm();
        const double beta = work.col(q).squaredNorm();
        const Complex gamma = work.col(p).dot(work.col(q));
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kJacobiThreshold * std::sqrt(alpha * beta)) continue;
        if (std::min(alpha, beta) <= negligible) continue;
        rotated = true;
        const Complex phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        // Rotate (a_p, e^{-iθ} a_q), which have real inner product |γ|.
        const CVector ap = work.col(p);
        const CVector bq = work.col(q) * std::conj(phase);
        work.col(p) = c * ap - s * bq;
        work.col(q) = s * ap + c * bq;
        const CVector vp = v.col(p);
        const CVector vq = v.col(q) * std::conj(phase);
        v.col(p) = c * vp - s * vq;
        v.col(q) = s * vp + c * vq;
      }
    }
    if (!rotated) return;
  }
  throw NumericalFailure("svd: one-sided Jacobi did not converge within the sweep budget");
}

}  // namespace

SchattenP::SchattenP(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) {
    throw DomainError("Schatten exponent must satisfy p >= 1 (got " + std::to_string(p) + ")");
  }
}

SchattenP SchattenP::conjugate() const {
  if (is_infinite()) return SchattenP(1.0);
  if (p_ == 1.0) return infinity();
  return SchattenP(p_ / (p_ - 1.0));
}

std::string SchattenP::str() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os << p_;
  return os.str();
}

void require_finite(const CMatrix& a, const char* what) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        throw DomainError(std::string(what) + " has a non-finite entry");
      }
    }
  }
}

Svd svd(const CMatrix& a) {
  require_finite(a, "svd input");
  const bool wide = a.rows() < a.cols();
  // Work on a unit-scaled copy so squared column norms cannot overflow.
  double scale = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) scale = std::max(scale, std::abs(a(i, j)));
  }
  if (scale == 0.0) scale = 1.0;
  CMatrix work = wide ? CMatrix(a.adjoint() / scale) : CMatrix(a / scale);
  CMatrix v;
  hestenes(work, v);

  const Eigen::Index k = work.cols();
  std::vector<Eigen::Index> order(k);
  std::iota(order.begin(), order.end(), 0);
  RVector norms(k);
  // Roundoff-level columns were never rotated; they are numerically zero.
  const double floor = std::numeric_limits<double>::epsilon() * work.norm();
  for (Eigen::Index j = 0; j < k; ++j) {
    norms(j) = work.col(j).norm();
    if (norms(j) <= floor) norms(j) = 0.0;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return norms(x) > norms(y); });

  Svd out;
  out.s.resize(k);
  CMatrix u(work.rows(), k);
  CMatrix vs(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::Index src = order[j];
    out.s(j) = norms(src) * scale;
    vs.col(j) = v.col(src);
    if (norms(src) > 0.0) {
      u.col(j) = work.col(src) / norms(src);
    } else {
      u.col(j).setZero();
    }
  }
  // Null columns of U are completed so that U stays an isometry.
  for (Eigen::Index j = 0; j < k; ++j) {
    if (out.s(j) > 0.0) continue;
    for (Eigen::Index e = 0; e < u.rows(); ++e) {
      CVector cand = CVector::Unit(u.rows(), e);
      for (Eigen::Index l = 0; l < k; ++l) {
        if (l != j) cand -= u.col(l) * u.col(l).dot(cand);
      }
      if (cand.norm() > 1e-6) {
        u.col(j) = cand.normalized();
        break;
      }
    }
  }
  if (wide) {
    out.u = vs;
    out.v = u;
  } else {
    out.u = u;
    out.v = vs;
  }
  return out;
}

SingularSpectrum svd_values(const CMatrix& a) {
  const Svd d = svd(a);
  SingularSpectrum out;
  out.values.assign(d.s.data(), d.s.data() + d.s.size());
  return out;
}

double schatten_norm(const CMatrix& a, SchattenP p) {
  const auto s = svd_values(a).values;
  if (p.is_infinite()) return s.empty() ? 0.0 : s.front();
  const double top = s.empty() ? 0.0 : s.front();
  if (top == 0.0) return 0.0;
  // Scale by the largest value so large p does not overflow.
  double acc = 0.0;
  for (double x : s) acc += std::pow(x / top, p.value());
  return top * std::pow(acc, 1.0 / p.value());
}

double operator_norm(const CMatrix& a) { return schatten_norm(a, SchattenP::infinity()); }

double hs_norm(const CMatrix& a) { return schatten_norm(a, SchattenP(2.0)); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix entrywise_abs(const CMatrix& a) { return a.cwiseAbs().cast<Complex>(); }

CMatrix dagger(const CMatrix& a) { return a.adjoint(); }

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("hs_inner: shape mismatch");
  }
  Complex acc = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) acc += std::conj(a(i, j)) * b(i, j);
  }
  return acc;
}

CMatrix matrix_unit(int n, int i, int j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

double max_abs_entry(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

CMatrix schatten_dual_element(const CMatrix& w, SchattenP p) {
  const Svd d = svd(w);
  CMatrix out = CMatrix::Zero(w.rows(), w.cols());
  if (d.s.size() == 0 || d.s(0) == 0.0) return out;
  const SchattenP q = p.conjugate();
  RVector weights = RVector::Zero(d.s.size());
  if (p.is_infinite()) {
    // Dual of S_1: the full partial isometry.
    for (Eigen::Index k = 0; k < d.s.size(); ++k) weights(k) = d.s(k) > 0 ? 1.0 : 0.0;
  } else if (q.is_infinite()) {
    // p = 1: all mass on the top singular pair.
    weights(0) = 1.0;
  } else {
    // x = Σ s_k^{q-1} u_k v_k† / ‖s‖_q^{q-1}.
    const double top = d.s(0);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < d.s.size(); ++k) acc += std::pow(d.s(k) / top, q.value());
    const double norm_q_scaled = std::pow(acc, 1.0 / q.value());
    for (Eigen::Index k = 0; k < d.s.size(); ++k) {
      weights(k) = std::pow(d.s(k) / top / norm_q_scaled, q.value() - 1.0);
    }
  }
  for (Eigen::Index k = 0; k < d.s.size(); ++k) {
    if (weights(k) != 0.0) out += weights(k) * d.u.col(k) * d.v.col(k).adjoint();
  }
  return out;
}

}  // namespace cob
