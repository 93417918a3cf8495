#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cob/linalg.hpp"
#include "cob/random.hpp"

namespace testing {

// Singular values from the Hermitian eigensolver on A†A (or AA†): an
// independent route to the spectrum the Jacobi SVD must reproduce.
inline std::vector<double> eigen_singular_values(const cob::CMatrix& a) {
  const cob::CMatrix g = a.rows() >= a.cols() ? cob::CMatrix(a.adjoint() * a) : cob::CMatrix(a * a.adjoint());
  Eigen::SelfAdjointEigenSolver<cob::CMatrix> es(g);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k))));
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline double eigen_operator_norm(const cob::CMatrix& a) { return eigen_singular_values(a).front(); }

inline cob::CMatrix gaussian(std::uint64_t seed, int rows, int cols) {
  cob::Rng rng(seed);
  return rng.gaussian(rows, cols);
}

// Power iteration on a Hermitian PSD matrix.
inline double power_lambda_max(const cob::CMatrix& h, int iterations = 5000) {
  cob::CVector v = cob::CVector::Ones(h.rows()).normalized();
  double value = 0.0;
  for (int k = 0; k < iterations; ++k) {
    const cob::CVector w = h * v;
    value = w.norm();
    if (value == 0.0) return 0.0;
    v = w / value;
  }
  return v.dot(h * v).real();
}

}  // namespace testing
