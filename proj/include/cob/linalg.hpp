#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cob {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not compose.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine ran out of budget or broke down.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Schatten exponent. `SchattenP::infinity()` selects the operator norm, so
/// code parameterised by p needs no special entry points for p = ∞.
class SchattenP {
 public:
  explicit SchattenP(double p);
  static SchattenP infinity() { return SchattenP(std::numeric_limits<double>::infinity()); }

  double value() const { return p_; }
  bool is_infinite() const { return p_ == std::numeric_limits<double>::infinity(); }
  /// Hölder conjugate exponent (1 ↔ ∞).
  SchattenP conjugate() const;
  std::string str() const;

 private:
  double p_;
};

/// Singular values, sorted descending.
struct SingularSpectrum {
  std::vector<double> values;

  double max() const { return values.empty() ? 0.0 : values.front(); }
};

/// Thin SVD A = U·diag(s)·V†, singular values descending.
struct Svd {
  CMatrix u;
  RVector s;
  CMatrix v;
};

/// Throws DomainError when any entry is NaN or infinite.
void require_finite(const CMatrix& a, const char* what = "matrix");

/// Full thin SVD by one-sided (Hestenes) Jacobi.
Svd svd(const CMatrix& a);
SingularSpectrum svd_values(const CMatrix& a);

double schatten_norm(const CMatrix& a, SchattenP p);
double operator_norm(const CMatrix& a);
double hs_norm(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix entrywise_abs(const CMatrix& a);
CMatrix dagger(const CMatrix& a);
/// Tr(A†B).
Complex hs_inner(const CMatrix& a, const CMatrix& b);

/// n×n matrix unit e_ij (0-based).
CMatrix matrix_unit(int n, int i, int j);
CMatrix identity(int n);
double max_abs_entry(const CMatrix& a);

/// Maximiser of Re Tr(W†X) over the unit ball of S_p: the Hölder dual
/// element of W. Returns the zero matrix when W = 0.
CMatrix schatten_dual_element(const CMatrix& w, SchattenP p);

}  // namespace cob
