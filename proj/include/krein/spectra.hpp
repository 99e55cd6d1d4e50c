#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <type_traits>

#include "krein/errors.hpp"
#include "krein/potentials.hpp"
#include "krein/schrodinger_fd.hpp"

namespace krein {

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Eigenvalues within kernel_tol * reference_scale of zero are kernel
/// candidates and are neither counted as negative nor inverted.
template <class Scalar>
struct SpectrumResult {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;
  double reference_scale = 2.0;
  double kernel_tol = 1e-4;

  double kernel_window() const { return kernel_tol * reference_scale; }
  Eigen::Index size() const { return eigenvalues.size(); }
};

template <class Scalar>
struct KernelInfo {
  int dimension = 0;
  typename SpectrumResult<Scalar>::Vector psi0;  // unit l2 norm when dimension == 1
  double raw_eigenvalue = 0.0;
  Eigen::Index index = -1;  // position of the kernel eigenvalue in the spectrum
};

/// Eigen-decomposition of a general complex matrix.
struct ComplexSpectrum {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // empty when computed without vectors
  Eigen::VectorXd residuals;      // |A v - z v| per pair; empty without vectors

  bool has_vectors() const { return eigenvectors.cols() == eigenvalues.size() && eigenvalues.size() > 0; }
};

inline constexpr double kDefaultKernelTol = 1e-4;
inline constexpr double kDefaultOrthTol = 1e-6;

/// LAPACK MRRR (dstevr) on the tridiagonal matrix.
SpectrumResult<double> eig_hermitian(const SymTridiag& m, const ProblemParams& params,
                                     double kernel_tol = kDefaultKernelTol);
SpectrumResult<double> eig_hermitian(const Eigen::MatrixXd& m, const ProblemParams& params,
                                     double kernel_tol = kDefaultKernelTol);
SpectrumResult<std::complex<double>> eig_hermitian(const Eigen::MatrixXcd& m, const ProblemParams& params,
                                                   double kernel_tol = kDefaultKernelTol);

/// Eigenvalues first..last (0-based, inclusive, ascending) of a tridiagonal matrix.
Eigen::VectorXd eigenvalues_by_index(const SymTridiag& m, int first, int last);
/// All eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

/// General complex eigensolver (LAPACK zgeev).
ComplexSpectrum eig_general(const Eigen::MatrixXcd& a, bool with_vectors = true);

template <class Scalar>
int count_negative(const SpectrumResult<Scalar>& s) {
  const double w = s.kernel_window();
  int n = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s.eigenvalues(i) < -w) ++n;
  return n;
}

/// Eigenvalues inside the kernel window; at most one is admissible.
template <class Scalar>
KernelInfo<Scalar> detect_kernel(const SpectrumResult<Scalar>& s) {
  const double w = s.kernel_window();
  KernelInfo<Scalar> k;
  int hits = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (std::abs(s.eigenvalues(i)) <= w) {
      ++hits;
      k.index = i;
    }
  }
  if (hits > 1) throw KernelAmbiguity(hits, w);
  if (hits == 0) {
    k.index = -1;
    return k;
  }
  k.dimension = 1;
  k.raw_eigenvalue = s.eigenvalues(k.index);
  typename SpectrumResult<Scalar>::Vector v = s.eigenvectors.col(k.index);
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if constexpr (std::is_same_v<Scalar, double>) {
    if (v(imax) < 0.0) v = -v;
  } else {
    const Scalar phase = std::abs(v(imax)) / v(imax);
    v *= phase;
    v(imax) = Scalar(v(imax).real(), 0.0);
  }
  k.psi0 = v / v.norm();
  return k;
}

/// Sum over non-kernel eigenpairs of <w, v_j> / lambda_j v_j.
/// Throws NotInRange when w has a kernel component above orth_tol * |w|.
template <class Scalar, class Derived>
typename SpectrumResult<Scalar>::Vector apply_pseudo_inverse(const SpectrumResult<Scalar>& s,
                                                             const KernelInfo<Scalar>& k,
                                                             const Eigen::MatrixBase<Derived>& w,
                                                             double orth_tol = kDefaultOrthTol) {
  using Vector = typename SpectrumResult<Scalar>::Vector;
  if (w.size() != s.size()) throw std::invalid_argument("apply_pseudo_inverse: length mismatch");
  const Vector rhs = w.template cast<Scalar>();
  const double wn = rhs.norm();
  if (k.dimension == 1) {
    const double overlap = std::abs(k.psi0.dot(rhs));
    if (overlap > orth_tol * wn) throw NotInRange(wn > 0.0 ? overlap / wn : overlap);
  }
  Vector coeff = s.eigenvectors.adjoint() * rhs;
  const double win = s.kernel_window();
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const double lam = s.eigenvalues(j);
    coeff(j) = std::abs(lam) > win ? coeff(j) / lam : Scalar(0);
  }
  return s.eigenvectors * coeff;
}

}  // namespace krein
