#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "krein/index.hpp"
#include "krein/spectra.hpp"

namespace krein {

enum class EigenClass {
  RealPositive,
  RealNegative,
  ImagPositive,
  ImagNegative,
  QuadrantI,
  QuadrantII,
  QuadrantIII,
  QuadrantIV,
  NearZero
};

std::string to_string(EigenClass c);

struct ClassifiedEigenvalue {
  std::complex<double> z;
  EigenClass cls = EigenClass::NearZero;
  std::optional<bool> krein_negative;  // real nonzero eigenvalues only
  double residual = 0.0;
};

struct PencilCounts {
  int kappa_c_plus = 0;
  int kappa_imag_pos = 0;
  int kappa_quadrant_I = 0;
  int kappa_quadrant_II = 0;
  int kappa_real_pos_neg_krein = 0;
  int kappa_ham_direct = 0;
  int near_zero = 0;
};

struct Classification {
  std::vector<ClassifiedEigenvalue> eigenvalues;
  PencilCounts counts;
  std::vector<std::string> diagnostics;
};

struct SymmetryReport {
  double conjugation_mismatch = 0.0;  // z -> z*
  double reflection_mismatch = 0.0;   // z -> -z*
  int excluded_near_zero = 0;

  double max_mismatch() const { return std::max(conjugation_mismatch, reflection_mismatch); }
};

struct IdentityCheck {
  bool holds = false;
  int direct = 0;
  std::optional<int> formula;
  std::string detail;
};

/// L - lambda_0 v_0 v_0^* for the single eigenpair inside the kernel window
/// of `s`, which must be the spectrum of `l`. Returns `l` unchanged when the
/// window is empty; throws KernelAmbiguity on two or more candidates.
template <class Scalar>
typename SpectrumResult<Scalar>::Matrix kernel_exactify(const typename SpectrumResult<Scalar>::Matrix& l,
                                                        const SpectrumResult<Scalar>& s) {
  if (l.rows() != s.size()) throw std::invalid_argument("kernel_exactify: size mismatch");
  const KernelInfo<Scalar> k = detect_kernel(s);
  if (k.dimension == 0) return l;
  const auto v = s.eigenvectors.col(k.index);
  typename SpectrumResult<Scalar>::Matrix out = l;
  out.noalias() -= k.raw_eigenvalue * (v * v.adjoint());
  return out;
}

/// The spectrum of kernel_exactify(l, s): the kernel eigenvalue is set to 0.
template <class Scalar>
SpectrumResult<Scalar> exactify_spectrum(SpectrumResult<Scalar> s) {
  const KernelInfo<Scalar> k = detect_kernel(s);
  if (k.dimension == 1) s.eigenvalues(k.index) = 0.0;
  return s;
}

Eigen::MatrixXcd kernel_exactify(const Eigen::MatrixXcd& l, const ProblemParams& params,
                                 double kernel_tol = kDefaultKernelTol);

/// Classifies the eigenvalues of A = J L. `l` is the Hermitian factor, used for
/// the Krein signature <L v, v> of real eigenvalues.
Classification classify_spectrum(const ComplexSpectrum& cs, const Eigen::MatrixXcd& l, const ProblemParams& params,
                                 double tol_class = 1e-8, double zero_window = kDefaultKernelTol);

/// Multiset matching distance of the spectrum against its images under z -> z*
/// and z -> -z*. Eigenvalues with |z| <= near_zero_radius are left out: a
/// Jordan block at zero splits into a cluster of size ~sqrt(eps).
SymmetryReport check_spectral_symmetries(const Eigen::VectorXcd& eigenvalues, double near_zero_radius = 0.0);
inline SymmetryReport check_spectral_symmetries(const ComplexSpectrum& cs, double near_zero_radius = 0.0) {
  return check_spectral_symmetries(cs.eigenvalues, near_zero_radius);
}

IdentityCheck kappa_ham_direct_vs_formula(const Classification& c, const IndexReport& report);

}  // namespace krein
