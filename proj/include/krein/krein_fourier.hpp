#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "krein/potentials.hpp"

namespace krein {

/// Periodic Fourier grid on [-X, X) with N collocation nodes
/// x_j = -X + 2Xj/N. Retained wavenumbers are lambda_k = pi k / X for
/// k = +-1, ..., +-(N/2 - 1): the zero mode is not a coordinate of the
/// homogeneous H^{1/2} space and the Nyquist mode has no sign.
class FourierGrid {
 public:
  FourierGrid(double half_period, int n_modes);

  double half_period() const { return half_period_; }
  int n_modes() const { return n_modes_; }
  /// Number of retained wavenumbers, n_modes - 2.
  int size() const { return static_cast<int>(ks_.size()); }
  int mode_index(int i) const { return ks_[static_cast<std::size_t>(i)]; }
  double wavenumber(int i) const;
  Eigen::VectorXd wavenumbers() const;
  Eigen::VectorXd nodes() const;

 private:
  double half_period_;
  int n_modes_;
  std::vector<int> ks_;
};

/// Matrix of c^2|D| + b^2|D|^{-1} + |D|^{-1}V in the basis |lambda|^{1/2} u_hat,
/// where the H^{1/2} inner product is the Euclidean one.
///
/// The constant mode of the periodic Galerkin matrix of H_V is eliminated by
/// condensation (a Schur complement), so that null vectors and the inertia of
/// H_V carry over. zero_mode_coupling and zero_mode_diagonal record the
/// eliminated row: the constant coefficient of a vector u is
/// -(zero_mode_coupling^* u) / zero_mode_diagonal.
struct KreinOperator {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd zero_mode_coupling;
  double zero_mode_diagonal = 0.0;

  Eigen::Index size() const { return matrix.rows(); }
};

/// Diagonal of sgn(lambda_k); the Fourier multiplier of the signature J.
struct SignatureDiag {
  Eigen::VectorXd signs;

  Eigen::Index size() const { return signs.size(); }
  Eigen::MatrixXcd dense() const { return signs.cast<std::complex<double>>().asDiagonal(); }
};

/// c^2 |lambda| + b^2 / |lambda|.
double free_symbol(double lambda, const ProblemParams& params);

/// Discrete Fourier coefficients (1/N) sum_j V(x_j) exp(-i lambda_m x_j)
/// for m = 0..N-1.
Eigen::VectorXcd potential_coefficients(const Potential& p, const FourierGrid& fg);

KreinOperator assemble_l(const Potential& p, const ProblemParams& params, const FourierGrid& fg);

SignatureDiag assemble_j(const FourierGrid& fg);

/// J L.
Eigen::MatrixXcd assemble_pencil(const Eigen::MatrixXcd& l, const SignatureDiag& j);
inline Eigen::MatrixXcd assemble_pencil(const KreinOperator& l, const SignatureDiag& j) {
  return assemble_pencil(l.matrix, j);
}

/// Node samples -> |lambda_k|^{1/2} c_k with c_k the L^2-orthonormal Fourier
/// coefficients. The Euclidean norm of the result approximates the H^{1/2} norm.
Eigen::VectorXcd embed_l2_to_krein(const FourierGrid& fg, const Eigen::Ref<const Eigen::VectorXcd>& u);

/// Inverse of embed_l2_to_krein including the condensed constant mode:
/// returns node samples of the function represented by `v`.
Eigen::VectorXcd synthesize(const FourierGrid& fg, const KreinOperator& l, const Eigen::Ref<const Eigen::VectorXcd>& v);

/// L^2 norm squared of the function represented by `v`, constant mode included.
double l2_norm_squared(const FourierGrid& fg, const KreinOperator& l, const Eigen::Ref<const Eigen::VectorXcd>& v);

}  // namespace krein
