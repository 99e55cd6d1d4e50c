#pragma once

#include <Eigen/Core>
#include <stdexcept>

#include "krein/potentials.hpp"

namespace krein {

/// Uniform grid on (-X, X) with Dirichlet truncation: nodes x_j = -X + j h,
/// j = 1..n, h = 2X / (n + 1).
class Grid {
 public:
  Grid(double half_width, int n_interior);

  double half_width() const { return half_width_; }
  int size() const { return n_; }
  double spacing() const { return h_; }
  double node(int j) const { return -half_width_ + (j + 1) * h_; }  // j = 0..n-1
  Eigen::VectorXd nodes() const;

 private:
  double half_width_;
  int n_;
  double h_;
};

/// Real symmetric tridiagonal matrix.
struct SymTridiag {
  Eigen::VectorXd diagonal;
  Eigen::VectorXd off_diagonal;

  Eigen::Index size() const { return diagonal.size(); }
  Eigen::MatrixXd dense() const;
  template <class Derived>
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> operator*(const Eigen::MatrixBase<Derived>& u) const;
};

/// Antisymmetric tridiagonal matrix with superdiagonal `off_diagonal`
/// (subdiagonal is its negation).
struct SkewTridiag {
  Eigen::VectorXd off_diagonal;

  Eigen::Index size() const { return off_diagonal.size() + 1; }
  Eigen::MatrixXd dense() const;
  template <class Derived>
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> operator*(const Eigen::MatrixBase<Derived>& u) const;
};

/// Three-point realization of -c^2 d^2/dx^2 + b^2 + V on the grid.
SymTridiag assemble_h(const Potential& p, const ProblemParams& params, const Grid& g);

/// Central difference for d/dx with zero ghost values.
SkewTridiag assemble_d(const Grid& g);

/// (u_{j+1} - u_{j-1}) / 2h. Works on real and complex vectors.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> apply_derivative(const Grid& g,
                                                                            const Eigen::MatrixBase<Derived>& u) {
  if (u.size() != g.size()) throw std::invalid_argument("apply_derivative: length mismatch");
  return assemble_d(g) * u;
}

// ---------------------------------------------------------------------------

template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> SymTridiag::operator*(
    const Eigen::MatrixBase<Derived>& u) const {
  const Eigen::Index n = size();
  if (u.size() != n) throw std::invalid_argument("SymTridiag: length mismatch");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out = diagonal.cwiseProduct(u.derived()).eval();
  if (n > 1) {
    out.head(n - 1) += off_diagonal.cwiseProduct(u.tail(n - 1));
    out.tail(n - 1) += off_diagonal.cwiseProduct(u.head(n - 1));
  }
  return out;
}

template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> SkewTridiag::operator*(
    const Eigen::MatrixBase<Derived>& u) const {
  const Eigen::Index n = size();
  if (u.size() != n) throw std::invalid_argument("SkewTridiag: length mismatch");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>::Zero(n);
  if (n > 1) {
    out.head(n - 1) += off_diagonal.cwiseProduct(u.tail(n - 1));
    out.tail(n - 1) -= off_diagonal.cwiseProduct(u.head(n - 1));
  }
  return out;
}

}  // namespace krein
