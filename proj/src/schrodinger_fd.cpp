#include "krein/schrodinger_fd.hpp"

namespace krein {

Grid::Grid(double half_width, int n_interior) : half_width_(half_width), n_(n_interior) {
  if (!(half_width > 0.0)) throw std::invalid_argument("Grid: half_width must be positive");
  if (n_interior < 3) throw std::invalid_argument("Grid: need at least 3 interior nodes");
  h_ = 2.0 * half_width / (n_interior + 1);
}

Eigen::VectorXd Grid::nodes() const {
  Eigen::VectorXd x(n_);
  for (int j = 0; j < n_; ++j) x(j) = node(j);
  return x;
}

Eigen::MatrixXd SymTridiag::dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd m = diagonal.asDiagonal();
  for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = off_diagonal(i);
  return m;
}

Eigen::MatrixXd SkewTridiag::dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = off_diagonal(i);
    m(i + 1, i) = -off_diagonal(i);
  }
  return m;
}

SymTridiag assemble_h(const Potential& p, const ProblemParams& params, const Grid& g) {
  const int n = g.size();
  const double h = g.spacing();
  const double c2h2 = params.c * params.c / (h * h);
  SymTridiag m;
  m.diagonal.resize(n);
  for (int j = 0; j < n; ++j) m.diagonal(j) = 2.0 * c2h2 + params.b * params.b + p(g.node(j));
  m.off_diagonal = Eigen::VectorXd::Constant(n - 1, -c2h2);
  return m;
}

SkewTridiag assemble_d(const Grid& g) {
  return SkewTridiag{Eigen::VectorXd::Constant(g.size() - 1, 1.0 / (2.0 * g.spacing()))};
}

}  // namespace krein
