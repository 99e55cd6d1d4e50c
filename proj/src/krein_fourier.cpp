#include "krein/krein_fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

#include "krein/errors.hpp"

namespace krein {

namespace {

using cd = std::complex<double>;

// exp(-i lambda_m x_j) = (-1)^m exp(-2 pi i m j / N) on the collocation grid.
std::vector<cd> forward_dft(const FourierGrid& fg, const Eigen::Ref<const Eigen::VectorXcd>& u) {
  const int n = fg.n_modes();
  std::vector<cd> in(u.data(), u.data() + n), out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  for (int m = 1; m < n; m += 2) out[static_cast<std::size_t>(m)] = -out[static_cast<std::size_t>(m)];
  return out;
}

int wrap(int m, int n) { return ((m % n) + n) % n; }

}  // namespace

FourierGrid::FourierGrid(double half_period, int n_modes) : half_period_(half_period), n_modes_(n_modes) {
  if (!(half_period > 0.0)) throw std::invalid_argument("FourierGrid: half_period must be positive");
  if (n_modes < 8 || n_modes % 2) throw std::invalid_argument("FourierGrid: n_modes must be even and >= 8");
  for (int k = -(n_modes / 2 - 1); k <= n_modes / 2 - 1; ++k)
    if (k != 0) ks_.push_back(k);
}

double FourierGrid::wavenumber(int i) const { return std::numbers::pi * mode_index(i) / half_period_; }

Eigen::VectorXd FourierGrid::wavenumbers() const {
  Eigen::VectorXd lam(size());
  for (int i = 0; i < size(); ++i) lam(i) = wavenumber(i);
  return lam;
}

Eigen::VectorXd FourierGrid::nodes() const {
  Eigen::VectorXd x(n_modes_);
  for (int j = 0; j < n_modes_; ++j) x(j) = -half_period_ + 2.0 * half_period_ * j / n_modes_;
  return x;
}

double free_symbol(double lambda, const ProblemParams& params) {
  if (lambda == 0.0) throw std::invalid_argument("free_symbol: lambda must be nonzero");
  const double a = std::abs(lambda);
  return params.c * params.c * a + params.b * params.b / a;
}

Eigen::VectorXcd potential_coefficients(const Potential& p, const FourierGrid& fg) {
  const int n = fg.n_modes();
  const Eigen::VectorXd x = fg.nodes();
  Eigen::VectorXcd samples(n);
  for (int j = 0; j < n; ++j) samples(j) = p(x(j));
  const auto f = forward_dft(fg, samples);
  Eigen::VectorXcd vc(n);
  for (int m = 0; m < n; ++m) vc(m) = f[static_cast<std::size_t>(m)] / static_cast<double>(n);
  return vc;
}

KreinOperator assemble_l(const Potential& p, const ProblemParams& params, const FourierGrid& fg) {
  const int m = fg.size();
  const int n = fg.n_modes();
  const Eigen::VectorXcd vc = potential_coefficients(p, fg);
  // Coefficient of exp(-i lambda_d x); negative offsets by conjugation so the
  // assembled matrix is exactly Hermitian.
  auto coeff = [&](int d) -> cd {
    if (d == 0) return {vc(0).real(), 0.0};
    return d > 0 ? vc(wrap(d, n)) : std::conj(vc(wrap(-d, n)));
  };

  Eigen::VectorXd r(m);
  for (int i = 0; i < m; ++i) r(i) = 1.0 / std::sqrt(std::abs(fg.wavenumber(i)));

  KreinOperator op;
  op.matrix.resize(m, m);
  for (int col = 0; col < m; ++col) {
    const int kl = fg.mode_index(col);
    for (int row = 0; row < m; ++row) op.matrix(row, col) = coeff(fg.mode_index(row) - kl) * (r(row) * r(col));
    op.matrix(col, col) += free_symbol(fg.wavenumber(col), params);
  }

  op.zero_mode_diagonal = params.b * params.b + vc(0).real();
  op.zero_mode_coupling.resize(m);
  for (int i = 0; i < m; ++i) op.zero_mode_coupling(i) = coeff(fg.mode_index(i)) * r(i);
  if (!(op.zero_mode_diagonal > 0.0))
    throw NumericalError("zero-mode condensation needs b^2 + mean(V) > 0 on the periodic box (got " +
                         std::to_string(op.zero_mode_diagonal) + "); enlarge the half period");
  op.matrix.noalias() -= (op.zero_mode_coupling * op.zero_mode_coupling.adjoint()) / op.zero_mode_diagonal;
  // enforce exact Hermitian symmetry after the rank-one update
  op.matrix = (0.5 * (op.matrix + op.matrix.adjoint())).eval();
  return op;
}

SignatureDiag assemble_j(const FourierGrid& fg) {
  SignatureDiag j;
  j.signs.resize(fg.size());
  for (int i = 0; i < fg.size(); ++i) j.signs(i) = fg.mode_index(i) > 0 ? 1.0 : -1.0;
  return j;
}

Eigen::MatrixXcd assemble_pencil(const Eigen::MatrixXcd& l, const SignatureDiag& j) {
  if (l.rows() != j.size() || l.cols() != j.size()) throw std::invalid_argument("assemble_pencil: size mismatch");
  return j.signs.cast<cd>().asDiagonal() * l;
}

Eigen::VectorXcd embed_l2_to_krein(const FourierGrid& fg, const Eigen::Ref<const Eigen::VectorXcd>& u) {
  const int n = fg.n_modes();
  if (u.size() != n) throw std::invalid_argument("embed_l2_to_krein: length mismatch");
  const auto f = forward_dft(fg, u);
  const double norm = std::sqrt(2.0 * fg.half_period()) / n;
  Eigen::VectorXcd out(fg.size());
  for (int i = 0; i < fg.size(); ++i)
    out(i) = std::sqrt(std::abs(fg.wavenumber(i))) * norm * f[static_cast<std::size_t>(wrap(fg.mode_index(i), n))];
  return out;
}

Eigen::VectorXcd synthesize(const FourierGrid& fg, const KreinOperator& l,
                            const Eigen::Ref<const Eigen::VectorXcd>& v) {
  if (v.size() != fg.size()) throw std::invalid_argument("synthesize: length mismatch");
  const Eigen::VectorXd x = fg.nodes();
  const double s = 1.0 / std::sqrt(2.0 * fg.half_period());
  const cd c0 = -l.zero_mode_coupling.dot(v) / l.zero_mode_diagonal;
  Eigen::VectorXcd u = Eigen::VectorXcd::Constant(fg.n_modes(), c0 * s);
  for (int i = 0; i < fg.size(); ++i) {
    const double lam = fg.wavenumber(i);
    const cd c = v(i) / std::sqrt(std::abs(lam));
    for (int j = 0; j < fg.n_modes(); ++j) u(j) += c * s * std::polar(1.0, lam * x(j));
  }
  return u;
}

double l2_norm_squared(const FourierGrid& fg, const KreinOperator& l, const Eigen::Ref<const Eigen::VectorXcd>& v) {
  if (v.size() != fg.size()) throw std::invalid_argument("l2_norm_squared: length mismatch");
  const cd c0 = -l.zero_mode_coupling.dot(v) / l.zero_mode_diagonal;
  double acc = std::norm(c0);
  for (int i = 0; i < fg.size(); ++i) acc += std::norm(v(i)) / std::abs(fg.wavenumber(i));
  return acc;
}

}  // namespace krein
