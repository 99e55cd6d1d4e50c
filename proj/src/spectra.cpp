#include "krein/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <lapacke.h>

namespace krein {

namespace {

void check_params(double kernel_tol) {
  if (!(kernel_tol > 0.0)) throw std::invalid_argument("kernel_tol must be positive");
}

template <class M>
void require_hermitian(const M& m, const char* who) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(who) + ": matrix is not square");
  const double norm = m.norm();
  const double defect = (m - m.adjoint()).norm();
  if (defect > 1e-10 * std::max(norm, 1.0)) {
    std::ostringstream os;
    os << who << ": matrix not Hermitian (defect " << defect << ", norm " << norm << ")";
    throw std::invalid_argument(os.str());
  }
}

std::string diagnostics(const char* routine, lapack_int info, Eigen::Index n, double norm) {
  std::ostringstream os;
  os << routine << " failed: info=" << info << ", n=" << n << ", |M|=" << norm;
  return os.str();
}

}  // namespace

SpectrumResult<double> eig_hermitian(const SymTridiag& m, const ProblemParams& params, double kernel_tol) {
  check_params(kernel_tol);
  const auto n = static_cast<lapack_int>(m.size());
  Eigen::VectorXd d = m.diagonal;
  Eigen::VectorXd e(n);
  e.head(n - 1) = m.off_diagonal;
  e(n - 1) = 0.0;
  SpectrumResult<double> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, 0.0, &found,
                     out.eigenvalues.data(), out.eigenvectors.data(), n, isuppz.data());
  if (info != 0 || found != n)
    throw NumericalError(diagnostics("dstevr", info, n, m.diagonal.cwiseAbs().maxCoeff()));
  out.reference_scale = params.threshold();
  out.kernel_tol = kernel_tol;
  return out;
}

SpectrumResult<double> eig_hermitian(const Eigen::MatrixXd& m, const ProblemParams& params, double kernel_tol) {
  check_params(kernel_tol);
  require_hermitian(m, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw NumericalError(diagnostics("SelfAdjointEigenSolver", static_cast<lapack_int>(es.info()), m.rows(),
                                     m.norm()));
  return {es.eigenvalues(), es.eigenvectors(), params.threshold(), kernel_tol};
}

SpectrumResult<std::complex<double>> eig_hermitian(const Eigen::MatrixXcd& m, const ProblemParams& params,
                                                   double kernel_tol) {
  check_params(kernel_tol);
  require_hermitian(m, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw NumericalError(diagnostics("SelfAdjointEigenSolver", static_cast<lapack_int>(es.info()), m.rows(),
                                     m.norm()));
  return {es.eigenvalues(), es.eigenvectors(), params.threshold(), kernel_tol};
}

Eigen::VectorXd eigenvalues_by_index(const SymTridiag& m, int first, int last) {
  const auto n = static_cast<lapack_int>(m.size());
  if (first < 0 || last < first || last >= n) throw std::invalid_argument("eigenvalues_by_index: bad range");
  Eigen::VectorXd d = m.diagonal;
  Eigen::VectorXd e(n);
  e.head(n - 1) = m.off_diagonal;
  e(n - 1) = 0.0;
  Eigen::VectorXd w(n);
  double z_dummy = 0.0;
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', n, d.data(), e.data(), 0.0, 0.0, first + 1,
                                         last + 1, 0.0, &found, w.data(), &z_dummy, 1, isuppz.data());
  if (info != 0 || found != last - first + 1)
    throw NumericalError(diagnostics("dstevr", info, n, m.diagonal.cwiseAbs().maxCoeff()));
  return w.head(found);
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  require_hermitian(m, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError(diagnostics("SelfAdjointEigenSolver", static_cast<lapack_int>(es.info()), m.rows(),
                                     m.norm()));
  return es.eigenvalues();
}

ComplexSpectrum eig_general(const Eigen::MatrixXcd& a, bool with_vectors) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eig_general: matrix is not square");
  const auto n = static_cast<lapack_int>(a.rows());
  ComplexSpectrum out;
  out.eigenvalues.resize(n);
  if (n == 0) return out;
  Eigen::MatrixXcd work = a;
  Eigen::MatrixXcd vr;
  if (with_vectors) vr.resize(n, n);
  std::complex<double> dummy;
  auto* wp = reinterpret_cast<lapack_complex_double*>(out.eigenvalues.data());
  auto* ap = reinterpret_cast<lapack_complex_double*>(work.data());
  auto* vp = with_vectors ? reinterpret_cast<lapack_complex_double*>(vr.data())
                          : reinterpret_cast<lapack_complex_double*>(&dummy);
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', with_vectors ? 'V' : 'N', n, ap, n, wp, nullptr,
                                        1, vp, with_vectors ? n : 1);
  if (info != 0) throw NumericalError(diagnostics("zgeev", info, n, a.norm()));
  if (with_vectors) {
    out.eigenvectors = std::move(vr);
    Eigen::MatrixXcd r = a * out.eigenvectors;
    r -= out.eigenvectors * out.eigenvalues.asDiagonal();
    out.residuals = r.colwise().norm().transpose();
  }
  return out;
}

}  // namespace krein
