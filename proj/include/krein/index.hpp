#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "krein/krein_fourier.hpp"
#include "krein/schrodinger_fd.hpp"
#include "krein/spectra.hpp"

namespace krein {

enum class Verdict { Stable, Unstable, DegenerateDV, NoNegativeSpectrum };

std::string to_string(Verdict v);

struct IndexReport {
  int kappa_minus = 0;
  int kernel_dim = 0;
  std::optional<double> d_v;
  std::optional<int> kappa_minus_d;
  std::optional<int> kappa_ham;
  Verdict verdict = Verdict::NoNegativeSpectrum;
  std::vector<std::string> notes;
};

/// psi_0, psi_1, ... with H psi_{k+1} = d/dx psi_k.
struct JordanChain {
  std::vector<Eigen::VectorXd> vectors;

  int length() const { return static_cast<int>(vectors.size()); }
};

namespace detail {

inline void require_kernel(const KernelInfo<double>& k, const char* who) {
  if (k.dimension != 1) throw std::invalid_argument(std::string(who) + ": kernel is absent");
}

}  // namespace detail

/// (H^+ psi_0', psi_0') for the L^2-normalized kernel function. `derivative`
/// is any operator with `derivative * vector` (a SkewTridiag on a grid, or a
/// dense matrix for hand-built models). With unit l2 vectors the grid weight h
/// cancels, so the value approximates the continuum integral.
template <class Derivative>
double compute_dv(const SpectrumResult<double>& h, const KernelInfo<double>& k, const Derivative& derivative,
                  double orth_tol = kDefaultOrthTol) {
  detail::require_kernel(k, "compute_dv");
  const Eigen::VectorXd w = derivative * k.psi0;
  const double overlap = std::abs(w.dot(k.psi0));
  if (overlap > orth_tol * std::max(w.norm(), 1.0))
    throw NumericalError("compute_dv: derivative of the kernel vector is not orthogonal to it (overlap " +
                         std::to_string(overlap) + ")");
  const Eigen::VectorXd u = apply_pseudo_inverse(h, k, w, orth_tol);
  return u.dot(w);
}

double compute_dv(const SpectrumResult<double>& h, const KernelInfo<double>& k, const Grid& g);

/// (L^+ J psi_0, J psi_0) in the rescaled Fourier basis, with psi_0 of unit
/// H^{1/2} norm.
double compute_d_krein(const SpectrumResult<std::complex<double>>& l, const KernelInfo<std::complex<double>>& k,
                       const SignatureDiag& j, double orth_tol = kDefaultOrthTol);

/// Same quantity for the L^2-normalized kernel function, directly comparable
/// with compute_dv.
double compute_d_krein(const SpectrumResult<std::complex<double>>& l, const KernelInfo<std::complex<double>>& k,
                       const SignatureDiag& j, const FourierGrid& fg, const KreinOperator& op,
                       double orth_tol = kDefaultOrthTol);

/// 1e-6 |psi_0'|^2 / (2bc) with psi_0 L^2-normalized.
template <class Derivative>
double default_degeneracy_tol(const KernelInfo<double>& k, const Derivative& derivative, const ProblemParams& params) {
  detail::require_kernel(k, "default_degeneracy_tol");
  const Eigen::VectorXd w = derivative * k.psi0;
  return 1e-6 * w.squaredNorm() / params.threshold();
}

IndexReport kappa_ham_formula(int kappa_minus, int kernel_dim, std::optional<double> d_v, double degeneracy_tol);

/// Iterates psi_{k+1} = H^+ (d/dx psi_k) while d/dx psi_k stays orthogonal to
/// the kernel (relative tolerance orth_tol) and the chain is shorter than max_len.
template <class Derivative>
JordanChain jordan_chain_at_zero(const SpectrumResult<double>& h, const KernelInfo<double>& k,
                                 const Derivative& derivative, int max_len, double orth_tol = kDefaultOrthTol) {
  detail::require_kernel(k, "jordan_chain_at_zero");
  if (max_len < 1) throw std::invalid_argument("jordan_chain_at_zero: max_len must be positive");
  JordanChain chain;
  chain.vectors.push_back(k.psi0);
  while (chain.length() < max_len) {
    const Eigen::VectorXd w = derivative * chain.vectors.back();
    const double wn = w.norm();
    if (wn == 0.0 || std::abs(w.dot(k.psi0)) > orth_tol * wn) break;
    chain.vectors.push_back(apply_pseudo_inverse(h, k, w, orth_tol));
  }
  return chain;
}

JordanChain jordan_chain_at_zero(const SpectrumResult<double>& h, const KernelInfo<double>& k, const Grid& g,
                                 int max_len);

}  // namespace krein
