#include "krein/index.hpp"

#include <cmath>
#include <stdexcept>

namespace krein {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    case Verdict::DegenerateDV: return "DegenerateDV";
    case Verdict::NoNegativeSpectrum: return "NoNegativeSpectrum";
  }
  return "?";
}

double compute_dv(const SpectrumResult<double>& h, const KernelInfo<double>& k, const Grid& g) {
  if (h.size() != g.size()) throw std::invalid_argument("compute_dv: grid and spectrum sizes differ");
  return compute_dv(h, k, assemble_d(g));
}

double compute_d_krein(const SpectrumResult<std::complex<double>>& l, const KernelInfo<std::complex<double>>& k,
                       const SignatureDiag& j, double orth_tol) {
  if (k.dimension != 1) throw std::invalid_argument("compute_d_krein: kernel is absent");
  if (j.size() != l.size()) throw std::invalid_argument("compute_d_krein: size mismatch");
  const Eigen::VectorXcd jpsi = j.signs.cast<std::complex<double>>().cwiseProduct(k.psi0);
  const Eigen::VectorXcd u = apply_pseudo_inverse(l, k, jpsi, orth_tol);
  return jpsi.dot(u).real();
}

double compute_d_krein(const SpectrumResult<std::complex<double>>& l, const KernelInfo<std::complex<double>>& k,
                       const SignatureDiag& j, const FourierGrid& fg, const KreinOperator& op, double orth_tol) {
  const double d = compute_d_krein(l, k, j, orth_tol);
  return d / l2_norm_squared(fg, op, k.psi0);
}

IndexReport kappa_ham_formula(int kappa_minus, int kernel_dim, std::optional<double> d_v, double degeneracy_tol) {
  if (kappa_minus < 0) throw std::invalid_argument("kappa_ham_formula: negative kappa_minus");
  if (kernel_dim != 0 && kernel_dim != 1) throw std::invalid_argument("kappa_ham_formula: kernel_dim must be 0 or 1");
  if (d_v.has_value() != (kernel_dim == 1))
    throw std::invalid_argument("kappa_ham_formula: d_v must be given exactly when the kernel is nontrivial");
  if (!(degeneracy_tol >= 0.0)) throw std::invalid_argument("kappa_ham_formula: degeneracy_tol must be >= 0");

  IndexReport r;
  r.kappa_minus = kappa_minus;
  r.kernel_dim = kernel_dim;
  r.d_v = d_v;

  if (kernel_dim == 0) {
    r.kappa_ham = kappa_minus;
  } else if (std::abs(*d_v) <= degeneracy_tol) {
    r.notes.push_back("D_V within degeneracy tolerance: index formula does not apply; see Jordan chain length");
  } else {
    r.kappa_minus_d = *d_v < 0.0 ? 1 : 0;
    r.kappa_ham = kappa_minus - *r.kappa_minus_d;
    if (*r.kappa_ham < 0)
      throw std::invalid_argument("kappa_ham_formula: D_V < 0 with kappa_minus = 0 is inconsistent");
  }

  if (kappa_minus == 0)
    r.verdict = Verdict::NoNegativeSpectrum;
  else if (!r.kappa_ham)
    r.verdict = Verdict::DegenerateDV;
  else
    r.verdict = *r.kappa_ham == 0 ? Verdict::Stable : Verdict::Unstable;

  if (r.kappa_minus_d) {
    const bool odd = kappa_minus % 2 == 1;
    if ((odd && *d_v > 0.0) || (!odd && *d_v < 0.0))
      r.notes.push_back("at least one purely imaginary eigenvalue expected");
    if (kappa_minus == 1 && *d_v > 0.0) r.notes.push_back("one purely imaginary eigenvalue");
  }
  return r;
}

JordanChain jordan_chain_at_zero(const SpectrumResult<double>& h, const KernelInfo<double>& k, const Grid& g,
                                 int max_len) {
  if (h.size() != g.size()) throw std::invalid_argument("jordan_chain_at_zero: grid and spectrum sizes differ");
  return jordan_chain_at_zero(h, k, assemble_d(g), max_len);
}

}  // namespace krein
