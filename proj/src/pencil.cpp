#include "krein/pencil.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace krein {

namespace {

using cd = std::complex<double>;

std::string format_z(cd z) {
  std::ostringstream os;
  os.precision(10);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::string to_string(EigenClass c) {
  switch (c) {
    case EigenClass::RealPositive: return "RealPositive";
    case EigenClass::RealNegative: return "RealNegative";
    case EigenClass::ImagPositive: return "ImagPositive";
    case EigenClass::ImagNegative: return "ImagNegative";
    case EigenClass::QuadrantI: return "QuadrantI";
    case EigenClass::QuadrantII: return "QuadrantII";
    case EigenClass::QuadrantIII: return "QuadrantIII";
    case EigenClass::QuadrantIV: return "QuadrantIV";
    case EigenClass::NearZero: return "NearZero";
  }
  return "?";
}

Eigen::MatrixXcd kernel_exactify(const Eigen::MatrixXcd& l, const ProblemParams& params, double kernel_tol) {
  return kernel_exactify<cd>(l, eig_hermitian(l, params, kernel_tol));
}

Classification classify_spectrum(const ComplexSpectrum& cs, const Eigen::MatrixXcd& l, const ProblemParams& params,
                                 double tol_class, double zero_window) {
  if (!(tol_class > 0.0) || !(zero_window > 0.0))
    throw std::invalid_argument("classify_spectrum: tolerances must be positive");
  const Eigen::Index n = cs.eigenvalues.size();
  if (l.rows() != n || l.cols() != n) throw std::invalid_argument("classify_spectrum: size mismatch");
  const double scale = params.threshold();
  const bool vectors = cs.has_vectors();

  Classification out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  if (!vectors && n > 0) out.diagnostics.push_back("no eigenvectors: Krein signatures of real eigenvalues unknown");

  std::vector<Eigen::Index> real_pos;
  for (Eigen::Index i = 0; i < n; ++i) {
    ClassifiedEigenvalue& e = out.eigenvalues[static_cast<std::size_t>(i)];
    const cd z = cs.eigenvalues(i);
    e.z = z;
    e.residual = vectors ? cs.residuals(i) : 0.0;
    const double ref = std::max(std::abs(z), scale);
    const double tol = tol_class * ref;
    const double re = std::abs(z.real()), im = std::abs(z.imag());

    if (std::abs(z) <= zero_window * scale) {
      e.cls = EigenClass::NearZero;
      ++out.counts.near_zero;
      continue;
    }
    if (im <= tol) {
      e.cls = z.real() > 0 ? EigenClass::RealPositive : EigenClass::RealNegative;
      if (z.real() > 0) real_pos.push_back(i);
      if (vectors) {
        const auto v = cs.eigenvectors.col(i);
        e.krein_negative = v.dot(l * v).real() <= 0.0;
      }
    } else if (re <= tol) {
      e.cls = z.imag() > 0 ? EigenClass::ImagPositive : EigenClass::ImagNegative;
    } else if (z.real() > 0) {
      e.cls = z.imag() > 0 ? EigenClass::QuadrantI : EigenClass::QuadrantIV;
    } else {
      e.cls = z.imag() > 0 ? EigenClass::QuadrantII : EigenClass::QuadrantIII;
    }
    const double dist = std::min(re, im);
    if (dist > tol && dist <= 100.0 * tol)
      out.diagnostics.push_back("eigenvalue " + format_z(z) + " lies within 100 tol_class of an axis; classified " +
                                to_string(e.cls));

    switch (e.cls) {
      case EigenClass::ImagPositive: ++out.counts.kappa_imag_pos; break;
      case EigenClass::QuadrantI: ++out.counts.kappa_quadrant_I; break;
      case EigenClass::QuadrantII: ++out.counts.kappa_quadrant_II; break;
      default: break;
    }
  }
  out.counts.kappa_c_plus = out.counts.kappa_imag_pos + out.counts.kappa_quadrant_I + out.counts.kappa_quadrant_II;
  if (out.counts.kappa_quadrant_I != out.counts.kappa_quadrant_II)
    out.diagnostics.push_back("quadrant I and II counts differ (" + std::to_string(out.counts.kappa_quadrant_I) +
                              " vs " + std::to_string(out.counts.kappa_quadrant_II) + ")");

  // Krein index of positive real eigenvalues: clusters of numerically equal
  // eigenvalues share one eigenspace; count nonpositive eigenvalues of L
  // compressed to it.
  std::sort(real_pos.begin(), real_pos.end(),
            [&](Eigen::Index a, Eigen::Index b) { return cs.eigenvalues(a).real() < cs.eigenvalues(b).real(); });
  for (std::size_t start = 0; start < real_pos.size();) {
    std::size_t stop = start + 1;
    while (stop < real_pos.size()) {
      const cd a = cs.eigenvalues(real_pos[stop - 1]), b = cs.eigenvalues(real_pos[stop]);
      if (std::abs(b - a) > tol_class * std::max(std::abs(b), scale)) break;
      ++stop;
    }
    if (vectors) {
      const auto size = static_cast<Eigen::Index>(stop - start);
      Eigen::MatrixXcd basis(n, size);
      for (Eigen::Index c = 0; c < size; ++c) {
        basis.col(c) = cs.eigenvectors.col(real_pos[start + static_cast<std::size_t>(c)]);
        basis.col(c).normalize();
      }
      int nonpositive = 0;
      if (size == 1) {
        nonpositive = *out.eigenvalues[static_cast<std::size_t>(real_pos[start])].krein_negative ? 1 : 0;
      } else {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(basis);
        qr.setThreshold(1e-6);
        const Eigen::Index rank = qr.rank();
        if (rank < size)
          out.diagnostics.push_back("real cluster at " + format_z(cs.eigenvalues(real_pos[start])) + " of size " +
                                    std::to_string(size) + " has near-parallel eigenvectors (rank " +
                                    std::to_string(rank) + "); possibly defective");
        const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, rank);
        const Eigen::MatrixXcd g = q.adjoint() * l * q;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((0.5 * (g + g.adjoint())).eval(), Eigen::EigenvaluesOnly);
        nonpositive = static_cast<int>((es.eigenvalues().array() <= 0.0).count());
      }
      out.counts.kappa_real_pos_neg_krein += nonpositive;
    }
    start = stop;
  }
  out.counts.kappa_ham_direct =
      out.counts.kappa_imag_pos + 2 * out.counts.kappa_quadrant_I + 2 * out.counts.kappa_real_pos_neg_krein;
  return out;
}

SymmetryReport check_spectral_symmetries(const Eigen::VectorXcd& eigenvalues, double near_zero_radius) {
  std::vector<cd> zs;
  SymmetryReport r;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues(i)) <= near_zero_radius)
      ++r.excluded_near_zero;
    else
      zs.push_back(eigenvalues(i));
  }
  const std::size_t n = zs.size();

  // Greedy matching on globally sorted pair distances; with well separated
  // eigenvalues it coincides with the optimal bottleneck matching.
  auto mismatch = [&](auto map) {
    std::vector<std::tuple<double, std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const cd fi = map(zs[i]);
      for (std::size_t j = 0; j < n; ++j)
        pairs.emplace_back(std::abs(fi - zs[j]), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<char> used_src(n, 0), used_dst(n, 0);
    double worst = 0.0;
    std::size_t matched = 0;
    for (const auto& [d, i, j] : pairs) {
      if (used_src[i] || used_dst[j]) continue;
      used_src[i] = used_dst[j] = 1;
      worst = std::max(worst, d);
      if (++matched == n) break;
    }
    return worst;
  };
  r.conjugation_mismatch = mismatch([](cd z) { return std::conj(z); });
  r.reflection_mismatch = mismatch([](cd z) { return -std::conj(z); });
  return r;
}

IdentityCheck kappa_ham_direct_vs_formula(const Classification& c, const IndexReport& report) {
  IdentityCheck out;
  out.direct = c.counts.kappa_ham_direct;
  out.formula = report.kappa_ham;
  out.holds = report.kappa_ham.has_value() && *report.kappa_ham == out.direct;
  if (!out.holds) {
    std::ostringstream os;
    os << "direct " << out.direct << " vs formula "
       << (report.kappa_ham ? std::to_string(*report.kappa_ham) : std::string("undefined")) << "; spectrum:";
    for (const auto& e : c.eigenvalues)
      if (e.cls != EigenClass::RealPositive && e.cls != EigenClass::RealNegative)
        os << " [" << format_z(e.z) << " " << to_string(e.cls) << "]";
      else if (e.krein_negative.value_or(false))
        os << " [" << format_z(e.z) << " " << to_string(e.cls) << " krein-negative]";
    out.detail = os.str();
  }
  return out;
}

}  // namespace krein
