#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "krein/krein_fourier.hpp"
#include "krein/pencil.hpp"

using namespace krein;
using cd = std::complex<double>;

namespace {

const ProblemParams kUnit(1, 1);

ComplexSpectrum with_eigenvalues(std::initializer_list<cd> zs) {
  ComplexSpectrum cs;
  cs.eigenvalues.resize(static_cast<Eigen::Index>(zs.size()));
  Eigen::Index i = 0;
  for (cd z : zs) cs.eigenvalues(i++) = z;
  return cs;
}

}  // namespace

TEST_CASE("kernel exactification") {
  const Eigen::MatrixXd l = Eigen::Vector3d(1e-6, 1, 2).asDiagonal();
  const auto s = eig_hermitian(l, kUnit);
  const Eigen::MatrixXd e = kernel_exactify<double>(l, s);
  CHECK(e.isApprox(Eigen::MatrixXd(Eigen::Vector3d(0, 1, 2).asDiagonal())));
  CHECK(exactify_spectrum(s).eigenvalues(0) == 0.0);

  const Eigen::MatrixXd far = Eigen::Vector3d(0.5, 1, 2).asDiagonal();
  CHECK(kernel_exactify<double>(far, eig_hermitian(far, kUnit)) == far);

  const Eigen::MatrixXd two = Eigen::Vector3d(1e-6, -1e-6, 2).asDiagonal();
  CHECK_THROWS_AS(kernel_exactify<double>(two, eig_hermitian(two, kUnit)), KernelAmbiguity);

  const Eigen::MatrixXcd lc = l.cast<cd>();
  CHECK(kernel_exactify(lc, kUnit).isApprox(e.cast<cd>()));
}

TEST_CASE("exactified Fourier operator has an exact null vector") {
  const FourierGrid fg(20.0, 256);
  const KreinOperator op = assemble_l(Potential::poschl_teller(2, -6), kUnit, fg);
  const auto s = eig_hermitian(op.matrix, kUnit);
  const auto k = detect_kernel(s);
  REQUIRE(k.dimension == 1);
  const Eigen::MatrixXcd e = kernel_exactify(op.matrix, kUnit);
  CHECK((e * k.psi0).norm() < 1e-12);
  CHECK((e - e.adjoint()).norm() < 1e-12);
}

TEST_CASE("classification of hand-placed eigenvalues") {
  const auto cs = with_eigenvalues({{3, 1e-10}, {1e-10, 3}, {1e-10, -3}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1},
                                     {1e-5, 0}, {-3, 0}});
  const Classification c = classify_spectrum(cs, Eigen::MatrixXcd::Identity(9, 9), kUnit);
  std::vector<EigenClass> got;
  for (const auto& e : c.eigenvalues) got.push_back(e.cls);
  const std::vector<EigenClass> want{EigenClass::RealPositive, EigenClass::ImagPositive, EigenClass::ImagNegative,
                                     EigenClass::QuadrantI,    EigenClass::QuadrantII,   EigenClass::QuadrantIII,
                                     EigenClass::QuadrantIV,   EigenClass::NearZero,     EigenClass::RealNegative};
  CHECK(got == want);
  CHECK(c.counts.kappa_imag_pos == 1);
  CHECK(c.counts.kappa_quadrant_I == 1);
  CHECK(c.counts.kappa_quadrant_II == 1);
  CHECK(c.counts.kappa_c_plus == 3);
  CHECK(c.counts.near_zero == 1);
  CHECK(c.counts.kappa_ham_direct == 3);
  CHECK_FALSE(c.eigenvalues[0].krein_negative.has_value());
  CHECK_FALSE(c.diagnostics.empty());
  CHECK_THROWS_AS(classify_spectrum(cs, Eigen::MatrixXcd::Identity(2, 2), kUnit), std::invalid_argument);
}

TEST_CASE("two-state models") {
  SUBCASE("rotation: one imaginary pair") {
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(2, 2);
    l(0, 0) = -1.0;
    l(1, 1) = 1.0;
    Eigen::MatrixXcd j(2, 2);
    j << 0, 1, 1, 0;
    const auto cs = eig_general(j * l);
    const Classification c = classify_spectrum(cs, l, kUnit);
    CHECK(c.counts.kappa_imag_pos == 1);
    CHECK(c.counts.kappa_ham_direct == 1);
    const IndexReport r = kappa_ham_formula(1, 0, std::nullopt, 1e-6);
    CHECK(kappa_ham_direct_vs_formula(c, r).holds);
  }
  SUBCASE("real pair with negative signature") {
    const Eigen::MatrixXcd l = -Eigen::MatrixXcd::Identity(2, 2);
    SignatureDiag j;
    j.signs = Eigen::Vector2d(1, -1);
    const auto cs = eig_general(assemble_pencil(l, j));
    const Classification c = classify_spectrum(cs, l, kUnit);
    CHECK(c.counts.kappa_c_plus == 0);
    CHECK(c.counts.kappa_real_pos_neg_krein == 1);
    CHECK(c.counts.kappa_ham_direct == 2);
    CHECK(kappa_ham_direct_vs_formula(c, kappa_ham_formula(2, 0, std::nullopt, 1e-6)).holds);
  }
}

TEST_CASE("free pencil is real with positive signatures") {
  const FourierGrid fg(20.0, 64);
  const KreinOperator op = assemble_l(Potential::zero(), kUnit, fg);
  const auto cs = eig_general(assemble_pencil(op, assemble_j(fg)));
  const Classification c = classify_spectrum(cs, op.matrix, kUnit);
  CHECK(c.counts.kappa_ham_direct == 0);
  CHECK(c.counts.near_zero == 0);
  for (const auto& e : c.eigenvalues) {
    CHECK((e.cls == EigenClass::RealPositive || e.cls == EigenClass::RealNegative));
    CHECK(std::abs(e.z) >= 2.0 - 1e-12);
    REQUIRE(e.krein_negative.has_value());
    CHECK_FALSE(*e.krein_negative);
  }
  CHECK(check_spectral_symmetries(cs).max_mismatch() < 1e-12);
}

TEST_CASE("Poschl-Teller pencil") {
  const FourierGrid fg(20.0, 256);
  const KreinOperator op = assemble_l(Potential::poschl_teller(2, -6), kUnit, fg);
  const Eigen::MatrixXcd l = kernel_exactify(op.matrix, kUnit);
  const auto cs = eig_general(assemble_pencil(l, assemble_j(fg)));
  const Classification c = classify_spectrum(cs, l, kUnit);
  CHECK(c.counts.kappa_imag_pos == 1);
  CHECK(c.counts.kappa_quadrant_I == 0);
  CHECK(c.counts.kappa_real_pos_neg_krein == 0);
  CHECK(c.counts.kappa_ham_direct == 1);
  CHECK(c.counts.near_zero == 2);
  const IndexReport r = kappa_ham_formula(1, 1, 0.25, 1e-6);
  const IdentityCheck id = kappa_ham_direct_vs_formula(c, r);
  CHECK(id.holds);
  CHECK(id.detail.empty());

  const double radius = kDefaultKernelTol * kUnit.threshold();
  const SymmetryReport sym = check_spectral_symmetries(cs, radius);
  CHECK(sym.excluded_near_zero == 2);
  CHECK(sym.max_mismatch() < 1e-7 * kUnit.threshold());

  // a uniform imaginary shift breaks both symmetries
  const Eigen::VectorXcd shifted = cs.eigenvalues.array() + cd(0, 0.1 * kUnit.threshold());
  CHECK(check_spectral_symmetries(shifted, radius).max_mismatch() >= 0.05 * kUnit.threshold());
}

TEST_CASE("symmetry matching by hand") {
  const auto quartet = with_eigenvalues({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {0, 2}, {0, -2}, {3, 0}, {-3, 0}});
  const SymmetryReport r = check_spectral_symmetries(quartet);
  CHECK(r.conjugation_mismatch == 0.0);
  CHECK(r.reflection_mismatch == 0.0);

  const auto lone = with_eigenvalues({{1, 1}, {-1, 1}});
  const SymmetryReport s = check_spectral_symmetries(lone);
  CHECK(s.conjugation_mismatch == doctest::Approx(2.0));
  CHECK(s.reflection_mismatch == 0.0);

  const auto small = with_eigenvalues({{1e-5, 1e-5}, {3, 0}, {-3, 0}});
  CHECK(check_spectral_symmetries(small, 1e-3).excluded_near_zero == 1);
  CHECK(check_spectral_symmetries(small, 1e-3).max_mismatch() == 0.0);
  CHECK(check_spectral_symmetries(small).max_mismatch() > 0.0);
}

TEST_CASE("identity check reports disagreement") {
  const auto cs = with_eigenvalues({{0, 1}, {0, -1}});
  const Classification c = classify_spectrum(cs, Eigen::MatrixXcd::Identity(2, 2), kUnit);
  const IdentityCheck wrong = kappa_ham_direct_vs_formula(c, kappa_ham_formula(0, 0, std::nullopt, 1e-6));
  CHECK_FALSE(wrong.holds);
  CHECK(wrong.direct == 1);
  CHECK(wrong.formula == 0);
  CHECK(wrong.detail.find("ImagPositive") != std::string::npos);
  const IdentityCheck undefined = kappa_ham_direct_vs_formula(c, kappa_ham_formula(1, 1, 0.0, 1e-6));
  CHECK_FALSE(undefined.holds);
  CHECK(undefined.detail.find("undefined") != std::string::npos);
}
