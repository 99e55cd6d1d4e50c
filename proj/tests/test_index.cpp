#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "krein/index.hpp"
#include "krein/workflow.hpp"

using namespace krein;

namespace {

bool has_note(const IndexReport& r, const std::string& text) {
  return std::find(r.notes.begin(), r.notes.end(), text) != r.notes.end();
}

struct FdKernel {
  Grid grid;
  SymTridiag h;
  SpectrumResult<double> spectrum;
  KernelInfo<double> kernel;
};

// The coarse grids here need a wider kernel window than the default.
FdKernel fd_kernel(const Potential& p, const ProblemParams& params, int n, double half_width = 20.0) {
  const Grid g(half_width, n);
  SymTridiag h = assemble_h(p, params, g);
  auto s = eig_hermitian(h, params, 1e-3);
  auto k = detect_kernel(s);
  return {g, std::move(h), std::move(s), std::move(k)};
}

// -x psi_0 / (2c^2) solves H u = psi_0' in the continuum, so
// D_V = <-x psi_0 / (2c^2), psi_0'> = |psi_0|^2 / (4c^2).
double dv_oracle(const FdKernel& f, double c) {
  const Eigen::VectorXd u = -f.grid.nodes().cwiseProduct(f.kernel.psi0) / (2 * c * c);
  return u.dot(apply_derivative(f.grid, f.kernel.psi0));
}

}  // namespace

TEST_CASE("synthetic three-state model") {
  SkewTridiag k;
  k.off_diagonal = Eigen::Vector2d(-1, 0);
  const ProblemParams params(1, 1);
  {
    const auto s = eig_hermitian(Eigen::MatrixXd(Eigen::Vector3d(0, 1, 2).asDiagonal()), params);
    CHECK(compute_dv(s, detect_kernel(s), k) == doctest::Approx(1.0));
  }
  {
    const auto s = eig_hermitian(Eigen::MatrixXd(Eigen::Vector3d(0, -1, 2).asDiagonal()), params);
    const double d = compute_dv(s, detect_kernel(s), k);
    CHECK(d == doctest::Approx(-1.0));
    const IndexReport r = kappa_ham_formula(count_negative(s), 1, d, 1e-6);
    CHECK(r.kappa_ham == 0);
    CHECK(r.verdict == Verdict::Stable);
  }
  {
    // derivative that is not skew: K psi_0 has a kernel component
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 3);
    bad(0, 0) = 1.0;
    bad(1, 0) = 1.0;
    const auto s = eig_hermitian(Eigen::MatrixXd(Eigen::Vector3d(0, 1, 2).asDiagonal()), params);
    CHECK_THROWS_AS(compute_dv(s, detect_kernel(s), bad), NumericalError);
  }
  {
    const auto s = eig_hermitian(Eigen::MatrixXd(Eigen::Vector3d(1, 2, 3).asDiagonal()), params);
    CHECK_THROWS_AS(compute_dv(s, detect_kernel(s), k), std::invalid_argument);
  }
}

TEST_CASE("D_V of the Poschl-Teller kernel") {
  const ProblemParams params(1, 1);
  const Potential p = Potential::poschl_teller(2, -6);
  const FdKernel coarse = fd_kernel(p, params, 1000);
  const FdKernel fine = fd_kernel(p, params, 2000);
  REQUIRE(fine.kernel.dimension == 1);
  const double d_coarse = compute_dv(coarse.spectrum, coarse.kernel, coarse.grid);
  const double d_fine = compute_dv(fine.spectrum, fine.kernel, fine.grid);
  CHECK(d_fine == doctest::Approx(dv_oracle(fine, 1.0)).epsilon(1e-4));
  CHECK(d_fine == doctest::Approx(0.25).epsilon(1e-4));
  CHECK(std::abs(d_coarse - d_fine) < 1e-4);
  CHECK(d_fine > default_degeneracy_tol(fine.kernel, assemble_d(fine.grid), params));

  const IndexReport r = kappa_ham_formula(count_negative(fine.spectrum), 1, d_fine,
                                          default_degeneracy_tol(fine.kernel, assemble_d(fine.grid), params));
  CHECK(r.kappa_minus == 1);
  CHECK(r.kappa_ham == 1);
  CHECK(r.verdict == Verdict::Unstable);
  CHECK(has_note(r, "one purely imaginary eigenvalue"));
}

TEST_CASE("D_V scales as 1/c^2") {
  // -c^2 d^2 + c^2 - 6c^2 sech^2 = c^2 (-d^2 + 1 - 6 sech^2)
  const double c = 2.0;
  const ProblemParams params(c, c);
  const FdKernel f = fd_kernel(Potential::poschl_teller(2, -6 * c * c), params, 2000);
  REQUIRE(f.kernel.dimension == 1);
  const double d = compute_dv(f.spectrum, f.kernel, f.grid);
  CHECK(d == doctest::Approx(dv_oracle(f, c)).epsilon(1e-4));
  CHECK(d == doctest::Approx(0.25 / (c * c)).epsilon(1e-4));
}

TEST_CASE("D_V is invariant under reflection") {
  const ProblemParams params(1, 1);
  const Grid g(20.0, 1500);
  auto dv_for = [&](double center) {
    const Potential base =
        Potential::sum({Potential::poschl_teller(2, -6), Potential::gaussian_well(-0.3, 0.5, center)});
    const double s = sharpen_fd(base, params, g, 1, 0.1);
    const FdKernel f = fd_kernel(Potential::scaled(base, s), params, g.size(), g.half_width());
    REQUIRE(f.kernel.dimension == 1);
    return compute_dv(f.spectrum, f.kernel, f.grid);
  };
  const double right = dv_for(1.0);
  const double left = dv_for(-1.0);
  CHECK(right > 0.0);
  CHECK(right == doctest::Approx(left).epsilon(1e-6));
}

TEST_CASE("Fourier D agrees with the finite-difference D_V") {
  const ProblemParams params(1, 1);
  const Potential p = Potential::poschl_teller(2, -6);
  const FourierGrid fg(20.0, 512);
  const KreinOperator op = assemble_l(p, params, fg);
  const auto s = eig_hermitian(op.matrix, params);
  const auto k = detect_kernel(s);
  REQUIRE(k.dimension == 1);
  const double d = compute_d_krein(s, k, assemble_j(fg), fg, op);
  const FdKernel f = fd_kernel(p, params, 2000);
  const double dv = compute_dv(f.spectrum, f.kernel, f.grid);
  CHECK(std::abs(d - dv) <= 1e-3 * std::abs(dv));
  CHECK(d == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("index formula") {
  SUBCASE("no kernel") {
    const IndexReport r = kappa_ham_formula(2, 0, std::nullopt, 1e-6);
    CHECK(r.kappa_ham == 2);
    CHECK_FALSE(r.kappa_minus_d.has_value());
    CHECK(r.verdict == Verdict::Unstable);
    const IndexReport z = kappa_ham_formula(0, 0, std::nullopt, 1e-6);
    CHECK(z.kappa_ham == 0);
    CHECK(z.verdict == Verdict::NoNegativeSpectrum);
  }
  SUBCASE("negative D_V removes one direction") {
    const IndexReport r = kappa_ham_formula(1, 1, -0.25, 1e-6);
    CHECK(r.kappa_minus_d == 1);
    CHECK(r.kappa_ham == 0);
    CHECK(r.verdict == Verdict::Stable);
    CHECK(r.notes.empty());
    const IndexReport two = kappa_ham_formula(2, 1, -0.1, 1e-6);
    CHECK(two.kappa_ham == 1);
    CHECK(has_note(two, "at least one purely imaginary eigenvalue expected"));
  }
  SUBCASE("positive D_V") {
    const IndexReport r = kappa_ham_formula(1, 1, 0.25, 1e-6);
    CHECK(r.kappa_minus_d == 0);
    CHECK(r.kappa_ham == 1);
    CHECK(has_note(r, "at least one purely imaginary eigenvalue expected"));
    CHECK(has_note(r, "one purely imaginary eigenvalue"));
    const IndexReport two = kappa_ham_formula(2, 1, 0.1, 1e-6);
    CHECK(two.kappa_ham == 2);
    CHECK(two.notes.empty());
    CHECK(kappa_ham_formula(0, 1, 0.1, 1e-6).verdict == Verdict::NoNegativeSpectrum);
  }
  SUBCASE("degenerate") {
    const IndexReport r = kappa_ham_formula(1, 1, 1e-9, 1e-6);
    CHECK_FALSE(r.kappa_ham.has_value());
    CHECK(r.verdict == Verdict::DegenerateDV);
    CHECK(r.notes.size() == 1);
  }
  SUBCASE("inconsistent input") {
    CHECK_THROWS_AS(kappa_ham_formula(0, 1, -0.1, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(kappa_ham_formula(1, 1, std::nullopt, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(kappa_ham_formula(1, 0, 0.3, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(kappa_ham_formula(-1, 0, std::nullopt, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(kappa_ham_formula(1, 2, 0.3, 1e-6), std::invalid_argument);
  }
}

TEST_CASE("Jordan chain at zero") {
  SUBCASE("nondegenerate kernel gives length two") {
    const ProblemParams params(1, 1);
    const FdKernel f = fd_kernel(Potential::poschl_teller(2, -6), params, 2000);
    const JordanChain chain = jordan_chain_at_zero(f.spectrum, f.kernel, f.grid, 6);
    CHECK(chain.length() == 2);
    // H psi_1 = psi_0' up to the projection
    const Eigen::VectorXd w = apply_derivative(f.grid, chain.vectors[0]);
    CHECK((f.h * chain.vectors[1] - w).norm() < 1e-8 * w.norm());
    CHECK(jordan_chain_at_zero(f.spectrum, f.kernel, f.grid, 1).length() == 1);
  }
  SUBCASE("degenerate synthetic model continues") {
    const ProblemParams params(1, 1);
    Eigen::MatrixXd h = Eigen::Vector4d(0, 1, -1, 1).asDiagonal();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(4, 4);
    k(1, 0) = 1;
    k(2, 0) = 1;
    k(3, 1) = 1;
    k = (k - k.transpose()).eval();
    const auto s = eig_hermitian(h, params);
    const auto ker = detect_kernel(s);
    const double d = compute_dv(s, ker, k);
    CHECK(std::abs(d) < 1e-14);
    CHECK(jordan_chain_at_zero(s, ker, k, 10).length() >= 3);
    CHECK(kappa_ham_formula(count_negative(s), 1, d, 1e-6).verdict == Verdict::DegenerateDV);
  }
}
