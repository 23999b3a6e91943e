#include "smz/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace smz;

namespace {

double beta(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

CubeIntegrand<double> beta_integrand(std::vector<double> a, std::vector<double> b) {
  return [a, b](const CubeNode* x, double logw) {
    double s = logw;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - 1) * x[i].logu + (b[i] - 1) * x[i].logubar;
    return std::exp(s);
  };
}

}  // namespace

TEST(TanhSinh, BetaIntegralsWithEndpointSingularities) {
  TanhSinhOptions opt;
  opt.tol = 1e-12;
  opt.min_exponent = 0.1;
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {0.5, 0.5}, {0.1, 2.0}, {0.25, 0.15}, {3.5, 1.2}}) {
    auto q = tanh_sinh_cube<double>(1, beta_integrand({a}, {b}), opt);
    EXPECT_TRUE(q.converged);
    EXPECT_NEAR(q.value, beta(a, b), 1e-11 * beta(a, b)) << a << " " << b;
    EXPECT_LE(q.err_estimate, 1e-10);
  }
}

TEST(TanhSinh, ProductIntegrandSeparates) {
  TanhSinhOptions opt;
  opt.tol = 1e-10;
  opt.min_exponent = 0.3;
  auto q = tanh_sinh_cube<double>(2, beta_integrand({0.5, 2.0}, {0.3, 0.7}), opt);
  EXPECT_NEAR(q.value, beta(0.5, 0.3) * beta(2.0, 0.7), 1e-9);
  auto q3 = tanh_sinh_cube<double>(3, beta_integrand({1.5, 0.8, 1.0}, {1.0, 1.3, 2.0}), {1e-8, 0.5, 0});
  EXPECT_NEAR(q3.value, beta(1.5, 1.0) * beta(0.8, 1.3) * beta(1.0, 2.0), 1e-7);
}

TEST(TanhSinh, ComplexIntegrand) {
  // int_0^1 u^{i} du = 1 / (1 + i)
  CubeIntegrand<std::complex<double>> f = [](const CubeNode* x, double logw) {
    return std::exp(std::complex<double>(logw, x[0].logu));
  };
  auto q = tanh_sinh_cube<std::complex<double>>(1, f, {1e-12, 0.5, 0});
  EXPECT_LT(std::abs(q.value - 1.0 / std::complex<double>(1, 1)), 1e-11);
}

TEST(TanhSinh, SmoothNonSeparable) {
  // int int 1/(1 + x + y) = 3 log 3 - 4 log 2
  CubeIntegrand<double> f = [](const CubeNode* x, double logw) {
    return std::exp(logw) / (1 + std::exp(x[0].logu) + std::exp(x[1].logu));
  };
  auto q = tanh_sinh_cube<double>(2, f, {1e-11, 1.0, 0});
  EXPECT_NEAR(q.value, 3 * std::log(3.0) - 4 * std::log(2.0), 1e-10);
}

TEST(Lattice, AgreesOnSmoothAndMildlySingularIntegrands) {
  LatticeOptions opt;
  opt.tol = 1e-8;
  opt.min_exponent = 0.5;
  auto q = lattice_cube<double>(2, beta_integrand({1.5, 0.8}, {1.0, 1.3}), opt);
  EXPECT_NEAR(q.value, beta(1.5, 1.0) * beta(0.8, 1.3), 1e-7);
  auto q3 = lattice_cube<double>(3, beta_integrand({1.5, 0.8, 1.0}, {1.0, 1.3, 2.0}), opt);
  EXPECT_NEAR(q3.value, beta(1.5, 1.0) * beta(0.8, 1.3) * beta(1.0, 2.0), 1e-6);
}

TEST(LogAddExp, StableForLargeArguments) {
  EXPECT_NEAR(log_add_exp(0, 0), std::log(2.0), 1e-15);
  EXPECT_NEAR(log_add_exp(1000, 1000), 1000 + std::log(2.0), 1e-12);
  EXPECT_NEAR(log_add_exp(-1000, 0), 0, 1e-15);
  EXPECT_EQ(log_add_exp(-INFINITY, 3.0), 3.0);
}
