#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rocflow/stencil.hpp"

using namespace rocflow;

namespace {

std::vector<double> sample(int n, double h, double (*f)(double, double)) {
  std::vector<double> v(size_t(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) v[size_t(j) * n + i] = f(i * h, j * h);
  return v;
}

double max_err(const std::vector<double>& got, int n, double h,
               double (*df)(double, double)) {
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      worst = std::max(worst,
                       std::abs(got[size_t(j) * n + i] - df(i * h, j * h)));
  return worst;
}

}  // namespace

TEST_CASE("stencil weights sum to zero exactly") {
  for (int k = 0; k < 5; ++k) {
    double s = 0.0;
    for (int m = 0; m < 5; ++m) s += stencil::kWeights[k][m];
    CHECK(s == 0.0);
  }
}

TEST_CASE("exact on quartic polynomials at every node") {
  const int n = 11;
  const double h = 0.37;
  auto f = +[](double x, double y) {
    return x * x * x * x - 3.0 * x * x * x + 2.0 * x + y * y * y * y - y;
  };
  auto fx = +[](double x, double) {
    return 4.0 * x * x * x - 9.0 * x * x + 2.0;
  };
  auto fy = +[](double, double y) { return 4.0 * y * y * y - 1.0; };
  auto v = sample(n, h, f);
  CHECK(max_err(deriv_x(v, n, h), n, h, fx) < 1e-10);
  CHECK(max_err(deriv_y(v, n, h), n, h, fy) < 1e-10);
}

TEST_CASE("fourth-order convergence on a smooth function") {
  auto f = +[](double x, double y) { return std::sin(x + 0.5 * y); };
  auto fx = +[](double x, double y) { return std::cos(x + 0.5 * y); };
  double e1, e2;
  {
    int n = 21;
    double h = 1.0 / (n - 1);
    e1 = max_err(deriv_x(sample(n, h, f), n, h), n, h, fx);
  }
  {
    int n = 41;
    double h = 1.0 / (n - 1);
    e2 = max_err(deriv_x(sample(n, h, f), n, h), n, h, fx);
  }
  double order = std::log2(e1 / e2);
  CHECK(order > 3.5);
  CHECK(order < 4.7);
}

TEST_CASE("complex data uses the same weights") {
  const int n = 9;
  const double h = 0.2;
  std::vector<std::complex<double>> v(size_t(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      v[size_t(j) * n + i] = {i * h * i * h, 3.0 * j * h};
  auto d = deriv_x(v, n, h);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      CHECK(d[size_t(j) * n + i].real() == doctest::Approx(2.0 * i * h).epsilon(1e-12));
      CHECK(std::abs(d[size_t(j) * n + i].imag()) < 1e-12);
    }
}
