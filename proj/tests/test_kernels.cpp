#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "rocflow/stencil.hpp"

using namespace rocflow;

TEST_CASE("parallel kernels match the serial reference bitwise") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {9, 33, 65, 127}) {
    std::vector<double> a(size_t(n) * n);
    for (auto& v : a) v = u(rng);
    std::vector<double> s(a.size()), p(a.size());
    double h = 0.01;

    serial::deriv_x(a.data(), s.data(), n, h);
    kernels::deriv_x(a.data(), p.data(), n, h);
    CHECK(s == p);

    serial::deriv_y(a.data(), s.data(), n, h);
    kernels::deriv_y(a.data(), p.data(), n, h);
    CHECK(s == p);
  }
}

TEST_CASE("parallel kernels match for complex fields") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 65;
  std::vector<std::complex<double>> a(size_t(n) * n);
  for (auto& v : a) v = {u(rng), u(rng)};
  std::vector<std::complex<double>> s(a.size()), p(a.size());
  serial::deriv_x(a.data(), s.data(), n, 0.05);
  kernels::deriv_x(a.data(), p.data(), n, 0.05);
  CHECK(s == p);
  serial::deriv_y(a.data(), s.data(), n, 0.05);
  kernels::deriv_y(a.data(), p.data(), n, 0.05);
  CHECK(s == p);
}
