#ifndef ROCFLOW_STENCIL_HPP
#define ROCFLOW_STENCIL_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace rocflow {

// Fourth-order five-point first-derivative stencils on a uniform grid.
// Interior nodes use the centered stencil; the outermost two nodes on each
// side fall back to the shifted stencils, so the derivative is defined at
// every node of the square.
//
// Row-major storage: a[j * n + i] with i the x index and j the y index.

namespace stencil {

// Offsets and weights (to be divided by 12 h) for node positions
// 0, 1, interior, n-2, n-1.
inline constexpr int kOffsets[5][5] = {
    {0, 1, 2, 3, 4},
    {-1, 0, 1, 2, 3},
    {-2, -1, 0, 1, 2},
    {-3, -2, -1, 0, 1},
    {-4, -3, -2, -1, 0},
};
inline constexpr double kWeights[5][5] = {
    {-25.0, 48.0, -36.0, 16.0, -3.0},
    {-3.0, -10.0, 18.0, -6.0, 1.0},
    {1.0, -8.0, 0.0, 8.0, -1.0},
    {-1.0, 6.0, -18.0, 10.0, 3.0},
    {3.0, -16.0, 36.0, -48.0, 25.0},
};

inline int row_kind(int i, int n) {
  if (i == 0) return 0;
  if (i == 1) return 1;
  if (i == n - 2) return 3;
  if (i == n - 1) return 4;
  return 2;
}

}  // namespace stencil

namespace serial {

template <class T>
void deriv_x(const T* a, T* out, int n, double h) {
  const double inv = 1.0 / (12.0 * h);
  for (int j = 0; j < n; ++j) {
    const T* row = a + size_t(j) * n;
    T* orow = out + size_t(j) * n;
    for (int i = 0; i < n; ++i) {
      int k = stencil::row_kind(i, n);
      T acc{};
      for (int m = 0; m < 5; ++m)
        acc += stencil::kWeights[k][m] * row[i + stencil::kOffsets[k][m]];
      orow[i] = acc * inv;
    }
  }
}

template <class T>
void deriv_y(const T* a, T* out, int n, double h) {
  const double inv = 1.0 / (12.0 * h);
  for (int j = 0; j < n; ++j) {
    int k = stencil::row_kind(j, n);
    for (int i = 0; i < n; ++i) {
      T acc{};
      for (int m = 0; m < 5; ++m)
        acc += stencil::kWeights[k][m] *
               a[size_t(j + stencil::kOffsets[k][m]) * n + i];
      out[size_t(j) * n + i] = acc * inv;
    }
  }
}

}  // namespace serial

namespace kernels {

template <class T>
void deriv_x(const T* a, T* out, int n, double h) {
  const double inv = 1.0 / (12.0 * h);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    const T* row = a + size_t(j) * n;
    T* orow = out + size_t(j) * n;
    for (int i = 0; i < n; ++i) {
      int k = stencil::row_kind(i, n);
      T acc{};
      for (int m = 0; m < 5; ++m)
        acc += stencil::kWeights[k][m] * row[i + stencil::kOffsets[k][m]];
      orow[i] = acc * inv;
    }
  }
}

template <class T>
void deriv_y(const T* a, T* out, int n, double h) {
  const double inv = 1.0 / (12.0 * h);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    int k = stencil::row_kind(j, n);
    for (int i = 0; i < n; ++i) {
      T acc{};
      for (int m = 0; m < 5; ++m)
        acc += stencil::kWeights[k][m] *
               a[size_t(j + stencil::kOffsets[k][m]) * n + i];
      out[size_t(j) * n + i] = acc * inv;
    }
  }
}

}  // namespace kernels

template <class T>
std::vector<T> deriv_x(const std::vector<T>& a, int n, double h) {
  std::vector<T> out(a.size());
  kernels::deriv_x(a.data(), out.data(), n, h);
  return out;
}

template <class T>
std::vector<T> deriv_y(const std::vector<T>& a, int n, double h) {
  std::vector<T> out(a.size());
  kernels::deriv_y(a.data(), out.data(), n, h);
  return out;
}

}  // namespace rocflow

#endif
