#pragma once

// Shared power-iteration kernel for the symmetric operators used by the
// spectral estimates (Laplacian, W^2, deflated W^2). Not installed.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dks::detail {

struct PowerResult {
  double value = 0.0;          // Rayleigh quotient at the final unit vector
  std::vector<double> vector;  // unit norm
  int iterations = 0;
  bool converged = false;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Deterministic start vector; entries uniform in [lo, hi). Built from raw
// generator output so it is identical across standard libraries.
inline std::vector<double> seeded_vector(std::size_t n, std::uint64_t seed, double lo,
                                         double hi) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = lo + (hi - lo) * u;
  }
  return v;
}

// Removes the components along each (unit) vector in `basis`.
inline void orthogonalize(std::vector<double>& v,
                          std::span<const std::vector<double>> basis) {
  for (const auto& b : basis) {
    const double c = dot(v, b);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
  }
}

// Power iteration for the dominant eigenvalue of a symmetric PSD operator
// restricted to the orthogonal complement of `deflate`. Stops when the
// Rayleigh quotient changes by at most rel_tol relative.
template <class Apply>
PowerResult power_iterate(Apply&& apply, std::vector<double> v, double rel_tol,
                          int max_iter,
                          std::span<const std::vector<double>> deflate = {}) {
  PowerResult res;
  const std::size_t n = v.size();
  orthogonalize(v, deflate);
  double nv = norm2(v);
  if (nv == 0.0) {
    res.vector = std::move(v);
    res.converged = true;
    return res;
  }
  for (auto& x : v) x /= nv;

  std::vector<double> mv(n);
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    apply(std::span<const double>(v), std::span<double>(mv));
    orthogonalize(mv, deflate);
    const double theta = dot(v, mv);
    const double nm = norm2(mv);
    res.iterations = it;
    res.value = theta;
    if (nm == 0.0) {
      res.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = mv[i] / nm;
    if (it > 1 && std::abs(theta - prev) <= rel_tol * std::abs(theta)) {
      res.converged = true;
      // One more quotient on the updated vector; it can only be closer.
      apply(std::span<const double>(v), std::span<double>(mv));
      orthogonalize(mv, deflate);
      res.value = std::max(theta, dot(v, mv));
      break;
    }
    prev = theta;
  }
  res.vector = std::move(v);
  return res;
}

}  // namespace dks::detail
