#include "dks/prox.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dks/errors.hpp"

namespace dks {

namespace {

constexpr int kMaxBisectionSteps = 2000;

void validate(std::span<const double> v, const ProxGParams& p) {
  const std::size_t n = v.size();
  if (p.d.size() != n) throw DomainError("prox: degree and input lengths differ");
  if (!(p.tau > 0.0) || !std::isfinite(p.tau)) throw DomainError("prox: tau must be > 0");
  if (!(p.eps > 0.0)) throw DomainError("prox: eps must be > 0");
  if (!(p.k >= 2.0) || !(p.k <= static_cast<double>(n) - 1.0)) {
    throw DomainError("prox: k must satisfy 2 <= k <= n - 1 (k = " + std::to_string(p.k) +
                      ", n = " + std::to_string(n) + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i]) || !std::isfinite(p.d[i])) {
      throw DomainError("prox: non-finite input at index " + std::to_string(i));
    }
  }
}

inline double coordinate(double v, double d, double nu, double tau) {
  return std::clamp(v + (d - nu) / tau, 0.0, 1.0);
}

}  // namespace

double prox_phi(double nu, std::span<const double> v, const ProxGParams& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += coordinate(v[i], p.d[i], nu, p.tau);
  return s - p.k;
}

NuBracket prox_bracket(std::span<const double> v, const ProxGParams& p) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = p.d[i] + p.tau * v[i];
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  // Shifting by max(1, tau) puts every coordinate at its upper bound; for
  // tau <= 1 this is the usual shift of one.
  return {lo - std::max(1.0, p.tau), hi};
}

ProxGResult prox_g_bisection(std::span<const double> v, const ProxGParams& p,
                             std::span<double> x) {
  validate(v, p);
  if (x.size() != v.size()) throw DomainError("prox: output length mismatch");

  auto [lo, hi] = prox_bracket(v, p);
  double phi_lo = prox_phi(lo, v, p);
  double phi_hi = prox_phi(hi, v, p);
  ProxGResult res;
  while (phi_lo - phi_hi > p.eps && hi - lo > 1e-14 * (std::abs(lo) + std::abs(hi)) &&
         res.steps < kMaxBisectionSteps) {
    const double mid = 0.5 * (lo + hi);
    const double pm = prox_phi(mid, v, p);
    ++res.steps;
    if (pm == 0.0) {
      lo = hi = mid;
      phi_lo = phi_hi = 0.0;
      break;
    }
    if (pm > 0.0) {
      lo = mid;
      phi_lo = pm;
    } else {
      hi = mid;
      phi_hi = pm;
    }
  }
  res.nu = std::abs(phi_lo) <= std::abs(phi_hi) ? lo : hi;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    x[i] = coordinate(v[i], p.d[i], res.nu, p.tau);
    s += x[i];
  }
  res.phi = s - p.k;
  return res;
}

std::vector<double> prox_g_bisection(std::span<const double> v, const ProxGParams& p,
                                     ProxGResult* info) {
  std::vector<double> x(v.size());
  const auto r = prox_g_bisection(v, p, x);
  if (info) *info = r;
  return x;
}

void shrinkage(std::span<const double> v, std::span<const double> w, double rho,
               std::span<double> out) {
  if (!(rho > 0.0)) throw DomainError("shrinkage: rho must be > 0");
  if (w.size() != v.size() || out.size() != v.size()) {
    throw DomainError("shrinkage: length mismatch");
  }
  for (std::size_t e = 0; e < v.size(); ++e) {
    const double t = w[e] / rho;
    out[e] = std::max(0.0, v[e] - t) - std::max(0.0, -v[e] - t);
  }
}

std::vector<double> shrinkage(std::span<const double> v, std::span<const double> w,
                              double rho) {
  std::vector<double> out(v.size());
  shrinkage(v, w, rho, out);
  return out;
}

}  // namespace dks
