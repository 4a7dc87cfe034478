#pragma once

#include <span>
#include <vector>

namespace dks {

// Parameters of the prox of g(x) = -d^T x restricted to
// P = {x in [0,1]^n : 1^T x = k}, with quadratic term (tau/2)||x - v||^2.
struct ProxGParams {
  std::span<const double> d;
  double k = 0.0;
  double tau = 1.0;
  double eps = 1e-6;
};

struct ProxGResult {
  double nu = 0.0;       // multiplier of the sum-to-k constraint
  double phi = 0.0;      // sum(x) - k at nu
  int steps = 0;         // bisection steps taken
};

// phi(nu) = sum_i clamp(v_i + (d_i - nu) / tau, 0, 1) - k. Non-increasing.
double prox_phi(double nu, std::span<const double> v, const ProxGParams& p);

// Initial bisection bracket. phi(lo) = n - k and phi(hi) = -k.
struct NuBracket {
  double lo;
  double hi;
};
NuBracket prox_bracket(std::span<const double> v, const ProxGParams& p);

// x = argmin -d^T x + (tau/2)||x - v||^2 over P, via bisection on nu.
// On return x_i = clamp(v_i + (d_i - nu)/tau, 0, 1) exactly and
// |sum(x) - k| <= eps. Throws DomainError on non-finite input or bad params.
ProxGResult prox_g_bisection(std::span<const double> v, const ProxGParams& p,
                             std::span<double> x);
std::vector<double> prox_g_bisection(std::span<const double> v, const ProxGParams& p,
                                     ProxGResult* info = nullptr);

// Soft thresholding with per-entry threshold w_e / rho: the prox of
// ||diag(w) z||_1 with quadratic term (rho/2)||z - v||^2.
void shrinkage(std::span<const double> v, std::span<const double> w, double rho,
               std::span<double> out);
std::vector<double> shrinkage(std::span<const double> v, std::span<const double> w,
                              double rho);

}  // namespace dks
