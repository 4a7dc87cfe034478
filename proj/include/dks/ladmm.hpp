#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <vector>

#include "dks/graph.hpp"

namespace dks {

// Quadratic coefficient handed to the bisection prox in the x-update.
//   kDerived: tau = 1/mu, the coefficient of prox_{g/mu}.
//   kLiteral: tau = rho, as the bisection call is written in the algorithm
//             listing.
enum class ProxScale { kDerived, kLiteral };

struct SolverConfig {
  double rho = 0.1;
  double alpha = 1.8;
  // Defaults to 1 / (rho * lambda_hat) with lambda_hat >= ||B||_2^2.
  std::optional<double> mu;
  double eps_abs = 1e-3;
  double eps_rel = 1e-3;
  double bisection_eps = 1e-6;
  int max_iter = 3000;
  ProxScale prox_scale = ProxScale::kDerived;
  // Multiply the dual residual B(z^t - z^{t-1}) by rho.
  bool scaled_dual_residual = false;
  // Evaluate the Lovasz objective every `thin` iterations (NaN elsewhere).
  int objective_every = 1;
  // Tolerance of the ||B||^2 power iteration.
  double spectral_tol = 1e-3;
};

struct SolverReport {
  std::vector<double> x_avg;   // (1/t) sum_{i=1..t} x^i
  std::vector<double> x_last;
  int iters = 0;
  bool converged = false;
  std::vector<double> primal_residual_history;   // ||B^T x^t - z^t||
  std::vector<double> dual_residual_history;     // ||B (z^t - z^{t-1})|| (times rho if scaled)
  std::vector<double> lovasz_objective_history;  // f_L(x^t), NaN when thinned out
  double eps_pri = 0.0;   // thresholds at the final iteration
  double eps_dual = 0.0;
  double mu = 0.0;
  double lambda_hat = 0.0;
  // Weak-duality certificate (maximization form): for y = clip(rho u, -w, w),
  // max_{x in P} d^T x - sum w|x_i - x_j| <= sum of the k largest (d - B y)_i.
  double dual_bound = 0.0;
  std::chrono::duration<double> wall_time{0.0};
};

// f_L(x) = -d^T x + sum_{(i,j)} w_ij |x_i - x_j|.
double lovasz_objective(const Graph& g, std::span<const double> x);

// Maximization-form relaxation value d^T x - sum w_ij |x_i - x_j| = -f_L(x).
inline double relaxation_value(const Graph& g, std::span<const double> x) {
  return -lovasz_objective(g, x);
}

// Checks SolverConfig invariants against a graph (mu against lambda_hat).
void validate_config(const SolverConfig& cfg, double lambda_hat);

// Indicator of the k vertices of largest weighted degree (ties: smaller id).
std::vector<double> degree_topk_indicator(const Graph& g, std::size_t k);

// Linearized ADMM for min_{x in P} f_L(x), with over-relaxation and
// iterate averaging. Throws DomainError for k outside [2, n-1] or m = 0 and
// NumericalError (carrying the last finite x) on a non-finite iterate.
SolverReport solve_lrelax(const Graph& g, std::size_t k, const SolverConfig& cfg = {});

}  // namespace dks
