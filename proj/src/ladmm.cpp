#include "dks/ladmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dks/errors.hpp"
#include "dks/prox.hpp"
#include "power_iteration.hpp"
#include "topk.hpp"

namespace dks {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

double topk_sum(std::vector<double> v, std::size_t k) {
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k - 1), v.end(),
                   std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += v[i];
  return s;
}

}  // namespace

double lovasz_objective(const Graph& g, std::span<const double> x) {
  if (x.size() != g.num_vertices()) {
    throw DomainError("lovasz_objective: expected length " +
                      std::to_string(g.num_vertices()) + ", got " + std::to_string(x.size()));
  }
  const auto d = g.degrees();
  const auto edges = g.edges();
  const auto w = g.weights();
  double tv = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    tv += w[e] * std::abs(x[edges[e].u] - x[edges[e].v]);
  }
  return -detail::dot(d, x) + tv;
}

void validate_config(const SolverConfig& cfg, double lambda_hat) {
  if (!(cfg.rho > 0.0)) throw DomainError("rho must be > 0");
  if (!(cfg.alpha >= 1.0 && cfg.alpha < 2.0)) throw DomainError("alpha must be in [1, 2)");
  if (!(cfg.eps_abs > 0.0) || !(cfg.eps_rel > 0.0)) {
    throw DomainError("stopping tolerances must be > 0");
  }
  if (!(cfg.bisection_eps > 0.0)) throw DomainError("bisection eps must be > 0");
  if (cfg.max_iter < 1) throw DomainError("max_iter must be >= 1");
  if (cfg.objective_every < 1) throw DomainError("objective thinning must be >= 1");
  if (cfg.mu) {
    const double mu_max = 1.0 / (cfg.rho * lambda_hat);
    if (!(*cfg.mu > 0.0) || *cfg.mu > mu_max) {
      throw DomainError("mu must satisfy 0 < mu <= 1/(rho ||B||^2) = " +
                        std::to_string(mu_max));
    }
  }
}

std::vector<double> degree_topk_indicator(const Graph& g, std::size_t k) {
  std::vector<double> x(g.num_vertices(), 0.0);
  for (VertexId v : detail::topk_indices(g.degrees(), k)) x[v] = 1.0;
  return x;
}

SolverReport solve_lrelax(const Graph& g, std::size_t k, const SolverConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  if (k < 2 || k + 1 > n) {
    throw DomainError("k must satisfy 2 <= k <= n - 1 (k = " + std::to_string(k) +
                      ", n = " + std::to_string(n) + ")");
  }
  if (m == 0) throw DomainError("graph has no edges");

  SolverReport rep;
  rep.lambda_hat = incidence_spectral_norm_sq(g, cfg.spectral_tol);
  validate_config(cfg, rep.lambda_hat);
  rep.mu = cfg.mu.value_or(1.0 / (cfg.rho * rep.lambda_hat));

  const double rho = cfg.rho;
  const double alpha = cfg.alpha;
  const double mu = rep.mu;
  const auto w = g.weights();
  const ProxGParams prox{g.degrees(), static_cast<double>(k),
                         cfg.prox_scale == ProxScale::kDerived ? 1.0 / mu : rho,
                         cfg.bisection_eps};

  std::vector<double> x = degree_topk_indicator(g, k);
  std::vector<double> z = incidence_apply_t(g, x);
  std::vector<double> u(m, 0.0);
  std::vector<double> x_sum(n, 0.0);

  std::vector<double> bt_x(m), r(m), grad(n), v(n), x_next(n), over(m), z_next(m),
      dz(m), s(n), bu(n);
  const double sqrt_m = std::sqrt(static_cast<double>(m));
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const auto cap = static_cast<std::size_t>(cfg.max_iter);
  rep.primal_residual_history.reserve(cap);
  rep.dual_residual_history.reserve(cap);
  rep.lovasz_objective_history.reserve(cap);

  for (int t = 1; t <= cfg.max_iter; ++t) {
    // x-update: prox of g at a gradient step on the linearized coupling term.
    incidence_apply_t(g, x, bt_x);
    for (std::size_t e = 0; e < m; ++e) r[e] = bt_x[e] - z[e] + u[e];
    incidence_apply(g, r, grad);
    for (std::size_t i = 0; i < n; ++i) v[i] = x[i] - mu * rho * grad[i];
    if (!all_finite(v)) throw NumericalError("non-finite L-ADMM iterate", t, x);
    prox_g_bisection(v, prox, x_next);

    // Over-relaxed z- and u-updates.
    incidence_apply_t(g, x_next, bt_x);
    for (std::size_t e = 0; e < m; ++e) {
      over[e] = alpha * bt_x[e] + (1.0 - alpha) * z[e];
      r[e] = over[e] + u[e];
    }
    shrinkage(r, w, rho, z_next);
    for (std::size_t e = 0; e < m; ++e) {
      u[e] += over[e] - z_next[e];
      dz[e] = z_next[e] - z[e];
    }
    if (!all_finite(u) || !all_finite(z_next)) {
      throw NumericalError("non-finite L-ADMM iterate", t, x_next);
    }

    x.swap(x_next);
    z.swap(z_next);
    for (std::size_t i = 0; i < n; ++i) x_sum[i] += x[i];
    rep.iters = t;

    // Residuals and tolerances at iteration t.
    double r_sq = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      const double d = bt_x[e] - z[e];
      r_sq += d * d;
    }
    incidence_apply(g, dz, s);
    incidence_apply(g, u, bu);
    const double r_norm = std::sqrt(r_sq);
    const double s_norm = (cfg.scaled_dual_residual ? rho : 1.0) * detail::norm2(s);
    rep.eps_pri = sqrt_m * cfg.eps_abs +
                  cfg.eps_rel * std::max(detail::norm2(bt_x), detail::norm2(z));
    rep.eps_dual = sqrt_n * cfg.eps_abs + cfg.eps_rel * detail::norm2(bu);
    rep.primal_residual_history.push_back(r_norm);
    rep.dual_residual_history.push_back(s_norm);
    rep.lovasz_objective_history.push_back(
        (t - 1) % cfg.objective_every == 0 ? lovasz_objective(g, x)
                                           : std::numeric_limits<double>::quiet_NaN());
    if (r_norm <= rep.eps_pri && s_norm <= rep.eps_dual) {
      rep.converged = true;
      break;
    }
  }

  rep.x_last = x;
  rep.x_avg.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.x_avg[i] = x_sum[i] / rep.iters;

  std::vector<double> y(m);
  for (std::size_t e = 0; e < m; ++e) y[e] = std::clamp(rho * u[e], -w[e], w[e]);
  incidence_apply(g, y, bu);
  const auto d = g.degrees();
  for (std::size_t i = 0; i < n; ++i) bu[i] = d[i] - bu[i];
  rep.dual_bound = topk_sum(bu, k);

  rep.wall_time = std::chrono::steady_clock::now() - start;
  return rep;
}

}  // namespace dks
