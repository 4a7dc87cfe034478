#include "dks/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dks/errors.hpp"
#include "power_iteration.hpp"
#include "topk.hpp"

namespace dks {

namespace {

void check_k(const Graph& g, std::size_t k) {
  if (k < 2 || k + 1 > g.num_vertices()) {
    throw DomainError("k must satisfy 2 <= k <= n - 1 (k = " + std::to_string(k) +
                      ", n = " + std::to_string(g.num_vertices()) + ")");
  }
}

}  // namespace

VertexSet project_topk(const Graph& g, std::span<const double> x, std::size_t k) {
  check_k(g, k);
  if (x.size() != g.num_vertices()) throw DomainError("project_topk: length mismatch");
  return VertexSet(g, detail::topk_indices(x, k));
}

FwResult frank_wolfe_refine(const Graph& g, std::size_t k, std::span<const double> x0,
                            const FwConfig& cfg) {
  check_k(g, k);
  const std::size_t n = g.num_vertices();
  if (x0.size() != n) throw DomainError("frank_wolfe_refine: length mismatch");
  if (cfg.max_iter < 1) throw DomainError("frank_wolfe_refine: max_iter must be >= 1");
  if (cfg.lipschitz && !(*cfg.lipschitz > 0.0)) {
    throw DomainError("frank_wolfe_refine: Lipschitz constant must be > 0");
  }
  double lipschitz = 0.0;
  if (cfg.step == FwStep::kClosedForm) {
    lipschitz = cfg.lipschitz ? *cfg.lipschitz : adjacency_spectral_norm(g, 1e-8).value;
  }

  FwResult res;
  res.x.assign(x0.begin(), x0.end());
  auto& x = res.x;
  std::vector<double> wx(n), dir(n), wd(n), xbar(n);
  adjacency_apply(g, x, wx);
  double f = -detail::dot(x, wx);
  if (!std::isfinite(f)) throw NumericalError("non-finite Frank-Wolfe start", 0);
  res.objective_history.push_back(f);

  for (int t = 0; t < cfg.max_iter; ++t) {
    std::fill(xbar.begin(), xbar.end(), 0.0);
    for (VertexId v : detail::topk_indices(wx, k)) xbar[v] = 1.0;
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = xbar[i] - x[i];
      zero = zero && dir[i] == 0.0;
    }
    if (zero) {
      res.stationary = true;
      break;
    }
    adjacency_apply(g, dir, wd);
    const double slope = detail::dot(wx, dir);  // x^T W dir
    const double curv = detail::dot(dir, wd);   // dir^T W dir
    double alpha = 0.0;
    if (cfg.step == FwStep::kExactLineSearch) {
      // f(x + a dir) = f(x) - 2 a slope - a^2 curv.
      if (curv < 0.0) {
        alpha = std::min(1.0, slope / -curv);
      } else {
        alpha = 2.0 * slope + curv > 0.0 ? 1.0 : 0.0;
      }
    } else {
      alpha = std::min(1.0, slope / (lipschitz * detail::dot(dir, dir)));
    }
    alpha = std::max(alpha, 0.0);
    if (!std::isfinite(alpha)) throw NumericalError("non-finite Frank-Wolfe step", t);
    if (alpha == 0.0) {
      res.stationary = true;
      break;
    }
    if (alpha == 1.0) {
      x = xbar;
    } else {
      for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i] + alpha * dir[i], 0.0, 1.0);
    }
    ++res.iters;
    res.step_history.push_back(alpha);
    adjacency_apply(g, x, wx);
    const double f_new = -detail::dot(x, wx);
    if (!std::isfinite(f_new)) throw NumericalError("non-finite Frank-Wolfe objective", t);
    res.objective_history.push_back(f_new);
    const bool settled =
        std::abs(f_new - f) <= cfg.objective_tol * std::max(std::abs(f), std::abs(f_new));
    f = f_new;
    if (settled) break;
  }

  for (double xi : x) {
    res.integrality_gap = std::max(res.integrality_gap, std::abs(xi - std::round(xi)));
  }
  res.set = project_topk(g, x, k);
  return res;
}

SpectralEstimate adjacency_spectral_norm(const Graph& g, double tol, std::uint64_t seed) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const std::size_t n = g.num_vertices();
  std::vector<double> tmp(n);
  auto square = [&g, &tmp](std::span<const double> x, std::span<double> out) {
    adjacency_apply(g, x, tmp);
    adjacency_apply(g, tmp, out);
  };
  auto pr = detail::power_iterate(square, detail::seeded_vector(n, seed, 0.5, 1.5), tol,
                                  100000);
  SpectralEstimate est;
  est.iterations = pr.iterations;
  est.converged = pr.converged;
  est.value = std::sqrt(std::max(pr.value, 0.0));
  est.vector = std::move(pr.vector);
  if (est.value > 0.0) {
    // Split off the +sigma component; on bipartite graphs the W^2 iterate
    // also carries the -sigma eigenvector.
    adjacency_apply(g, est.vector, tmp);
    std::vector<double> plus(n);
    for (std::size_t i = 0; i < n; ++i) plus[i] = est.vector[i] + tmp[i] / est.value;
    const double np = detail::norm2(plus);
    if (np > 1e-8) {
      for (std::size_t i = 0; i < n; ++i) est.vector[i] = plus[i] / np;
    }
  }
  double sum = 0.0;
  for (double a : est.vector) sum += a;
  if (sum < 0.0) {
    for (double& a : est.vector) a = -a;
  }
  return est;
}

}  // namespace dks
