#include "dks/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "dks/errors.hpp"
#include "dks/rounding.hpp"
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

VertexSet greedy_feige(const Graph& g, std::size_t k) {
  check_k(g, k);
  const std::size_t n = g.num_vertices();
  const std::size_t first = (k + 1) / 2;
  std::vector<VertexId> chosen = detail::topk_indices(g.degrees(), first);

  std::vector<char> in_h(n, 0);
  for (VertexId v : chosen) in_h[v] = 1;
  // Attachment weight into H; members of H are pushed below every candidate.
  std::vector<double> attach(n, 0.0);
  for (VertexId h : chosen) {
    for (const auto& nb : g.neighbors(h)) attach[nb.v] += nb.w;
  }
  for (VertexId v : chosen) attach[v] = -INFINITY;
  for (VertexId v : detail::topk_indices(attach, k - first)) chosen.push_back(v);
  return VertexSet(g, std::move(chosen));
}

TpmResult truncated_power_method(const Graph& g, std::size_t k, std::span<const double> x0,
                                 int max_iter) {
  check_k(g, k);
  const std::size_t n = g.num_vertices();
  if (x0.size() != n) throw DomainError("truncated_power_method: length mismatch");
  if (max_iter < 1) throw DomainError("truncated_power_method: max_iter must be >= 1");
  if (std::all_of(x0.begin(), x0.end(), [](double a) { return a == 0.0; })) {
    throw DomainError("truncated_power_method: zero start vector");
  }

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> wx(n);
  TpmResult res;
  std::optional<VertexSet> prev;
  bool have_best = false;
  for (int t = 1; t <= max_iter; ++t) {
    adjacency_apply(g, x, wx);
    VertexSet s(g, detail::topk_indices(wx, k));
    res.iters = t;
    if (!have_best || s.subgraph_weight() > res.set.subgraph_weight()) {
      res.set = s;
      have_best = true;
    }
    if (prev && (s == *prev || s.subgraph_weight() <= prev->subgraph_weight())) break;
    std::fill(x.begin(), x.end(), 0.0);
    for (VertexId v : s.members()) x[v] = 1.0;
    prev = std::move(s);
  }
  return res;
}

SpectralPair top_two_singular(const Graph& g, double tol, std::uint64_t seed) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const std::size_t n = g.num_vertices();
  SpectralEstimate first = adjacency_spectral_norm(g, tol, seed);

  SpectralPair sp;
  sp.sigma1 = first.value;
  sp.u1 = std::move(first.vector);
  if (n < 2) {
    sp.converged = first.converged;
    return sp;
  }
  std::vector<double> tmp(n);
  auto square = [&g, &tmp](std::span<const double> x, std::span<double> out) {
    adjacency_apply(g, x, tmp);
    adjacency_apply(g, tmp, out);
  };
  const std::vector<std::vector<double>> basis{sp.u1};
  auto second = detail::power_iterate(square, detail::seeded_vector(n, seed + 1, -1.0, 1.0),
                                      tol, 100000, basis);
  sp.sigma2 = std::min(sp.sigma1, std::sqrt(std::max(second.value, 0.0)));
  sp.converged = first.converged && second.converged;
  return sp;
}

Rank1Result rank1_dks(const Graph& g, std::size_t k, const SpectralPair& sp) {
  check_k(g, k);
  const std::size_t n = g.num_vertices();
  if (sp.u1.size() != n) throw DomainError("rank1_dks: eigenvector length mismatch");

  std::vector<double> neg(n);
  for (std::size_t i = 0; i < n; ++i) neg[i] = -sp.u1[i];
  auto surrogate = [&](const std::vector<VertexId>& s) {
    double c = 0.0;
    for (VertexId v : s) c += sp.u1[v];
    return sp.sigma1 * c * c;
  };
  auto plus = detail::topk_indices(sp.u1, k);
  auto minus = detail::topk_indices(neg, k);
  Rank1Result res;
  res.surrogate = std::max(surrogate(plus), surrogate(minus));
  VertexSet a(g, std::move(plus));
  VertexSet b(g, std::move(minus));
  res.set = b.subgraph_weight() > a.subgraph_weight() ? std::move(b) : std::move(a);
  return res;
}

double density_upper_bound(const Graph& g, std::size_t k, const SpectralPair& sp, double q) {
  if (k < 2) throw DomainError("density_upper_bound: k must be >= 2");
  const double kk = static_cast<double>(k);
  const double cap = g.num_edges() == 0 ? 0.0 : g.max_weight();
  return std::min({cap, (q / kk + sp.sigma2) / (kk - 1.0), sp.sigma1 / (kk - 1.0)});
}

}  // namespace dks
