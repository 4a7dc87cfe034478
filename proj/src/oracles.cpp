#include "dks/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "dks/errors.hpp"

namespace dks::oracles {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(std::llround(c));
}

}  // namespace

BruteForceResult brute_force_dks(const Graph& g, std::size_t k, std::uint64_t max_subsets) {
  const std::size_t n = g.num_vertices();
  if (k < 1 || k > n) throw DomainError("brute_force_dks: k out of range");
  const std::uint64_t count = binomial_capped(n, k, max_subsets);
  if (count > max_subsets) {
    throw DomainError("brute_force_dks: C(" + std::to_string(n) + ", " + std::to_string(k) +
                      ") exceeds the limit of " + std::to_string(max_subsets) + " subsets");
  }
  std::vector<double> dense(n * n, 0.0);
  const auto edges = g.edges();
  const auto w = g.weights();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    dense[edges[e].u * n + edges[e].v] = w[e];
    dense[edges[e].v * n + edges[e].u] = w[e];
  }

  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), std::size_t{0});
  std::vector<std::size_t> best = c;
  double best_weight = -1.0;
  while (true) {
    double s = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) s += dense[c[a] * n + c[b]];
    }
    s *= 2.0;
    if (s > best_weight + 1e-12 * std::max(1.0, std::abs(best_weight))) {
      best_weight = s;
      best = c;
    }
    // Next combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  std::vector<VertexId> members(best.begin(), best.end());
  BruteForceResult res{VertexSet(g, std::move(members)), 0.0};
  res.weight = res.set.subgraph_weight();
  return res;
}

double dks_set_function(const Graph& g, std::uint64_t mask) {
  if (g.num_vertices() > 63) throw DomainError("set-function oracle supports n <= 63");
  double s = 0.0;
  const auto edges = g.edges();
  const auto w = g.weights();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if ((mask >> edges[e].u & 1U) && (mask >> edges[e].v & 1U)) s += w[e];
  }
  return -2.0 * s;
}

double edmonds_lovasz(const Graph& g, std::span<const double> x) {
  const std::size_t n = g.num_vertices();
  if (x.size() != n) throw DomainError("edmonds_lovasz: length mismatch");
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&x](VertexId a, VertexId b) { return x[a] > x[b]; });

  // F(S) = -1_S^T W 1_S recomputed from the edge list for each prefix.
  std::vector<VertexId> prefix;
  prefix.reserve(n);
  double prev = 0.0;
  double value = 0.0;
  for (VertexId v : order) {
    prefix.push_back(v);
    const double f = -subgraph_weight(g, prefix);
    value += x[v] * (f - prev);
    prev = f;
  }
  return value;
}

bool check_submodular_exhaustive(std::size_t n, const SetFunction& f, double tol) {
  if (n > 12) throw DomainError("exhaustive submodularity check supports n <= 12");
  const std::uint64_t full = std::uint64_t{1} << n;
  std::vector<double> value(full);
  for (std::uint64_t s = 0; s < full; ++s) value[s] = f(s);
  for (std::uint64_t a = 0; a < full; ++a) {
    for (std::uint64_t b = a + 1; b < full; ++b) {
      const double lhs = value[a | b] + value[a & b];
      const double rhs = value[a] + value[b];
      if (lhs > rhs + tol * std::max(1.0, std::abs(rhs))) return false;
    }
  }
  return true;
}

bool check_submodular_sampled(std::size_t n, const SetFunction& f, std::size_t samples,
                              std::uint64_t seed, double tol) {
  if (n > 63) throw DomainError("sampled submodularity check supports n <= 63");
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t a = rng() & mask;
    const std::uint64_t b = rng() & mask;
    const double lhs = f(a | b) + f(a & b);
    const double rhs = f(a) + f(b);
    if (lhs > rhs + tol * std::max(1.0, std::abs(rhs))) return false;
  }
  return true;
}

bool check_submodular(const Graph& g) {
  auto f = [&g](std::uint64_t s) { return dks_set_function(g, s); };
  if (g.num_vertices() <= 12) return check_submodular_exhaustive(g.num_vertices(), f);
  return check_submodular_sampled(g.num_vertices(), f, 100'000, 0x5eed);
}

PlantedInstance generate_planted(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  if (n < 1) throw DomainError("generate_planted: n must be >= 1");
  if (k > n) throw DomainError("generate_planted: k must be <= n");
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("generate_planted: p must be in [0, 1)");

  std::mt19937_64 rng(seed);
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(perm[i], perm[j]);
  }
  std::vector<VertexId> planted(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<char> in_clique(n, 0);
  for (VertexId v : planted) in_clique[v] = 1;

  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      const bool background = uniform01(rng) < p;
      if (background || (in_clique[i] && in_clique[j])) edges.push_back({i, j});
    }
  }
  PlantedInstance inst;
  inst.graph = Graph::from_edges(n, edges);
  inst.planted = VertexSet(inst.graph, std::move(planted));
  inst.background_p = p;
  inst.seed = seed;
  return inst;
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed, double max_weight) {
  std::mt19937_64 rng(seed);
  std::vector<WeightedEdge> edges;
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) {
      if (uniform01(rng) < p) {
        const double w = max_weight > 0.0 ? max_weight * (1.0 - uniform01(rng)) : 1.0;
        edges.push_back({i, j, w});
      }
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i < n; ++i) edges.push_back({i, static_cast<VertexId>((i + 1) % n)});
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId i = 1; i < n; ++i) edges.push_back({0, i});
  return Graph::from_edges(n, edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  const auto shift = static_cast<VertexId>(a.num_vertices());
  std::vector<WeightedEdge> edges;
  for (std::size_t e = 0; e < a.num_edges(); ++e) {
    edges.push_back({a.edges()[e].u, a.edges()[e].v, a.weights()[e]});
  }
  for (std::size_t e = 0; e < b.num_edges(); ++e) {
    edges.push_back({b.edges()[e].u + shift, b.edges()[e].v + shift, b.weights()[e]});
  }
  return Graph::from_edges(a.num_vertices() + b.num_vertices(), std::move(edges));
}

DenseCheck dense_cross_check(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  const auto m = static_cast<Eigen::Index>(g.num_edges());
  if (n > 500) throw DomainError("dense_cross_check supports n <= 500");
  DenseCheck dc;
  dc.adjacency = Eigen::MatrixXd::Zero(n, n);
  dc.incidence = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index e = 0; e < m; ++e) {
    const auto& edge = g.edges()[static_cast<std::size_t>(e)];
    const double w = g.weights()[static_cast<std::size_t>(e)];
    dc.adjacency(edge.u, edge.v) = w;
    dc.adjacency(edge.v, edge.u) = w;
    dc.incidence(edge.u, e) = 1.0;
    dc.incidence(edge.v, e) = -1.0;
  }
  dc.laplacian = dc.incidence * dc.incidence.transpose();
  dc.adjacency_eigenvalues =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dc.adjacency, Eigen::EigenvaluesOnly)
          .eigenvalues();
  dc.laplacian_eigenvalues =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dc.laplacian, Eigen::EigenvaluesOnly)
          .eigenvalues();
  return dc;
}

}  // namespace dks::oracles
