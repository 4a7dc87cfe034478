#include "dks/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dks/errors.hpp"
#include "power_iteration.hpp"

namespace dks {

namespace {

void check_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DomainError(std::string(what) + ": expected length " + std::to_string(want) +
                      ", got " + std::to_string(got));
  }
}

}  // namespace

Graph Graph::from_edges(std::size_t n, std::vector<WeightedEdge> edges) {
  if (n == 0) throw DomainError("graph must have at least one vertex");
  if (n > std::numeric_limits<VertexId>::max()) throw DomainError("too many vertices");
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw DomainError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                        ") references a vertex >= n = " + std::to_string(n));
    }
    if (e.u == e.v) throw DomainError("self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw DomainError("edge weights must be positive and finite");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw DomainError("duplicate edge (" + std::to_string(edges[i].u) + ", " +
                        std::to_string(edges[i].v) + ")");
    }
  }

  Graph g;
  g.edges_.reserve(edges.size());
  g.weights_.reserve(edges.size());
  g.degree_.assign(n, 0.0);
  std::vector<std::size_t> count(n, 0);
  for (const auto& e : edges) {
    g.edges_.push_back({e.u, e.v});
    g.weights_.push_back(e.w);
    g.degree_[e.u] += e.w;
    g.degree_[e.v] += e.w;
    ++count[e.u];
    ++count[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + count[i];
  g.adj_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Lower neighbors first, then upper ones: with sorted edges every list
  // comes out sorted by neighbor id.
  for (const auto& e : edges) g.adj_[fill[e.v]++] = {e.u, e.w};
  for (const auto& e : edges) g.adj_[fill[e.u]++] = {e.v, e.w};
  g.original_ids_.resize(n);
  std::iota(g.original_ids_.begin(), g.original_ids_.end(), std::int64_t{0});
  return g;
}

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<WeightedEdge> we;
  we.reserve(edges.size());
  for (const auto& e : edges) we.push_back({e.u, e.v, 1.0});
  return from_edges(n, std::move(we));
}

Graph Graph::with_original_ids(std::vector<std::int64_t> ids) const {
  check_size(ids.size(), num_vertices(), "original ids");
  Graph g = *this;
  g.original_ids_ = std::move(ids);
  return g;
}

std::size_t Graph::max_unweighted_degree() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    best = std::max(best, offsets_[i + 1] - offsets_[i]);
  }
  return best;
}

double Graph::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

double Graph::max_weight() const {
  return weights_.empty() ? 0.0 : *std::max_element(weights_.begin(), weights_.end());
}

bool Graph::unit_weights() const {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
}

VertexSet::VertexSet(const Graph& g, std::vector<VertexId> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw DomainError("vertex set contains duplicate ids");
  }
  weight_ = dks::subgraph_weight(g, members_);
  const double k = static_cast<double>(members_.size());
  density_ = members_.size() >= 2 ? weight_ / (k * (k - 1.0)) : 0.0;
}

bool VertexSet::contains(VertexId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void incidence_apply_t(const Graph& g, std::span<const double> x, std::span<double> out) {
  check_size(x.size(), g.num_vertices(), "incidence_apply_t input");
  check_size(out.size(), g.num_edges(), "incidence_apply_t output");
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) out[e] = x[edges[e].u] - x[edges[e].v];
}

std::vector<double> incidence_apply_t(const Graph& g, std::span<const double> x) {
  std::vector<double> out(g.num_edges());
  incidence_apply_t(g, x, out);
  return out;
}

void incidence_apply(const Graph& g, std::span<const double> f, std::span<double> out) {
  check_size(f.size(), g.num_edges(), "incidence_apply input");
  check_size(out.size(), g.num_vertices(), "incidence_apply output");
  std::fill(out.begin(), out.end(), 0.0);
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[edges[e].u] += f[e];
    out[edges[e].v] -= f[e];
  }
}

std::vector<double> incidence_apply(const Graph& g, std::span<const double> f) {
  std::vector<double> out(g.num_vertices());
  incidence_apply(g, f, out);
  return out;
}

void adjacency_apply(const Graph& g, std::span<const double> x, std::span<double> out) {
  check_size(x.size(), g.num_vertices(), "adjacency_apply input");
  check_size(out.size(), g.num_vertices(), "adjacency_apply output");
  for (VertexId i = 0; i < g.num_vertices(); ++i) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(i)) s += nb.w * x[nb.v];
    out[i] = s;
  }
}

std::vector<double> adjacency_apply(const Graph& g, std::span<const double> x) {
  std::vector<double> out(g.num_vertices());
  adjacency_apply(g, x, out);
  return out;
}

double incidence_spectral_norm_sq(const Graph& g, double tol, std::uint64_t seed) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const std::size_t n = g.num_vertices();
  const double cap = 2.0 * static_cast<double>(g.max_unweighted_degree());
  if (g.num_edges() == 0) return cap;

  auto laplacian = [&g](std::span<const double> x, std::span<double> out) {
    for (VertexId i = 0; i < g.num_vertices(); ++i) {
      double s = static_cast<double>(g.unweighted_degree(i)) * x[i];
      for (const auto& nb : g.neighbors(i)) s -= x[nb.v];
      out[i] = s;
    }
  };
  // The quotient approaches lambda_max from below; settle it well inside tol
  // so that the (1 + tol) inflation covers the remaining gap.
  auto res = detail::power_iterate(laplacian, detail::seeded_vector(n, seed, -1.0, 1.0),
                                   1e-3 * tol, 20000);
  if (!res.converged) return cap;
  return std::min(cap, res.value * (1.0 + tol));
}

double subgraph_weight(const Graph& g, std::span<const VertexId> s) {
  const std::size_t n = g.num_vertices();
  std::vector<char> in(n, 0);
  for (VertexId v : s) {
    if (v >= n) throw DomainError("vertex id " + std::to_string(v) + " out of range");
    in[v] = 1;
  }
  double total = 0.0;
  const auto edges = g.edges();
  const auto w = g.weights();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (in[edges[e].u] && in[edges[e].v]) total += w[e];
  }
  return 2.0 * total;
}

double edge_density(const Graph& g, std::span<const VertexId> s) {
  if (s.size() < 2) throw DomainError("edge density needs at least two vertices");
  const double k = static_cast<double>(s.size());
  return subgraph_weight(g, s) / (k * (k - 1.0));
}

}  // namespace dks
