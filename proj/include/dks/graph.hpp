#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace dks {

using VertexId = std::uint32_t;

// Undirected edge stored with u < v. The incidence column of the edge is
// e_u - e_v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct WeightedEdge {
  VertexId u = 0;
  VertexId v = 0;
  double w = 1.0;
};

struct Neighbor {
  VertexId v = 0;
  double w = 0.0;
};

// Immutable weighted undirected simple graph. Edges are sorted
// lexicographically, weights are strictly positive, adjacency is stored in
// CSR form. Safe to share across threads once built.
class Graph {
 public:
  Graph() = default;

  // Builds a graph on n vertices. Each pair may be given in either
  // orientation; self-loops, duplicate pairs, out-of-range ids and
  // non-positive or non-finite weights are rejected with DomainError.
  static Graph from_edges(std::size_t n, std::vector<WeightedEdge> edges);

  // Unit-weight convenience overload.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);

  std::size_t num_vertices() const { return degree_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const double> weights() const { return weights_; }
  // Weighted degree d = W 1.
  std::span<const double> degrees() const { return degree_; }
  std::span<const Neighbor> neighbors(VertexId i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }
  std::size_t unweighted_degree(VertexId i) const {
    return offsets_[i + 1] - offsets_[i];
  }
  std::size_t max_unweighted_degree() const;

  // Input ids of each vertex before relabeling (identity unless loaded).
  std::span<const std::int64_t> original_ids() const { return original_ids_; }
  Graph with_original_ids(std::vector<std::int64_t> ids) const;

  double total_weight() const;  // sum of w_e
  double max_weight() const;
  bool unit_weights() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.edges_ == b.edges_ && a.weights_ == b.weights_ &&
           a.original_ids_ == b.original_ids_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<double> weights_;
  std::vector<double> degree_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adj_;
  std::vector<std::int64_t> original_ids_;
};

// A set of k distinct vertices together with its induced weight
// 1_S^T W 1_S and edge density 1_S^T W 1_S / (k(k-1)).
class VertexSet {
 public:
  VertexSet() = default;
  // Members are sorted; duplicates and out-of-range ids throw DomainError.
  VertexSet(const Graph& g, std::vector<VertexId> members);

  std::size_t k() const { return members_.size(); }
  std::span<const VertexId> members() const { return members_; }
  double subgraph_weight() const { return weight_; }
  // 0 when k < 2.
  double density() const { return density_; }
  bool contains(VertexId v) const;

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<VertexId> members_;
  double weight_ = 0.0;
  double density_ = 0.0;
};

// --- linear operators (matrix-free) ---------------------------------------
//
// All operators are sequential, so results are bit-stable for a given input.

// out[e] = x_u - x_v for e = (u, v). Length m.
void incidence_apply_t(const Graph& g, std::span<const double> x, std::span<double> out);
std::vector<double> incidence_apply_t(const Graph& g, std::span<const double> x);

// Exact adjoint of incidence_apply_t: out = B f. Length n.
void incidence_apply(const Graph& g, std::span<const double> f, std::span<double> out);
std::vector<double> incidence_apply(const Graph& g, std::span<const double> f);

// out = W x.
void adjacency_apply(const Graph& g, std::span<const double> x, std::span<double> out);
std::vector<double> adjacency_apply(const Graph& g, std::span<const double> x);

// Upper estimate of lambda_max(B B^T) (the unweighted Laplacian) from power
// iteration, inflated by (1 + tol) and capped at 2 * max unweighted degree.
// Falls back to the cap when the iteration does not settle.
double incidence_spectral_norm_sq(const Graph& g, double tol = 1e-3,
                                  std::uint64_t seed = 0x5eed);

// 1_S^T W 1_S.
double subgraph_weight(const Graph& g, std::span<const VertexId> s);
// subgraph_weight / (k (k - 1)); k >= 2.
double edge_density(const Graph& g, std::span<const VertexId> s);

// --- ingestion --------------------------------------------------------------

struct LoadOptions {
  bool weighted = false;
};

// Parses `u v [w]` lines ('#' and '%' start comments), symmetrizes, drops
// self-loops, merges duplicate pairs (unit weight when unweighted, summed
// weight when weighted), keeps the largest connected component and relabels
// vertices densely in ascending order of their input ids.
Graph load_edge_list(std::istream& in, const LoadOptions& options = {});
Graph load_edge_list(std::string_view text, const LoadOptions& options = {});
// "-" reads standard input. gzip input is decompressed transparently.
Graph load_edge_list_file(const std::filesystem::path& path,
                          const LoadOptions& options = {});

// Writes `u v` or `u v w` lines using original ids. Weights are written in
// shortest round-trip form, so reloading reproduces the graph exactly.
void write_edge_list(std::ostream& out, const Graph& g, bool weighted);

// Binary cache: "DKSG" magic, u32 version, u64 n, u64 m, m (u32, u32) edge
// pairs, m f64 weights, n i64 original ids. Host byte order.
void save_binary(const Graph& g, const std::filesystem::path& path);
Graph load_binary(const std::filesystem::path& path);

}  // namespace dks
