#pragma once

// Independent ground truth for tests and acceptance runs: exhaustive DkS,
// the sorted-prefix (Edmonds greedy) evaluation of the Lovasz extension,
// a submodularity checker, dense linear algebra, and fixture generators.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>

#include "dks/graph.hpp"

namespace dks::oracles {

struct BruteForceResult {
  VertexSet set;
  double weight = 0.0;
};

// Exhaustive maximum of 1_S^T W 1_S over k-subsets in lexicographic order;
// the lexicographically smallest maximizer wins ties. Refuses (DomainError)
// when C(n, k) > max_subsets.
BruteForceResult brute_force_dks(const Graph& g, std::size_t k,
                                 std::uint64_t max_subsets = 10'000'000);

// F(S) = -1_S^T W 1_S for S given as a bit mask (n <= 63).
double dks_set_function(const Graph& g, std::uint64_t mask);

// sum_i x_(i) (F(S_i) - F(S_{i-1})) over the descending-order prefixes
// S_0 = {} ... S_n = V (stable by index). F is evaluated from scratch.
double edmonds_lovasz(const Graph& g, std::span<const double> x);

using SetFunction = std::function<double(std::uint64_t mask)>;

// F(A | B) + F(A & B) <= F(A) + F(B) + tol over every pair of subsets of an
// n-element ground set (n <= 12).
bool check_submodular_exhaustive(std::size_t n, const SetFunction& f, double tol = 1e-9);
// Same inequality on `samples` random pairs (n <= 63).
bool check_submodular_sampled(std::size_t n, const SetFunction& f, std::size_t samples,
                              std::uint64_t seed, double tol = 1e-9);
// Exhaustive for n <= 12, sampled otherwise, with F = dks_set_function.
bool check_submodular(const Graph& g);

struct PlantedInstance {
  Graph graph;
  VertexSet planted;
  double background_p = 0.0;
  std::uint64_t seed = 0;
};

// G(n, p) background plus a clique on k uniformly chosen vertices. Isolated
// vertices are kept. Deterministic for a fixed seed on every platform.
PlantedInstance generate_planted(std::size_t n, std::size_t k, double p, std::uint64_t seed);

// G(n, p); weights uniform in (0, max_weight] when max_weight > 0, unit
// otherwise.
Graph random_graph(std::size_t n, double p, std::uint64_t seed, double max_weight = 0.0);

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t n);  // center 0
// Vertices of b are shifted by a.num_vertices().
Graph disjoint_union(const Graph& a, const Graph& b);

struct DenseCheck {
  Eigen::MatrixXd adjacency;   // W
  Eigen::MatrixXd incidence;   // B, columns e_u - e_v
  Eigen::MatrixXd laplacian;   // B B^T
  Eigen::VectorXd adjacency_eigenvalues;  // ascending
  Eigen::VectorXd laplacian_eigenvalues;  // ascending
};

// Dense materialization with exact spectra (n <= 500).
DenseCheck dense_cross_check(const Graph& g);

}  // namespace dks::oracles
