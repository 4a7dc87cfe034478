#pragma once

#include <span>
#include <vector>

#include "dks/graph.hpp"

namespace dks {

// Two leading singular values of the symmetric W and the unit eigenvector
// for sigma1.
struct SpectralPair {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  std::vector<double> u1;
  bool converged = false;
};

// Two-phase greedy: the ceil(k/2) vertices of largest weighted degree, then
// the floor(k/2) outside vertices with the largest weight into that set.
// Ties go to the smaller id.
VertexSet greedy_feige(const Graph& g, std::size_t k);

struct TpmResult {
  VertexSet set;  // best iterate visited
  int iters = 0;
};

// Truncated power method: x <- indicator(top-k of W x) until the support
// repeats, the objective stops increasing, or max_iter.
TpmResult truncated_power_method(const Graph& g, std::size_t k, std::span<const double> x0,
                                 int max_iter = 100);

SpectralPair top_two_singular(const Graph& g, double tol = 1e-12,
                              std::uint64_t seed = 0x5eed);

struct Rank1Result {
  VertexSet set;           // candidate with the larger true weight
  double surrogate = 0.0;  // max over the two candidates of sigma1 (u1^T 1_S)^2
};

// Rank-1 surrogate DkS: top-k of u1 and of -u1.
Rank1Result rank1_dks(const Graph& g, std::size_t k, const SpectralPair& sp);

// min{ cap, (q/k + sigma2)/(k-1), sigma1/(k-1) }, cap = largest edge weight
// (1 on unweighted graphs). Upper-bounds the optimal edge density.
double density_upper_bound(const Graph& g, std::size_t k, const SpectralPair& sp, double q);

}  // namespace dks
