#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dks/graph.hpp"

namespace dks {

// Support of the k largest entries of x; ties go to the smaller index.
VertexSet project_topk(const Graph& g, std::span<const double> x, std::size_t k);

enum class FwStep {
  // alpha = min{1, x^T W dir / (-dir^T W dir)} when dir^T W dir < 0, else 1.
  kExactLineSearch,
  // alpha = min{1, ((x - xbar)^T grad) / (L ||xbar - x||^2)}, grad = -W x.
  kClosedForm,
};

struct FwConfig {
  int max_iter = 100;
  // L = ||W||_2; estimated from the graph when unset.
  std::optional<double> lipschitz;
  FwStep step = FwStep::kExactLineSearch;
  double objective_tol = 1e-9;
};

struct FwResult {
  std::vector<double> x;
  VertexSet set;                    // project_topk(x, k)
  int iters = 0;
  bool stationary = false;          // stopped because the step was zero
  std::vector<double> objective_history;  // -x^T W x, starting at x0
  std::vector<double> step_history;
  double integrality_gap = 0.0;     // ||x - round(x)||_inf
};

// Frank-Wolfe on min_{x in P} -x^T W x from x0. The linear minimization
// oracle is the indicator of the top-k entries of W x.
FwResult frank_wolfe_refine(const Graph& g, std::size_t k, std::span<const double> x0,
                            const FwConfig& cfg = {});

struct SpectralEstimate {
  double value = 0.0;          // largest |eigenvalue| of W
  std::vector<double> vector;  // unit eigenvector (non-negative Perron vector)
  int iterations = 0;
  bool converged = false;
};

// Power iteration on W^2 from a positive start, then projection onto the
// eigenvector of the positive eigenvalue (Perron-Frobenius: for W >= 0 it
// attains the spectral norm).
SpectralEstimate adjacency_spectral_norm(const Graph& g, double tol = 1e-10,
                                         std::uint64_t seed = 0x5eed);

}  // namespace dks
