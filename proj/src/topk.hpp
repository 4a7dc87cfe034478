#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "dks/graph.hpp"

namespace dks::detail {

// Indices of the k largest entries, ties broken toward the smaller index.
// Returned in ascending index order.
inline std::vector<VertexId> topk_indices(std::span<const double> x, std::size_t k) {
  std::vector<VertexId> idx(x.size());
  std::iota(idx.begin(), idx.end(), VertexId{0});
  auto before = [&x](VertexId a, VertexId b) { return x[a] != x[b] ? x[a] > x[b] : a < b; };
  if (k < idx.size()) {
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                     before);
    idx.resize(k);
  }
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace dks::detail
