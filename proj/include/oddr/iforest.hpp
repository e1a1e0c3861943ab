// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oddr/rng.hpp"

namespace oddr {

// Non-owning view of `count` points of dimensionality `dim`, row-major.
class PointMatrix {
 public:
  PointMatrix(std::span<const float> data, std::size_t dim);

  std::size_t count() const noexcept { return count_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const float> row(std::size_t i) const {
    return data_.subspan(i * dim_, dim_);
  }
  float at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

 private:
  std::span<const float> data_;
  std::size_t dim_;
  std::size_t count_;
};

// Average path length of an unsuccessful binary-search-tree lookup over n
// items: c(n) = 2 H(n - 1) - 2 (n - 1) / n with H(i) ~= ln(i) + 0.57721567,
// and c(0) = c(1) = 0.
double avg_unsuccessful_path(std::size_t n);

inline constexpr double kEulerGamma = 0.57721567;

// Flat node record. Leaves have attribute == -1.
struct TreeNode {
  std::int32_t attribute = -1;
  double split = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::uint32_t size = 0;
  std::uint32_t depth = 0;

  bool is_leaf() const noexcept { return attribute < 0; }
};

class IsolationTree {
 public:
  IsolationTree(std::vector<TreeNode> nodes, int height_limit, std::size_t dim);

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  int height_limit() const noexcept { return height_limit_; }
  std::size_t dim() const noexcept { return dim_; }
  int max_depth() const noexcept;

 private:
  std::vector<TreeNode> nodes_;
  int height_limit_;
  std::size_t dim_;
};

// Recursive isolation tree over `indices` of `points`, starting at `height`.
// A node becomes a leaf when height >= height_limit, it holds at most one
// point, or every attribute is constant across its points. Otherwise the
// split attribute is drawn uniformly from all dimensions (redrawn among
// non-constant ones if the first draw is constant) and the split value
// uniformly from [min, max). Points with value < split go left.
IsolationTree build_tree(const PointMatrix& points,
                         std::span<const std::size_t> indices, int height,
                         int height_limit, RngStream& rng);
// Whole-set convenience overload.
IsolationTree build_tree(const PointMatrix& points, int height_limit,
                         RngStream& rng);

struct IsolationForest {
  std::vector<IsolationTree> trees;
  std::size_t subsample_size = 0;
  int height_limit = 0;
};

// ceil(log2 s).
int height_limit_for(std::size_t subsample_size);

// T trees, tree t built on an s-point subsample drawn without replacement
// from rng.fork(t).
IsolationForest build_forest(const PointMatrix& points, int tree_count,
                             std::size_t subsample_size, const RngStream& rng);

// Edges from the root to the terminating leaf plus c(leaf size).
double path_length(const IsolationTree& tree, std::span<const float> x);
double mean_path_length(const IsolationForest& forest,
                        std::span<const float> x);

// 2^(-mean_path / c(s)).
double score_from_mean_path(double mean_path, std::size_t subsample_size);
double anomaly_score(const IsolationForest& forest, std::span<const float> x);

}  // namespace oddr
