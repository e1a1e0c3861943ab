// SPDX-License-Identifier: Apache-2.0
#include "oddr/iforest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oddr/error.hpp"

namespace oddr {

PointMatrix::PointMatrix(std::span<const float> data, std::size_t dim)
    : data_(data), dim_(dim), count_(dim == 0 ? 0 : data.size() / dim) {
  if (dim == 0 || data.size() % dim != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point data is not a whole number of rows");
  }
}

double avg_unsuccessful_path(std::size_t n) {
  if (n <= 1) return 0.0;
  const double m = static_cast<double>(n);
  const double harmonic = std::log(m - 1.0) + kEulerGamma;
  return 2.0 * harmonic - 2.0 * (m - 1.0) / m;
}

IsolationTree::IsolationTree(std::vector<TreeNode> nodes, int height_limit,
                             std::size_t dim)
    : nodes_(std::move(nodes)), height_limit_(height_limit), dim_(dim) {}

int IsolationTree::max_depth() const noexcept {
  std::uint32_t depth = 0;
  for (const auto& node : nodes_) depth = std::max(depth, node.depth);
  return static_cast<int>(depth);
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const PointMatrix& points, std::vector<std::size_t> indices,
              int height_limit, RngStream& rng)
      : points_(points),
        indices_(std::move(indices)),
        height_limit_(height_limit),
        rng_(rng) {}

  IsolationTree run(int height) {
    build(0, indices_.size(), height);
    return IsolationTree(std::move(nodes_), height_limit_, points_.dim());
  }

 private:
  std::pair<float, float> range(std::size_t begin, std::size_t end,
                                std::size_t q) const {
    float lo = points_.at(indices_[begin], q);
    float hi = lo;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const float v = points_.at(indices_[i], q);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {lo, hi};
  }

  std::int32_t make_leaf(std::size_t count, int height) {
    TreeNode leaf;
    leaf.size = static_cast<std::uint32_t>(count);
    leaf.depth = static_cast<std::uint32_t>(height);
    nodes_.push_back(leaf);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::int32_t build(std::size_t begin, std::size_t end, int height) {
    const std::size_t count = end - begin;
    if (height >= height_limit_ || count <= 1) return make_leaf(count, height);

    const std::size_t dim = points_.dim();
    std::size_t q = rng_.below(dim);
    auto [lo, hi] = range(begin, end, q);
    if (!(lo < hi)) {
      std::vector<std::size_t> candidates;
      for (std::size_t j = 0; j < dim; ++j) {
        const auto [a, b] = range(begin, end, j);
        if (a < b) candidates.push_back(j);
      }
      if (candidates.empty()) return make_leaf(count, height);
      q = candidates[rng_.below(candidates.size())];
      std::tie(lo, hi) = range(begin, end, q);
    }

    double split = lo + rng_.uniform() * (static_cast<double>(hi) - lo);
    if (split >= hi) split = lo;

    const auto mid = std::partition(
        indices_.begin() + begin, indices_.begin() + end,
        [&](std::size_t i) { return points_.at(i, q) < split; });
    const std::size_t pivot = static_cast<std::size_t>(mid - indices_.begin());

    const std::int32_t self = static_cast<std::int32_t>(nodes_.size());
    TreeNode node;
    node.attribute = static_cast<std::int32_t>(q);
    node.split = split;
    node.size = static_cast<std::uint32_t>(count);
    node.depth = static_cast<std::uint32_t>(height);
    nodes_.push_back(node);

    const std::int32_t left = build(begin, pivot, height + 1);
    const std::int32_t right = build(pivot, end, height + 1);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
  }

  const PointMatrix& points_;
  std::vector<std::size_t> indices_;
  int height_limit_;
  RngStream& rng_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

IsolationTree build_tree(const PointMatrix& points,
                         std::span<const std::size_t> indices, int height,
                         int height_limit, RngStream& rng) {
  if (indices.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "cannot build a tree on no points");
  }
  for (std::size_t i : indices) {
    if (i >= points.count()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "point " + std::to_string(i) + " of " +
                      std::to_string(points.count()));
    }
  }
  TreeBuilder builder(points, {indices.begin(), indices.end()}, height_limit,
                      rng);
  return builder.run(height);
}

IsolationTree build_tree(const PointMatrix& points, int height_limit,
                         RngStream& rng) {
  std::vector<std::size_t> all(points.count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return build_tree(points, all, 0, height_limit, rng);
}

int height_limit_for(std::size_t subsample_size) {
  int h = 0;
  while ((std::size_t{1} << h) < subsample_size) ++h;
  return h;
}

IsolationForest build_forest(const PointMatrix& points, int tree_count,
                             std::size_t subsample_size, const RngStream& rng) {
  const std::size_t n = points.count();
  if (n == 0) throw Error(ErrorCode::kEmptyDataset, "no points");
  if (tree_count < 1) {
    throw Error(ErrorCode::kOutOfRange, "tree count must be at least 1");
  }
  if (subsample_size > n) {
    throw Error(ErrorCode::kSubsampleTooLarge,
                "subsample " + std::to_string(subsample_size) + " > " +
                    std::to_string(n) + " points");
  }
  if (subsample_size < 2) {
    throw Error(ErrorCode::kSubsampleTooSmall,
                "subsample must hold at least 2 points");
  }

  IsolationForest forest;
  forest.subsample_size = subsample_size;
  forest.height_limit = height_limit_for(subsample_size);
  forest.trees.reserve(static_cast<std::size_t>(tree_count));

  std::vector<std::size_t> order(n);
  for (int t = 0; t < tree_count; ++t) {
    RngStream tree_rng = rng.fork(static_cast<std::uint64_t>(t));
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < subsample_size; ++i) {
      std::swap(order[i], order[i + tree_rng.below(n - i)]);
    }
    forest.trees.push_back(build_tree(
        points, std::span<const std::size_t>(order.data(), subsample_size), 0,
        forest.height_limit, tree_rng));
  }
  return forest;
}

double path_length(const IsolationTree& tree, std::span<const float> x) {
  if (x.size() != tree.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query has " + std::to_string(x.size()) + " dims, tree has " +
                    std::to_string(tree.dim()));
  }
  const auto& nodes = tree.nodes();
  std::int32_t at = 0;
  while (!nodes[at].is_leaf()) {
    const TreeNode& node = nodes[at];
    at = x[node.attribute] < node.split ? node.left : node.right;
  }
  return nodes[at].depth - tree.root().depth +
         avg_unsuccessful_path(nodes[at].size);
}

double mean_path_length(const IsolationForest& forest,
                        std::span<const float> x) {
  double total = 0.0;
  for (const auto& tree : forest.trees) total += path_length(tree, x);
  return total / static_cast<double>(forest.trees.size());
}

double score_from_mean_path(double mean_path, std::size_t subsample_size) {
  const double norm = avg_unsuccessful_path(subsample_size);
  if (norm <= 0.0) return 1.0;
  return std::exp2(-mean_path / norm);
}

double anomaly_score(const IsolationForest& forest, std::span<const float> x) {
  if (forest.trees.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "forest has no trees");
  }
  return score_from_mean_path(mean_path_length(forest, x),
                              forest.subsample_size);
}

}  // namespace oddr
