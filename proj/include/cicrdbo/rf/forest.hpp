#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cicrdbo/rf/dataset.hpp"

namespace cicrdbo::rf {

struct RfHyperparams {
  std::size_t n_trees = 100;
  std::size_t max_depth = 10;
  std::size_t min_samples_split = 2;
  double feature_fraction = 0.33;

  // ceil(feature_fraction * n_features), at least 1.
  std::size_t features_per_split(std::size_t n_features) const;

  // Throws DomainError unless the values lie in the tuning ranges
  // [10, 300] x [2, 20] x [2, 10] x [0.1, 1].
  void validate_search_range() const;

  bool operator==(const RfHyperparams&) const = default;
};

// 1 - sum p_c^2. Throws DomainError when both counts are zero.
double gini_impurity(std::size_t n0, std::size_t n1);

struct TrainOptions {
  bool bootstrap = true;
  std::size_t threads = 1;  // 0 = hardware concurrency
};

class DecisionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;  // rows with value <= threshold go left
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    double probability = 0.0;  // share of class 1 among the node's samples

    bool operator==(const Node&) const = default;
  };

  double predict_proba(std::span<const double> row) const;
  std::size_t depth() const;
  const std::vector<Node>& nodes() const { return nodes_; }

  bool operator==(const DecisionTree&) const = default;

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
};

class ForestModel {
 public:
  ForestModel(std::vector<DecisionTree> trees, std::vector<double> importance);

  // Mean of the trees' leaf probabilities.
  double predict_proba(std::span<const double> row) const;
  std::vector<double> predict_proba(const Dataset& data) const;

  // Mean decrease in Gini impurity per feature, normalised to sum to 1
  // (all zeros when no tree split).
  const std::vector<double>& feature_importance() const { return importance_; }
  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  std::vector<DecisionTree> trees_;
  std::vector<double> importance_;
};

/// Random forest of CART trees grown on Gini impurity.
///
/// Tree t draws its bootstrap sample from a stream derived from (seed, t), and
/// every node draws its feature subset from a stream derived from the tree
/// seed and the node's path from the root. Growing with a larger max_depth
/// therefore only refines the leaves of the shallower tree.
///
/// Throws TrainingError when the training set is empty or single-class, and
/// DomainError for n_trees == 0, min_samples_split < 2, max_depth > 60 or a
/// feature fraction outside (0, 1].
ForestModel train_forest(const Dataset& train, const RfHyperparams& hp, std::uint64_t seed,
                         const TrainOptions& options = {});

// Share of rows whose thresholded prediction matches the label.
double accuracy(const ForestModel& model, const Dataset& data, double threshold = 0.5);

}  // namespace cicrdbo::rf
