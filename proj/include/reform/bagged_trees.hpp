#ifndef REFORM_BAGGED_TREES_HPP
#define REFORM_BAGGED_TREES_HPP

#include <cstdint>
#include <vector>

#include "reform/knn.hpp"

namespace reform {

struct TreeParams {
    int n_trees = 30;
    int max_depth = 12;  // 0 = unlimited
    int min_leaf = 5;
    bool bootstrap = true;
};

/// CART classification tree stored as flat node arrays. Node 0 is the root;
/// a node with feature < 0 is a leaf whose value is the fraction of label-1
/// training samples that reached it. Samples with x[feature] <= threshold go
/// left.
struct DecisionTree {
    std::vector<std::int32_t> feature;
    std::vector<double> threshold;
    std::vector<std::int32_t> left;
    std::vector<std::int32_t> right;
    std::vector<double> value;

    double predict(const FeatureVec& x) const;
    std::size_t node_count() const { return feature.size(); }
};

/// Grows one tree with Gini splits over the given sample indices
/// (duplicates allowed, as produced by bootstrap resampling).
DecisionTree grow_tree(const std::vector<FeatureVec>& points, const std::vector<int>& labels,
                       std::vector<std::uint32_t> sample, const TreeParams& params);

/// Gini impurity of a node holding `positive` label-1 samples out of `total`.
double gini_impurity(double positive, double total);

/// Bootstrap-aggregated ensemble; the score is the mean leaf value.
class BaggedTrees {
public:
    BaggedTrees() = default;
    explicit BaggedTrees(std::vector<DecisionTree> trees) : trees_(std::move(trees)) {}

    static BaggedTrees fit(const std::vector<FeatureVec>& points, const std::vector<int>& labels,
                           const TreeParams& params, std::uint64_t seed);

    double score(const FeatureVec& x) const;

    const std::vector<DecisionTree>& trees() const { return trees_; }

private:
    std::vector<DecisionTree> trees_;
};

}  // namespace reform

#endif  // REFORM_BAGGED_TREES_HPP
