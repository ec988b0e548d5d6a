#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

#include "reform/bagged_trees.hpp"

namespace reform {

double gini_impurity(double positive, double total)
{
    if (total <= 0.0) {
        return 0.0;
    }
    const double p = positive / total;
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

double DecisionTree::predict(const FeatureVec& x) const
{
    std::int32_t node = 0;
    while (feature[node] >= 0) {
        node = x[feature[node]] <= threshold[node] ? left[node] : right[node];
    }
    return value[node];
}

namespace {

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
    std::size_t position = 0;  // left child size in the sorted order
};

class TreeBuilder {
public:
    TreeBuilder(const std::vector<FeatureVec>& points, const std::vector<int>& labels,
                const TreeParams& params)
        : points_(points), labels_(labels), params_(params)
    {
    }

    DecisionTree run(std::vector<std::uint32_t> sample)
    {
        grow(sample, 0);
        return std::move(tree_);
    }

private:
    std::int32_t add_leaf(double value)
    {
        tree_.feature.push_back(-1);
        tree_.threshold.push_back(0.0);
        tree_.left.push_back(-1);
        tree_.right.push_back(-1);
        tree_.value.push_back(value);
        return static_cast<std::int32_t>(tree_.feature.size() - 1);
    }

    void sort_by(std::vector<std::uint32_t>& idx, int f) const
    {
        std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (points_[a][f] != points_[b][f]) {
                return points_[a][f] < points_[b][f];
            }
            return a < b;
        });
    }

    std::optional<Split> best_split(std::vector<std::uint32_t>& idx, double positives) const
    {
        const std::size_t n = idx.size();
        const auto min_leaf = static_cast<std::size_t>(std::max(params_.min_leaf, 1));
        std::optional<Split> best;
        for (int f = 0; f < 2; ++f) {
            sort_by(idx, f);
            double left_pos = 0.0;
            for (std::size_t i = 1; i < n; ++i) {
                left_pos += labels_[idx[i - 1]];
                if (i < min_leaf || n - i < min_leaf) {
                    continue;
                }
                const double lo = points_[idx[i - 1]][f];
                const double hi = points_[idx[i]][f];
                if (!(lo < hi)) {
                    continue;
                }
                const double nl = static_cast<double>(i);
                const double nr = static_cast<double>(n - i);
                const double imp = (nl * gini_impurity(left_pos, nl) +
                                    nr * gini_impurity(positives - left_pos, nr)) /
                                   static_cast<double>(n);
                if (!best || imp < best->impurity) {
                    double mid = lo + (hi - lo) / 2.0;
                    if (!(mid < hi)) {
                        mid = lo;
                    }
                    best = Split{f, mid, imp, i};
                }
            }
        }
        return best;
    }

    std::int32_t grow(std::vector<std::uint32_t>& idx, int depth)
    {
        double positives = 0.0;
        for (auto i : idx) {
            positives += labels_[i];
        }
        const double n = static_cast<double>(idx.size());
        const double value = positives / n;
        const bool pure = positives == 0.0 || positives == n;
        const bool depth_capped = params_.max_depth > 0 && depth >= params_.max_depth;
        if (pure || depth_capped) {
            return add_leaf(value);
        }
        const auto split = best_split(idx, positives);
        if (!split) {
            return add_leaf(value);
        }

        std::vector<std::uint32_t> left_idx;
        std::vector<std::uint32_t> right_idx;
        left_idx.reserve(split->position);
        right_idx.reserve(idx.size() - split->position);
        for (auto i : idx) {
            (points_[i][split->feature] <= split->threshold ? left_idx : right_idx).push_back(i);
        }
        idx.clear();
        idx.shrink_to_fit();

        const std::int32_t node = add_leaf(value);
        tree_.feature[node] = split->feature;
        tree_.threshold[node] = split->threshold;
        const std::int32_t l = grow(left_idx, depth + 1);
        const std::int32_t r = grow(right_idx, depth + 1);
        tree_.left[node] = l;
        tree_.right[node] = r;
        return node;
    }

    const std::vector<FeatureVec>& points_;
    const std::vector<int>& labels_;
    const TreeParams& params_;
    DecisionTree tree_;
};

}  // namespace

DecisionTree grow_tree(const std::vector<FeatureVec>& points, const std::vector<int>& labels,
                       std::vector<std::uint32_t> sample, const TreeParams& params)
{
    if (sample.empty()) {
        throw std::invalid_argument("grow_tree: empty sample");
    }
    return TreeBuilder(points, labels, params).run(std::move(sample));
}

BaggedTrees BaggedTrees::fit(const std::vector<FeatureVec>& points, const std::vector<int>& labels,
                             const TreeParams& params, std::uint64_t seed)
{
    if (params.n_trees < 1) {
        throw std::invalid_argument("BaggedTrees: n_trees must be >= 1");
    }
    const auto n = static_cast<std::uint32_t>(points.size());
    std::vector<DecisionTree> trees;
    trees.reserve(static_cast<std::size_t>(params.n_trees));
    for (int t = 0; t < params.n_trees; ++t) {
        std::vector<std::uint32_t> sample(n);
        if (params.bootstrap) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(t)};
            std::mt19937_64 rng(seq);
            std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
            for (auto& s : sample) {
                s = pick(rng);
            }
        } else {
            for (std::uint32_t i = 0; i < n; ++i) {
                sample[i] = i;
            }
        }
        trees.push_back(grow_tree(points, labels, std::move(sample), params));
    }
    return BaggedTrees(std::move(trees));
}

double BaggedTrees::score(const FeatureVec& x) const
{
    double sum = 0.0;
    for (const auto& t : trees_) {
        sum += t.predict(x);
    }
    return sum / static_cast<double>(trees_.size());
}

}  // namespace reform
