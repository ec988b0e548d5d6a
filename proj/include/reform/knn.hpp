#ifndef REFORM_KNN_HPP
#define REFORM_KNN_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace reform {

using FeatureVec = std::array<double, 2>;

/**
 * Distance-weighted k-nearest-neighbour vote over 2-D feature vectors.
 *
 * Neighbours are weighted by inverse squared Euclidean distance. When the
 * query coincides with one or more training points, the score is the mean
 * label of those points. Among equidistant candidates, label-0 points are
 * preferred, then lower training index.
 *
 * A 2-d tree is built once at construction; queries are const and may run
 * concurrently.
 */
class WeightedKnn {
public:
    WeightedKnn() = default;
    WeightedKnn(std::vector<FeatureVec> points, std::vector<int> labels, int k);

    /// Fraction of weighted neighbour votes for label 1, in [0, 1].
    double score(const FeatureVec& query) const;

    int k() const { return k_; }
    std::size_t size() const { return points_.size(); }

private:
    struct Node {
        std::uint32_t begin;
        std::uint32_t end;
        std::int32_t left = -1;
        std::int32_t right = -1;
        int axis = -1;  // -1 for leaves
        double split = 0.0;
    };

    std::int32_t build(std::uint32_t begin, std::uint32_t end, int depth);

    std::vector<FeatureVec> points_;
    std::vector<int> labels_;
    std::vector<std::uint32_t> order_;  // tree layout -> training index
    std::vector<Node> nodes_;
    int k_ = 0;
};

}  // namespace reform

#endif  // REFORM_KNN_HPP
