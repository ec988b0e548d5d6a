#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "reform/knn.hpp"

namespace reform {

namespace {

constexpr std::uint32_t kLeafSize = 16;

struct Candidate {
    double d2;
    int label;
    std::uint32_t index;

    // Smaller is a better neighbour.
    bool operator<(const Candidate& o) const
    {
        return std::tie(d2, label, index) < std::tie(o.d2, o.label, o.index);
    }
};

}  // namespace

WeightedKnn::WeightedKnn(std::vector<FeatureVec> points, std::vector<int> labels, int k)
    : points_(std::move(points)), labels_(std::move(labels)), k_(k)
{
    if (points_.size() != labels_.size()) {
        throw std::invalid_argument("WeightedKnn: points/labels size mismatch");
    }
    if (k_ < 1) {
        throw std::invalid_argument("WeightedKnn: k must be >= 1");
    }
    order_.resize(points_.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i) {
        order_[i] = i;
    }
    if (!points_.empty()) {
        nodes_.reserve(2 * points_.size() / kLeafSize + 2);
        build(0, static_cast<std::uint32_t>(points_.size()), 0);
    }
}

std::int32_t WeightedKnn::build(std::uint32_t begin, std::uint32_t end, int depth)
{
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{begin, end});
    if (end - begin <= kLeafSize) {
        return id;
    }
    const int axis = depth % 2;
    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         return std::tie(points_[a][axis], a) < std::tie(points_[b][axis], b);
                     });
    const double split = points_[order_[mid]][axis];
    const std::int32_t left = build(begin, mid, depth + 1);
    const std::int32_t right = build(mid, end, depth + 1);
    nodes_[id].axis = axis;
    nodes_[id].split = split;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

double WeightedKnn::score(const FeatureVec& query) const
{
    if (points_.empty()) {
        throw std::logic_error("WeightedKnn: empty model");
    }
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_), points_.size());
    std::priority_queue<Candidate> best;  // top = worst kept neighbour

    auto visit = [&](auto&& self, std::int32_t node_id) -> void {
        const Node& node = nodes_[node_id];
        if (node.axis < 0) {
            for (std::uint32_t p = node.begin; p < node.end; ++p) {
                const std::uint32_t idx = order_[p];
                const double dx = points_[idx][0] - query[0];
                const double dy = points_[idx][1] - query[1];
                const Candidate c{dx * dx + dy * dy, labels_[idx], idx};
                if (best.size() < k) {
                    best.push(c);
                } else if (c < best.top()) {
                    best.pop();
                    best.push(c);
                }
            }
            return;
        }
        // Left holds values <= split, right holds values >= split.
        const double diff = query[node.axis] - node.split;
        const std::int32_t near = diff <= 0.0 ? node.left : node.right;
        const std::int32_t far = diff <= 0.0 ? node.right : node.left;
        self(self, near);
        if (best.size() < k || diff * diff <= best.top().d2) {
            self(self, far);
        }
    };
    visit(visit, 0);

    std::vector<Candidate> found;
    found.reserve(best.size());
    while (!best.empty()) {
        found.push_back(best.top());
        best.pop();
    }
    std::sort(found.begin(), found.end());

    if (found.front().d2 == 0.0) {
        double votes = 0.0;
        int count = 0;
        for (const auto& c : found) {
            if (c.d2 != 0.0) {
                break;
            }
            votes += c.label;
            ++count;
        }
        return votes / count;
    }
    // Weights relative to the nearest neighbour keep 1/d² finite.
    const double nearest = found.front().d2;
    double weight_sum = 0.0;
    double positive = 0.0;
    for (const auto& c : found) {
        const double w = nearest / c.d2;
        weight_sum += w;
        positive += w * c.label;
    }
    return positive / weight_sum;
}

}  // namespace reform
