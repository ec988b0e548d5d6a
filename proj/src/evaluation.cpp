#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "reform/evaluation.hpp"

namespace reform {

Tolerance::Tolerance(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator)
{
    if (den_ <= 0 || num_ <= 0 || num_ > den_) {
        throw ValidationError("tolerance must lie in (0, 1]");
    }
    const std::int64_t g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
}

Tolerance Tolerance::from_double(double t)
{
    if (!std::isfinite(t) || t <= 0.0 || t > 1.0) {
        throw ValidationError("tolerance must lie in (0, 1]");
    }
    if (std::abs(t - 2.0 / 3.0) < 1e-4) {
        return two_thirds();
    }
    for (std::int64_t den = 1; den <= 1'000'000; ++den) {
        const double scaled = t * static_cast<double>(den);
        const double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) <= 1e-9 * static_cast<double>(den) && rounded >= 1.0) {
            return {static_cast<std::int64_t>(rounded), den};
        }
    }
    throw Error("tolerance " + std::to_string(t) + " has no short fractional form");
}

std::int64_t Tolerance::min_overlap(std::int64_t n) const
{
    return (num_ * n + den_ - 1) / den_;
}

std::int64_t Tolerance::max_outsiders(std::int64_t n) const
{
    return ((den_ - num_) * n) / den_;
}

bool group_match(std::span<const AgentId> detected, std::span<const AgentId> truth,
                 const Tolerance& tolerance)
{
    if (detected.empty() || truth.empty()) {
        throw ValidationError("group_match: empty group");
    }
    const std::set<AgentId> t(truth.begin(), truth.end());
    const std::set<AgentId> d(detected.begin(), detected.end());
    std::int64_t overlap = 0;
    for (AgentId id : d) {
        overlap += t.contains(id) ? 1 : 0;
    }
    const std::int64_t outsiders = static_cast<std::int64_t>(d.size()) - overlap;
    const auto n = static_cast<std::int64_t>(t.size());
    return overlap >= tolerance.min_overlap(n) && outsiders <= tolerance.max_outsiders(n);
}

namespace {

std::vector<const std::vector<AgentId>*> real_groups(const GroupSet& gs)
{
    std::vector<const std::vector<AgentId>*> out;
    for (const auto& g : gs.groups) {
        if (g.size() >= 2) {
            out.push_back(&g);
        }
    }
    return out;
}

// Kuhn's augmenting paths over the compatibility graph.
std::size_t max_matching(const std::vector<std::vector<bool>>& compat, std::size_t n_detected)
{
    std::vector<int> owner(n_detected, -1);
    std::size_t matched = 0;
    for (std::size_t t = 0; t < compat.size(); ++t) {
        std::vector<bool> seen(n_detected, false);
        auto augment = [&](auto&& self, std::size_t truth_idx) -> bool {
            for (std::size_t d = 0; d < n_detected; ++d) {
                if (!compat[truth_idx][d] || seen[d]) {
                    continue;
                }
                seen[d] = true;
                if (owner[d] < 0 || self(self, static_cast<std::size_t>(owner[d]))) {
                    owner[d] = static_cast<int>(truth_idx);
                    return true;
                }
            }
            return false;
        };
        if (augment(augment, t)) {
            ++matched;
        }
    }
    return matched;
}

}  // namespace

FrameScore score_frame(FrameId frame_id, const GroupSet& detected, const GroupSet& truth,
                       const Tolerance& tolerance, MatchStrategy strategy)
{
    const auto det = real_groups(detected);
    const auto tru = real_groups(truth);
    FrameScore s{frame_id, 0, det.size(), tru.size()};

    std::vector<std::vector<bool>> compat(tru.size(), std::vector<bool>(det.size(), false));
    for (std::size_t t = 0; t < tru.size(); ++t) {
        for (std::size_t d = 0; d < det.size(); ++d) {
            compat[t][d] = group_match(*det[d], *tru[t], tolerance);
        }
    }

    if (strategy == MatchStrategy::Optimal) {
        s.matched = max_matching(compat, det.size());
        return s;
    }
    std::vector<std::size_t> order(tru.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return tru[a]->size() > tru[b]->size();
    });
    std::vector<bool> used(det.size(), false);
    for (std::size_t t : order) {
        for (std::size_t d = 0; d < det.size(); ++d) {
            if (!used[d] && compat[t][d]) {
                used[d] = true;
                ++s.matched;
                break;
            }
        }
    }
    return s;
}

EvalReport evaluate(const std::vector<FrameGroups>& detections,
                    const std::vector<FrameGroups>& truths, const Tolerance& tolerance,
                    MatchStrategy strategy)
{
    std::map<FrameId, const GroupSet*> det;
    for (const auto& [id, gs] : detections) {
        if (!det.emplace(id, &gs).second) {
            throw ValidationError("evaluate: duplicate detection frame " + std::to_string(id));
        }
    }
    std::map<FrameId, const GroupSet*> tru;
    for (const auto& [id, gs] : truths) {
        if (!tru.emplace(id, &gs).second) {
            throw ValidationError("evaluate: duplicate truth frame " + std::to_string(id));
        }
    }
    for (const auto& [id, _] : det) {
        if (!tru.contains(id)) {
            throw ValidationError("evaluate: frame " + std::to_string(id) + " has detections but no truth");
        }
    }
    for (const auto& [id, _] : tru) {
        if (!det.contains(id)) {
            throw ValidationError("evaluate: frame " + std::to_string(id) + " has truth but no detections");
        }
    }

    EvalReport r;
    r.tolerance = tolerance;
    for (const auto& [id, truth] : tru) {
        const FrameScore s = score_frame(id, *det.at(id), *truth, tolerance, strategy);
        r.matched += s.matched;
        r.detected += s.detected;
        r.truth += s.truth;
        r.per_frame.push_back(s);
    }
    if (r.detected == 0 && r.truth == 0) {
        r.precision = r.recall = r.f1 = 1.0;
        return r;
    }
    r.precision = r.detected > 0 ? static_cast<double>(r.matched) / static_cast<double>(r.detected) : 0.0;
    r.recall = r.truth > 0 ? static_cast<double>(r.matched) / static_cast<double>(r.truth) : 0.0;
    r.f1 = (r.precision + r.recall) > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    return r;
}

double majority_baseline(std::span<const PairSample> samples)
{
    if (samples.empty()) {
        throw ValidationError("majority_baseline: empty sample list");
    }
    std::size_t positives = 0;
    for (const auto& s : samples) {
        positives += s.label == 1 ? 1 : 0;
    }
    const std::size_t negatives = samples.size() - positives;
    return static_cast<double>(std::max(positives, negatives)) / static_cast<double>(samples.size());
}

}  // namespace reform
