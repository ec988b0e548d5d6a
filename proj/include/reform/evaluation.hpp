#ifndef REFORM_EVALUATION_HPP
#define REFORM_EVALUATION_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "reform/types.hpp"

namespace reform {

/**
 * Matching tolerance T in (0, 1], held as an exact fraction so that
 * ⌈T·n⌉ and ⌊(1−T)·n⌋ involve no floating-point rounding.
 */
class Tolerance {
public:
    Tolerance(std::int64_t numerator, std::int64_t denominator);

    /// Two thirds, the usual group-detection tolerance.
    static Tolerance two_thirds() { return {2, 3}; }

    /// Converts a decimal flag value. Values within 1e-4 of 2/3 map to 2/3
    /// exactly; others map to the fraction with the smallest denominator
    /// (up to 10^6) that reproduces the value.
    static Tolerance from_double(double t);

    std::int64_t numerator() const { return num_; }
    std::int64_t denominator() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// ⌈T·n⌉
    std::int64_t min_overlap(std::int64_t truth_size) const;
    /// ⌊(1−T)·n⌋
    std::int64_t max_outsiders(std::int64_t truth_size) const;

private:
    std::int64_t num_;
    std::int64_t den_;
};

/// True iff |detected ∩ truth| >= ⌈T·|truth|⌉ and
/// |detected \ truth| <= ⌊(1−T)·|truth|⌋. Throws on empty sets.
bool group_match(std::span<const AgentId> detected, std::span<const AgentId> truth,
                 const Tolerance& tolerance);

enum class MatchStrategy {
    Greedy,   ///< largest truth group first, lowest detected index wins
    Optimal,  ///< maximum bipartite matching
};

struct FrameScore {
    FrameId frame_id = 0;
    std::size_t matched = 0;
    std::size_t detected = 0;
    std::size_t truth = 0;
};

struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t matched = 0;
    std::size_t detected = 0;
    std::size_t truth = 0;
    Tolerance tolerance = Tolerance::two_thirds();
    std::vector<FrameScore> per_frame;
};

using FrameGroups = std::pair<FrameId, GroupSet>;

/// One-to-one matched pairs count for a single frame. Groups smaller than
/// two are ignored.
FrameScore score_frame(FrameId frame_id, const GroupSet& detected, const GroupSet& truth,
                       const Tolerance& tolerance, MatchStrategy strategy = MatchStrategy::Greedy);

/**
 * Micro-averaged precision and recall over frames. Detections and truths
 * must cover the same frame ids. With nothing detected precision is 0; with
 * no truth recall is 0; when both are empty the corpus scores 1.
 */
EvalReport evaluate(const std::vector<FrameGroups>& detections,
                    const std::vector<FrameGroups>& truths, const Tolerance& tolerance,
                    MatchStrategy strategy = MatchStrategy::Greedy);

/// Accuracy of always predicting the most frequent label (ties go to 0).
double majority_baseline(std::span<const PairSample> samples);

}  // namespace reform

#endif  // REFORM_EVALUATION_HPP
