#ifndef REFORM_FEATURES_HPP
#define REFORM_FEATURES_HPP

#include <vector>

#include "reform/types.hpp"

namespace reform {

/// Euclidean distance between two agents, in meters.
double distance(const AgentPose& a, const AgentPose& b);

/**
 * Total body rotation needed for two agents to face each other directly.
 *
 * Each agent contributes the absolute difference, wrapped to [0, π], between
 * its body heading and the bearing toward the other agent. The sum lies in
 * [0, 2π]: 0 when both face each other, 2π when they stand back to back.
 * The value is symmetric in its arguments. Per-agent offsets within a few
 * ulps of 0 or π are snapped to the endpoint. Coincident positions have no
 * bearing and yield 0.
 */
double effort_angle(const AgentPose& a, const AgentPose& b);

/// Features of one pair; `coincident` marks the undefined-bearing case.
PairSample pair_features(const AgentPose& a, const AgentPose& b);

/**
 * Breaks a frame into one sample per unordered pair of agents, n(n-1)/2 in
 * total, ordered by ascending (id_a, id_b) with id_a < id_b. When the frame
 * carries truth, label is 1 iff both agents share a truth group.
 * Frames with fewer than two agents yield no samples.
 */
std::vector<PairSample> pairwise_deconstruct(const Frame& frame);

/// Concatenated samples of every frame.
std::vector<PairSample> pairwise_deconstruct(const std::vector<Frame>& frames);

}  // namespace reform

#endif  // REFORM_FEATURES_HPP
