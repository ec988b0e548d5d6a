#ifndef REFORM_CHARACTERIZATION_HPP
#define REFORM_CHARACTERIZATION_HPP

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "reform/evaluation.hpp"
#include "reform/types.hpp"

namespace reform {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Arithmetic centroid of member positions; needs at least two poses.
Point2 group_center(std::span<const AgentPose> poses);

/**
 * Symmetry of a group, in degrees.
 *
 * Members are ordered by polar angle around the centroid; each of the N
 * gaps between neighbours (the last-to-first gap included) is compared to
 * the even spacing 360/N and the absolute deviations are summed. Two-member
 * groups are 0. Throws ValidationError when a member sits on the centroid.
 */
double symmetry(std::span<const AgentPose> poses);

/// The N angular gaps (degrees) used by symmetry(), in polar order.
/// Even angular spacing 360/N, in degrees.
double perfect_gap(std::size_t n);

/// Sum of |360/N − gap| over N gaps given in degrees.
double symmetry_from_gaps(std::span<const double> gaps_deg);

std::vector<double> adjacent_gaps(std::span<const AgentPose> poses);

/// Mean distance from members to the centroid, in meters.
double tightness(std::span<const AgentPose> poses);

struct GroupShape {
    std::vector<AgentId> group;
    Point2 center;
    std::optional<double> symmetry;  // degrees; empty when undefined
    double tightness = 0.0;  // m
};

GroupShape describe_group(const Frame& frame, std::span<const AgentId> group);

struct SizeStats {
    std::size_t size = 0;
    std::size_t count = 0;
    std::size_t symmetry_count = 0;  // groups with a defined symmetry
    double mean_symmetry = 0.0;
    double mean_tightness = 0.0;
};

/// Per-size means over every group of every frame, ascending by size.
/// `groups` names, per frame id of `frames`, the groups to describe.
/// Groups without a defined symmetry only contribute to tightness.
std::vector<SizeStats> characterize_corpus(const std::vector<Frame>& frames,
                                           const std::vector<FrameGroups>& groups);

/// Convenience overload describing each frame's truth groups.
std::vector<SizeStats> characterize_corpus(const std::vector<Frame>& frames);

}  // namespace reform

#endif  // REFORM_CHARACTERIZATION_HPP
