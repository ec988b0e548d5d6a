#ifndef REFORM_TYPES_HPP
#define REFORM_TYPES_HPP

/**
 * @file types.hpp
 * @brief Domain types shared by the whole pipeline.
 *
 * Conventions: positions are meters in a fixed world frame, angles are
 * radians, counterclockwise-positive, with 0 along the world +x axis.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace reform {

using AgentId = std::int64_t;
using FrameId = std::int64_t;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A frame, pose or group violates a type invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A document could not be read.
class ParseError : public Error {
public:
    using Error::Error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Wraps an angle into [0, 2π). Throws ValidationError on non-finite input.
double normalize_angle(double theta);

/// Signed difference wrapped into [-π, π].
double wrap_to_pi(double theta);

inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }
inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }

struct AgentPose {
    AgentId agent_id = 0;
    double x = 0.0;  // m
    double y = 0.0;  // m
    double body_theta = 0.0;  // rad, [0, 2π)
    std::optional<double> head_theta;  // rad, [0, 2π)

    bool operator==(const AgentPose&) const = default;
};

/// Builds a pose with normalized headings; rejects non-finite values.
AgentPose make_pose(AgentId id, double x, double y, double body_theta,
                    std::optional<double> head_theta = std::nullopt);

/// Disjoint groups of agents, each of size >= 2. Agents absent from every
/// group are singletons.
struct GroupSet {
    std::vector<std::vector<AgentId>> groups;

    bool operator==(const GroupSet&) const = default;

    std::size_t size() const { return groups.size(); }
    bool empty() const { return groups.empty(); }

    /// Returns a copy with members sorted inside each group and groups sorted
    /// lexicographically. Two group sets describe the same partition
    /// fragment iff their canonical forms compare equal.
    GroupSet canonical() const;

    /// Index of the group containing `id`, if any.
    std::optional<std::size_t> group_of(AgentId id) const;
};

/// Checks disjointness and the size >= 2 rule.
void validate_groups(const GroupSet& groups, const std::string& context);

struct Frame {
    FrameId frame_id = 0;
    std::optional<double> timestamp;  // s
    std::vector<AgentPose> agents;
    std::optional<GroupSet> truth;

    bool operator==(const Frame&) const = default;

    const AgentPose* find(AgentId id) const;
};

/// Returns the frame if all invariants hold, otherwise throws ValidationError
/// naming the frame and the offending agent id.
const Frame& validate_frame(const Frame& frame);

/// Features and label of one unordered pair of agents.
struct PairSample {
    AgentId id_a = 0;
    AgentId id_b = 0;
    double distance = 0.0;  // m
    double effort_angle = 0.0;  // rad, [0, 2π]
    int label = 0;  // 1 = same F-formation
    /// Positions coincide, so the effort angle was set to 0 instead of
    /// being measured.
    bool coincident = false;
};

/// n×n binary matrix of pairwise same-group predictions. Rows and columns
/// follow `ids`, which is sorted ascending.
class RelationMatrix {
public:
    RelationMatrix() = default;
    /// Identity relation over `ids` (unit diagonal, no pairs).
    explicit RelationMatrix(std::vector<AgentId> ids);

    std::size_t size() const { return ids_.size(); }
    const std::vector<AgentId>& ids() const { return ids_; }

    bool at(std::size_t i, std::size_t j) const { return cells_[i * ids_.size() + j] != 0; }

    /// Sets both (i, j) and (j, i). The diagonal is fixed at 1.
    void set_pair(std::size_t i, std::size_t j, bool value);

    std::optional<std::size_t> index_of(AgentId id) const;

    bool operator==(const RelationMatrix&) const = default;

private:
    std::vector<AgentId> ids_;
    std::vector<std::uint8_t> cells_;
};

}  // namespace reform

#endif  // REFORM_TYPES_HPP
