#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "reform/types.hpp"

namespace reform {

AgentPose make_pose(AgentId id, double x, double y, double body_theta,
                    std::optional<double> head_theta)
{
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw ValidationError("agent " + std::to_string(id) + ": non-finite position");
    }
    AgentPose pose;
    pose.agent_id = id;
    pose.x = x;
    pose.y = y;
    pose.body_theta = normalize_angle(body_theta);
    if (head_theta) {
        pose.head_theta = normalize_angle(*head_theta);
    }
    return pose;
}

GroupSet GroupSet::canonical() const
{
    GroupSet out = *this;
    for (auto& g : out.groups) {
        std::sort(g.begin(), g.end());
    }
    std::sort(out.groups.begin(), out.groups.end());
    return out;
}

std::optional<std::size_t> GroupSet::group_of(AgentId id) const
{
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (std::find(groups[g].begin(), groups[g].end(), id) != groups[g].end()) {
            return g;
        }
    }
    return std::nullopt;
}

void validate_groups(const GroupSet& groups, const std::string& context)
{
    std::set<AgentId> seen;
    for (const auto& g : groups.groups) {
        if (g.size() < 2) {
            throw ValidationError(context + ": singleton group" +
                                  (g.empty() ? std::string(" (empty)")
                                             : " containing agent " + std::to_string(g.front())));
        }
        for (AgentId id : g) {
            if (!seen.insert(id).second) {
                throw ValidationError(context + ": agent " + std::to_string(id) +
                                      " appears in more than one group");
            }
        }
    }
}

const AgentPose* Frame::find(AgentId id) const
{
    for (const auto& a : agents) {
        if (a.agent_id == id) {
            return &a;
        }
    }
    return nullptr;
}

const Frame& validate_frame(const Frame& frame)
{
    const std::string ctx = "frame " + std::to_string(frame.frame_id);
    std::set<AgentId> ids;
    for (const auto& a : frame.agents) {
        if (!ids.insert(a.agent_id).second) {
            throw ValidationError(ctx + ": duplicate agent id " + std::to_string(a.agent_id));
        }
        if (!std::isfinite(a.x) || !std::isfinite(a.y)) {
            throw ValidationError(ctx + ": agent " + std::to_string(a.agent_id) +
                                  " has a non-finite position");
        }
        auto bad_angle = [](double t) { return !std::isfinite(t) || t < 0.0 || t >= kTwoPi; };
        if (bad_angle(a.body_theta) || (a.head_theta && bad_angle(*a.head_theta))) {
            throw ValidationError(ctx + ": agent " + std::to_string(a.agent_id) +
                                  " has an orientation outside [0, 2pi)");
        }
    }
    if (frame.truth) {
        validate_groups(*frame.truth, ctx);
        for (const auto& g : frame.truth->groups) {
            for (AgentId id : g) {
                if (!ids.contains(id)) {
                    throw ValidationError(ctx + ": truth group references unknown agent " +
                                          std::to_string(id));
                }
            }
        }
    }
    return frame;
}

RelationMatrix::RelationMatrix(std::vector<AgentId> ids)
    : ids_(std::move(ids))
{
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
        throw ValidationError("RelationMatrix: duplicate agent id");
    }
    const std::size_t n = ids_.size();
    cells_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        cells_[i * n + i] = 1;
    }
}

void RelationMatrix::set_pair(std::size_t i, std::size_t j, bool value)
{
    const std::size_t n = ids_.size();
    if (i >= n || j >= n) {
        throw std::out_of_range("RelationMatrix::set_pair: index out of range");
    }
    if (i == j) {
        return;
    }
    cells_[i * n + j] = value ? 1 : 0;
    cells_[j * n + i] = value ? 1 : 0;
}

std::optional<std::size_t> RelationMatrix::index_of(AgentId id) const
{
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - ids_.begin());
}

}  // namespace reform
