#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "reform/characterization.hpp"

namespace reform {

namespace {

void require_group(std::span<const AgentPose> poses, const char* what)
{
    if (poses.size() < 2) {
        throw ValidationError(std::string(what) + ": need at least 2 members");
    }
}

}  // namespace

Point2 group_center(std::span<const AgentPose> poses)
{
    require_group(poses, "group_center");
    Point2 c;
    for (const auto& p : poses) {
        c.x += p.x;
        c.y += p.y;
    }
    const double n = static_cast<double>(poses.size());
    return {c.x / n, c.y / n};
}

std::vector<double> adjacent_gaps(std::span<const AgentPose> poses)
{
    const Point2 c = group_center(poses);
    std::vector<double> angles;
    angles.reserve(poses.size());
    for (const auto& p : poses) {
        const double dx = p.x - c.x;
        const double dy = p.y - c.y;
        if (std::hypot(dx, dy) < 1e-12) {
            throw ValidationError("symmetry: agent " + std::to_string(p.agent_id) +
                                  " sits on the group center");
        }
        angles.push_back(std::atan2(dy, dx));
    }
    std::sort(angles.begin(), angles.end());
    std::vector<double> gaps;
    gaps.reserve(angles.size());
    for (std::size_t i = 0; i + 1 < angles.size(); ++i) {
        gaps.push_back(rad_to_deg(angles[i + 1] - angles[i]));
    }
    gaps.push_back(rad_to_deg(kTwoPi - (angles.back() - angles.front())));
    return gaps;
}

double symmetry(std::span<const AgentPose> poses)
{
    require_group(poses, "symmetry");
    if (poses.size() == 2) {
        return 0.0;
    }
    return symmetry_from_gaps(adjacent_gaps(poses));
}

double perfect_gap(std::size_t n)
{
    if (n == 0) {
        throw ValidationError("perfect_gap: empty group");
    }
    return 360.0 / static_cast<double>(n);
}

double symmetry_from_gaps(std::span<const double> gaps_deg)
{
    const double perfect = perfect_gap(gaps_deg.size());
    double total = 0.0;
    for (double gap : gaps_deg) {
        total += std::abs(perfect - gap);
    }
    return total;
}

double tightness(std::span<const AgentPose> poses)
{
    const Point2 c = group_center(poses);
    double sum = 0.0;
    for (const auto& p : poses) {
        sum += std::hypot(p.x - c.x, p.y - c.y);
    }
    return sum / static_cast<double>(poses.size());
}

GroupShape describe_group(const Frame& frame, std::span<const AgentId> group)
{
    std::vector<AgentPose> poses;
    poses.reserve(group.size());
    for (AgentId id : group) {
        const AgentPose* p = frame.find(id);
        if (p == nullptr) {
            throw ValidationError("frame " + std::to_string(frame.frame_id) +
                                  ": group references unknown agent " + std::to_string(id));
        }
        poses.push_back(*p);
    }
    GroupShape shape;
    shape.group.assign(group.begin(), group.end());
    shape.center = group_center(poses);
    shape.tightness = tightness(poses);
    try {
        shape.symmetry = symmetry(poses);
    } catch (const ValidationError&) {
        shape.symmetry.reset();
    }
    return shape;
}

std::vector<SizeStats> characterize_corpus(const std::vector<Frame>& frames,
                                           const std::vector<FrameGroups>& groups)
{
    std::map<FrameId, const Frame*> by_id;
    for (const auto& f : frames) {
        by_id.emplace(f.frame_id, &f);
    }
    struct Acc {
        std::size_t count = 0;
        std::size_t sym_count = 0;
        double sym = 0.0;
        double tight = 0.0;
    };
    std::map<std::size_t, Acc> acc;
    for (const auto& [frame_id, gs] : groups) {
        auto it = by_id.find(frame_id);
        if (it == by_id.end()) {
            throw ValidationError("characterize: unknown frame " + std::to_string(frame_id));
        }
        for (const auto& g : gs.groups) {
            if (g.size() < 2) {
                continue;
            }
            const GroupShape shape = describe_group(*it->second, g);
            Acc& a = acc[g.size()];
            ++a.count;
            a.tight += shape.tightness;
            if (shape.symmetry) {
                ++a.sym_count;
                a.sym += *shape.symmetry;
            }
        }
    }
    std::vector<SizeStats> out;
    for (const auto& [size, a] : acc) {
        SizeStats s;
        s.size = size;
        s.count = a.count;
        s.symmetry_count = a.sym_count;
        s.mean_tightness = a.tight / static_cast<double>(a.count);
        s.mean_symmetry = a.sym_count > 0 ? a.sym / static_cast<double>(a.sym_count) : 0.0;
        out.push_back(s);
    }
    return out;
}

std::vector<SizeStats> characterize_corpus(const std::vector<Frame>& frames)
{
    std::vector<FrameGroups> groups;
    for (const auto& f : frames) {
        if (f.truth) {
            groups.emplace_back(f.frame_id, *f.truth);
        }
    }
    return characterize_corpus(frames, groups);
}

}  // namespace reform
