#include <algorithm>
#include <cmath>
#include <limits>

#include "reform/features.hpp"

namespace reform {

namespace {

// Offsets this close to 0 or π are rounding noise from atan2 and are
// reported as the exact endpoint.
constexpr double kEndpointSnap = 16.0 * std::numeric_limits<double>::epsilon() * kPi;

// |heading - bearing| on the circle, in [0, π]. Both inputs are brought into
// [0, 2π) first so an agent heading exactly along the bearing gives 0.
double heading_offset(double heading, double bearing)
{
    double d = normalize_angle(heading) - normalize_angle(bearing);
    if (d > kPi) {
        d -= kTwoPi;
    } else if (d < -kPi) {
        d += kTwoPi;
    }
    d = std::abs(d);
    if (d < kEndpointSnap) {
        return 0.0;
    }
    if (kPi - d < kEndpointSnap) {
        return kPi;
    }
    return d;
}

}  // namespace

double distance(const AgentPose& a, const AgentPose& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double effort_angle(const AgentPose& a, const AgentPose& b)
{
    return pair_features(a, b).effort_angle;
}

PairSample pair_features(const AgentPose& a, const AgentPose& b)
{
    PairSample s;
    s.id_a = a.agent_id;
    s.id_b = b.agent_id;
    s.distance = distance(a, b);
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    if (dx == 0.0 && dy == 0.0) {
        s.coincident = true;
        s.effort_angle = 0.0;
        return s;
    }
    const double off_a = heading_offset(a.body_theta, std::atan2(dy, dx));
    const double off_b = heading_offset(b.body_theta, std::atan2(-dy, -dx));
    s.effort_angle = std::min(off_a + off_b, kTwoPi);
    return s;
}

std::vector<PairSample> pairwise_deconstruct(const Frame& frame)
{
    validate_frame(frame);
    std::vector<const AgentPose*> agents;
    agents.reserve(frame.agents.size());
    for (const auto& a : frame.agents) {
        agents.push_back(&a);
    }
    std::sort(agents.begin(), agents.end(),
              [](const AgentPose* l, const AgentPose* r) { return l->agent_id < r->agent_id; });

    std::vector<PairSample> out;
    if (agents.size() < 2) {
        return out;
    }
    out.reserve(agents.size() * (agents.size() - 1) / 2);
    for (std::size_t i = 0; i < agents.size(); ++i) {
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            PairSample s = pair_features(*agents[i], *agents[j]);
            if (frame.truth) {
                const auto gi = frame.truth->group_of(agents[i]->agent_id);
                const auto gj = frame.truth->group_of(agents[j]->agent_id);
                s.label = (gi && gj && *gi == *gj) ? 1 : 0;
            }
            out.push_back(s);
        }
    }
    return out;
}

std::vector<PairSample> pairwise_deconstruct(const std::vector<Frame>& frames)
{
    std::vector<PairSample> out;
    for (const auto& f : frames) {
        auto part = pairwise_deconstruct(f);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace reform
