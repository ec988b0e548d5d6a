#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "reform/reconstruction.hpp"

namespace reform {

MergeMode parse_merge_mode(std::string_view name)
{
    if (name == "intersection") {
        return MergeMode::Intersection;
    }
    if (name == "union") {
        return MergeMode::Union;
    }
    throw Error("unknown merge mode '" + std::string(name) + "'");
}

BeliefTable BeliefTable::from_matrix(const RelationMatrix& m)
{
    BeliefTable t;
    t.ids = m.ids();
    const std::size_t n = m.size();
    t.rows.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            t.rows[i][j] = m.at(i, j);
        }
    }
    return t;
}

BeliefTable BeliefTable::from_sets(
    const std::vector<std::pair<AgentId, std::set<AgentId>>>& beliefs)
{
    BeliefTable t;
    std::map<AgentId, std::size_t> index;
    for (const auto& [id, _] : beliefs) {
        if (!index.emplace(id, t.ids.size()).second) {
            throw ValidationError("belief table: duplicate agent " + std::to_string(id));
        }
        t.ids.push_back(id);
    }
    const std::size_t n = t.ids.size();
    t.rows.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        t.rows[i][i] = true;
        for (AgentId other : beliefs[i].second) {
            auto it = index.find(other);
            if (it == index.end()) {
                throw ValidationError("belief table: unknown agent " + std::to_string(other));
            }
            t.rows[i][it->second] = true;
        }
    }
    return t;
}

std::set<AgentId> belief_set(const RelationMatrix& m, std::size_t i)
{
    if (i >= m.size()) {
        throw std::out_of_range("belief_set: index " + std::to_string(i) + " out of range");
    }
    std::set<AgentId> out;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m.at(i, j)) {
            out.insert(m.ids()[j]);
        }
    }
    return out;
}

GroupSet greedy_reconstruct(const BeliefTable& beliefs, MergeMode mode)
{
    const std::size_t n = beliefs.ids.size();
    std::vector<bool> remaining(n, true);
    std::size_t left = n;
    GroupSet out;

    const auto& b = beliefs.rows;
    while (left >= 2) {
        bool found = false;
        std::size_t best_i = 0;
        std::size_t best_j = 0;
        std::size_t best_agreement = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!remaining[i]) {
                continue;
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!remaining[j] || !b[i][j] || !b[j][i]) {
                    continue;
                }
                std::size_t agreement = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (remaining[k] && b[i][k] && b[j][k]) {
                        ++agreement;
                    }
                }
                // Strict comparison keeps the lexicographically first pair.
                if (!found || agreement > best_agreement) {
                    found = true;
                    best_i = i;
                    best_j = j;
                    best_agreement = agreement;
                }
            }
        }
        if (!found) {
            break;
        }

        std::vector<AgentId> group;
        for (std::size_t k = 0; k < n; ++k) {
            if (!remaining[k]) {
                continue;
            }
            const bool member = k == best_i || k == best_j ||
                                (mode == MergeMode::Intersection ? (b[best_i][k] && b[best_j][k])
                                                                 : (b[best_i][k] || b[best_j][k]));
            if (member) {
                group.push_back(beliefs.ids[k]);
                remaining[k] = false;
                --left;
            }
        }
        std::sort(group.begin(), group.end());
        out.groups.push_back(std::move(group));
    }
    return out;
}

GroupSet greedy_reconstruct(const RelationMatrix& m, MergeMode mode)
{
    return greedy_reconstruct(BeliefTable::from_matrix(m), mode);
}

GroupSet detect(const TrainedModel& model, const Frame& frame, MergeMode mode)
{
    return greedy_reconstruct(build_relation_matrix(model, frame), mode);
}

}  // namespace reform
