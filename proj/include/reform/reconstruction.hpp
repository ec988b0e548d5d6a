#ifndef REFORM_RECONSTRUCTION_HPP
#define REFORM_RECONSTRUCTION_HPP

#include <set>
#include <vector>

#include "reform/classifiers.hpp"
#include "reform/types.hpp"

namespace reform {

enum class MergeMode {
    Intersection,  ///< emit (B_i ∩ B_j) ∪ {i, j}
    Union,         ///< emit B_i ∪ B_j
};

MergeMode parse_merge_mode(std::string_view name);

/**
 * Per-agent belief rows. Row i holds the agents that agent i is believed to
 * share a group with and always contains i itself. Rows need not be
 * mutually consistent; a relation matrix yields a symmetric table.
 */
struct BeliefTable {
    std::vector<AgentId> ids;
    std::vector<std::vector<bool>> rows;  // rows[i][j]: j ∈ B_i

    static BeliefTable from_matrix(const RelationMatrix& m);

    /// Builds a table from explicit belief sets; every id named in a set
    /// must appear in `beliefs` keys. Each row gains its own id.
    static BeliefTable from_sets(const std::vector<std::pair<AgentId, std::set<AgentId>>>& beliefs);
};

/// B_i as agent ids; throws std::out_of_range for a bad index.
std::set<AgentId> belief_set(const RelationMatrix& m, std::size_t i);

/**
 * Greedy Reconstruction.
 *
 * Repeatedly picks, among remaining pairs (i, j) that believe in each other,
 * the pair with the largest |B_i ∩ B_j| over remaining agents (ties to the
 * lexicographically smallest (i, j)), emits the merged group and removes its
 * members. Stops when fewer than two agents or no candidate pair remain.
 * Groups are returned in emission order with members sorted ascending.
 */
GroupSet greedy_reconstruct(const BeliefTable& beliefs, MergeMode mode = MergeMode::Intersection);
GroupSet greedy_reconstruct(const RelationMatrix& m, MergeMode mode = MergeMode::Intersection);

/// Relation matrix of the frame followed by greedy reconstruction.
GroupSet detect(const TrainedModel& model, const Frame& frame,
                MergeMode mode = MergeMode::Intersection);

}  // namespace reform

#endif  // REFORM_RECONSTRUCTION_HPP
