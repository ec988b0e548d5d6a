// Independent reference computations used by the unit and acceptance suites.
// Nothing here calls into the code paths it is used to check.
#ifndef REFORM_TESTS_ORACLES_HPP
#define REFORM_TESTS_ORACLES_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "reform/types.hpp"

namespace oracle {

using BoolMatrix = std::vector<std::vector<bool>>;

/// Counts unordered pairs by nested enumeration.
std::size_t count_pairs(std::size_t n);

/// True iff adjacency is transitive, i.e. positives form disjoint cliques.
bool is_disjoint_cliques(const BoolMatrix& m);

/// Every maximal clique of size >= 2, found by scanning all vertex subsets.
std::set<std::set<std::size_t>> maximal_cliques(const BoolMatrix& m);

/// Number of truth groups that appear verbatim (as sets) among detections.
std::size_t exact_matches(const std::vector<std::set<reform::AgentId>>& detected,
                          const std::vector<std::set<reform::AgentId>>& truth);

/// Central differences of f at w with step h.
std::array<double, 3> central_difference(const std::function<double(const std::array<double, 3>&)>& f,
                                         std::array<double, 3> w, double h);

/// Label of the closest training point (plain linear scan, Euclidean).
int nearest_neighbour_label(const std::vector<std::array<double, 2>>& points,
                            const std::vector<int>& labels, const std::array<double, 2>& query);

/// Mean distance to the centroid computed straight from coordinates.
double direct_tightness(const std::vector<std::array<double, 2>>& pts);

}  // namespace oracle

#endif
