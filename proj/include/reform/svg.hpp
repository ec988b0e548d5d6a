#ifndef REFORM_SVG_HPP
#define REFORM_SVG_HPP

#include <string>
#include <vector>

#include "reform/characterization.hpp"
#include "reform/types.hpp"

namespace reform {

/// Convex hull (counterclockwise, no repeated endpoint) of a point set.
std::vector<Point2> convex_hull(std::vector<Point2> points);

/**
 * Top-down scene drawing. Each agent is an oriented wedge
 * (`<path class="agent">`) pointing along its body heading; each group gets
 * a convex-hull outline (`<path class="hull">`) and a centroid marker
 * (`<circle class="centroid">`). Axes are always drawn.
 */
std::string render_frame_svg(const Frame& frame, const GroupSet& groups);

/// Bar chart of mean tightness and mean symmetry per group size.
std::string render_characterization_svg(const std::vector<SizeStats>& stats);

}  // namespace reform

#endif  // REFORM_SVG_HPP
