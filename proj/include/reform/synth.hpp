#ifndef REFORM_SYNTH_HPP
#define REFORM_SYNTH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "reform/io.hpp"

namespace reform {

/// Parameters of the labeled-scene generator. Lengths in meters, angles in
/// degrees. Group radii default to the tightness means observed for
/// conversational groups of each size.
struct SynthConfig {
    int n_frames = 100;
    int min_groups = 1;
    int max_groups = 3;
    std::map<int, double> group_size_weights{{2, 0.30}, {3, 0.25}, {4, 0.20},
                                             {5, 0.12}, {6, 0.08}, {7, 0.05}};
    std::map<int, double> tightness_mean_per_size{{2, 0.78}, {3, 0.80}, {4, 0.83},
                                                  {5, 0.87}, {6, 0.90}, {7, 0.95}};
    double radial_jitter = 0.05;
    double angular_jitter = 8.0;
    double heading_noise = 15.0;
    int n_distractors = 3;
    double area_width = 12.0;
    double area_height = 12.0;
    double distractor_clearance = 2.0;  // from any group center
    double group_clearance = 1.0;       // extra gap between group circles
    int max_retries = 100;
    double frame_interval = 0.5;  // s
    std::uint64_t seed = 1;

    /// Throws ValidationError on negative noise, empty area, etc.
    void validate() const;
};

/// Reads a config from the JSON dialect of the canonical dataset; missing
/// keys keep their defaults, unknown keys are rejected.
SynthConfig parse_synth_config(std::string_view text);
std::string write_synth_config(const SynthConfig& config);

/**
 * Deterministic labeled scenes. Each frame holds circular groups, members
 * spread evenly around the center (plus angular and radial jitter) and
 * facing it (plus heading noise), and distractors with random headings
 * placed at least distractor_clearance from every group center. Truth
 * groups are recorded exactly as constructed. Throws Error when a frame
 * cannot be packed within max_retries attempts.
 */
CanonicalDataset generate_synthetic(const SynthConfig& config);

}  // namespace reform

#endif  // REFORM_SYNTH_HPP
