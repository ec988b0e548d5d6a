#ifndef REFORM_IO_HPP
#define REFORM_IO_HPP

/**
 * @file io.hpp
 * @brief Dataset ingestion and the canonical interchange document.
 *
 * Canonical document (UTF-8 JSON):
 *
 *     {"schema_version": 1,
 *      "frames": [{"frame_id": 0, "timestamp": 0.5,
 *                  "agents": [{"id": 1, "x": 0.0, "y": 0.0,
 *                              "body_theta": 1.57, "head_theta": 1.6}],
 *                  "groups": [[1, 2]]}]}
 *
 * `timestamp`, `head_theta` and `groups` are optional. A frame without
 * `groups` carries no truth; an empty array means no F-formation.
 */

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "reform/types.hpp"

namespace reform {

inline constexpr int kSchemaVersion = 1;

struct CanonicalDataset {
    int schema_version = kSchemaVersion;
    std::vector<Frame> frames;  // ascending frame_id

    bool operator==(const CanonicalDataset&) const = default;
};

/// Sorts frames by id and validates each; rejects duplicate frame ids.
CanonicalDataset make_dataset(std::vector<Frame> frames);

CanonicalDataset parse_canonical(std::string_view text);
std::string write_canonical(const CanonicalDataset& dataset);

CanonicalDataset load_canonical(const std::filesystem::path& path);
void save_canonical(const CanonicalDataset& dataset, const std::filesystem::path& path);

/**
 * SALSA-style directory:
 *
 *   geometryGT/<id>.csv   one file per participant, one row per annotated
 *                         timestamp: timestamp,x,y,head_theta,body_theta
 *   fformationGT.csv      one row per timestamp: timestamp,group,group,...
 *                         where each group is space-separated ids
 *
 * Positions in meters, angles in radians (normalized on load). Singleton
 * groups are dropped. Every geometry file must have exactly as many rows as
 * the grouping file, with matching timestamps.
 */
CanonicalDataset load_salsa(const std::filesystem::path& dir);

/**
 * Babble-style directory:
 *
 *   tracking.csv     header frame,timestamp,participant,x,y,body_theta,head_theta
 *   annotations.csv  header frame,groups ; groups like "{2,3,5},{1,4}" or empty
 *
 * Positions in meters, angles in radians. The frame sets of both files
 * must coincide.
 */
CanonicalDataset load_babble(const std::filesystem::path& dir);

/// Parses membership notation "{2,3,5},{1,4}"; blank text is an empty set.
GroupSet parse_group_annotation(std::string_view text);

/// Reads a canonical, SALSA or Babble source by format name.
CanonicalDataset load_dataset(const std::filesystem::path& path, std::string_view format);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace reform

#endif  // REFORM_IO_HPP
