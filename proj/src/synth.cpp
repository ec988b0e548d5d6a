#include <cmath>
#include <random>

#include <json.hpp>

#include "reform/synth.hpp"

namespace reform {

using nlohmann::json;

namespace {

struct PlacedGroup {
    double cx;
    double cy;
    double radius;
};

double gaussian(std::mt19937_64& rng, double sigma)
{
    if (sigma == 0.0) {
        return 0.0;
    }
    return std::normal_distribution<double>(0.0, sigma)(rng);
}

std::map<int, double> int_keyed(const json& j, const char* key)
{
    std::map<int, double> out;
    for (const auto& [k, v] : j.items()) {
        std::size_t used = 0;
        int size = 0;
        try {
            size = std::stoi(k, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != k.size()) {
            throw ParseError(std::string(key) + ": key '" + k + "' is not an integer");
        }
        out[size] = v.get<double>();
    }
    return out;
}

json string_keyed(const std::map<int, double>& m)
{
    json j = json::object();
    for (const auto& [k, v] : m) {
        j[std::to_string(k)] = v;
    }
    return j;
}

std::optional<Frame> try_frame(const SynthConfig& c, std::mt19937_64& rng, FrameId id,
                               const std::vector<int>& sizes)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<PlacedGroup> placed;
    for (int size : sizes) {
        const double radius = c.tightness_mean_per_size.at(size);
        const double margin = radius + 0.5;
        if (c.area_width <= 2 * margin || c.area_height <= 2 * margin) {
            return std::nullopt;
        }
        const double cx = margin + unit(rng) * (c.area_width - 2 * margin);
        const double cy = margin + unit(rng) * (c.area_height - 2 * margin);
        for (const auto& g : placed) {
            if (std::hypot(cx - g.cx, cy - g.cy) < radius + g.radius + c.group_clearance) {
                return std::nullopt;
            }
        }
        placed.push_back({cx, cy, radius});
    }

    Frame f;
    f.frame_id = id;
    f.timestamp = static_cast<double>(id) * c.frame_interval;
    f.truth = GroupSet{};
    AgentId next = 1;
    for (std::size_t g = 0; g < sizes.size(); ++g) {
        const int size = sizes[g];
        const auto& pg = placed[g];
        const double base = unit(rng) * kTwoPi;
        std::vector<AgentId> members;
        for (int k = 0; k < size; ++k) {
            const double angle = base + kTwoPi * k / size + deg_to_rad(gaussian(rng, c.angular_jitter));
            const double r = std::max(0.1, pg.radius + gaussian(rng, c.radial_jitter));
            const double x = pg.cx + r * std::cos(angle);
            const double y = pg.cy + r * std::sin(angle);
            const double heading =
                std::atan2(pg.cy - y, pg.cx - x) + deg_to_rad(gaussian(rng, c.heading_noise));
            f.agents.push_back(make_pose(next, x, y, heading));
            members.push_back(next++);
        }
        f.truth->groups.push_back(std::move(members));
    }

    for (int d = 0; d < c.n_distractors; ++d) {
        bool ok = false;
        for (int attempt = 0; attempt < c.max_retries && !ok; ++attempt) {
            const double x = unit(rng) * c.area_width;
            const double y = unit(rng) * c.area_height;
            ok = true;
            for (const auto& g : placed) {
                if (std::hypot(x - g.cx, y - g.cy) < c.distractor_clearance) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                f.agents.push_back(make_pose(next++, x, y, unit(rng) * kTwoPi));
            }
        }
        if (!ok) {
            return std::nullopt;
        }
    }
    return f;
}

}  // namespace

void SynthConfig::validate() const
{
    if (n_frames < 0 || min_groups < 0 || max_groups < min_groups || n_distractors < 0) {
        throw ValidationError("synth config: counts must be non-negative and min <= max groups");
    }
    if (radial_jitter < 0 || angular_jitter < 0 || heading_noise < 0) {
        throw ValidationError("synth config: noise parameters must be >= 0");
    }
    if (!(area_width > 0) || !(area_height > 0)) {
        throw ValidationError("synth config: area must be positive");
    }
    if (distractor_clearance < 0 || group_clearance < 0 || max_retries < 1 || frame_interval < 0) {
        throw ValidationError("synth config: invalid clearance, retry or interval setting");
    }
    double total = 0.0;
    for (const auto& [size, w] : group_size_weights) {
        if (size < 2 || w < 0) {
            throw ValidationError("synth config: group sizes must be >= 2 with weight >= 0");
        }
        if (w > 0 && !tightness_mean_per_size.contains(size)) {
            throw ValidationError("synth config: no tightness for group size " + std::to_string(size));
        }
        total += w;
    }
    if (max_groups > 0 && !(total > 0)) {
        throw ValidationError("synth config: group size weights sum to zero");
    }
    for (const auto& [size, r] : tightness_mean_per_size) {
        if (!(r > 0)) {
            throw ValidationError("synth config: tightness for size " + std::to_string(size) +
                                  " must be positive");
        }
    }
}

SynthConfig parse_synth_config(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("synth config: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("synth config: expected an object");
    }
    SynthConfig c;
    try {
        for (const auto& [key, v] : doc.items()) {
            if (key == "n_frames") c.n_frames = v.get<int>();
            else if (key == "min_groups") c.min_groups = v.get<int>();
            else if (key == "max_groups") c.max_groups = v.get<int>();
            else if (key == "group_size_weights") c.group_size_weights = int_keyed(v, "group_size_weights");
            else if (key == "tightness_mean_per_size") c.tightness_mean_per_size = int_keyed(v, "tightness_mean_per_size");
            else if (key == "radial_jitter") c.radial_jitter = v.get<double>();
            else if (key == "angular_jitter") c.angular_jitter = v.get<double>();
            else if (key == "heading_noise") c.heading_noise = v.get<double>();
            else if (key == "n_distractors") c.n_distractors = v.get<int>();
            else if (key == "area_width") c.area_width = v.get<double>();
            else if (key == "area_height") c.area_height = v.get<double>();
            else if (key == "distractor_clearance") c.distractor_clearance = v.get<double>();
            else if (key == "group_clearance") c.group_clearance = v.get<double>();
            else if (key == "max_retries") c.max_retries = v.get<int>();
            else if (key == "frame_interval") c.frame_interval = v.get<double>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else throw ParseError("synth config: unknown key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("synth config: ") + e.what());
    }
    c.validate();
    return c;
}

std::string write_synth_config(const SynthConfig& c)
{
    json doc = {
        {"n_frames", c.n_frames},
        {"min_groups", c.min_groups},
        {"max_groups", c.max_groups},
        {"group_size_weights", string_keyed(c.group_size_weights)},
        {"tightness_mean_per_size", string_keyed(c.tightness_mean_per_size)},
        {"radial_jitter", c.radial_jitter},
        {"angular_jitter", c.angular_jitter},
        {"heading_noise", c.heading_noise},
        {"n_distractors", c.n_distractors},
        {"area_width", c.area_width},
        {"area_height", c.area_height},
        {"distractor_clearance", c.distractor_clearance},
        {"group_clearance", c.group_clearance},
        {"max_retries", c.max_retries},
        {"frame_interval", c.frame_interval},
        {"seed", c.seed},
    };
    return doc.dump(2);
}

CanonicalDataset generate_synthetic(const SynthConfig& config)
{
    config.validate();
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32)};
    std::mt19937_64 rng(seq);

    std::vector<int> size_values;
    std::vector<double> size_weights;
    for (const auto& [size, w] : config.group_size_weights) {
        size_values.push_back(size);
        size_weights.push_back(w);
    }

    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(config.n_frames));
    for (int i = 0; i < config.n_frames; ++i) {
        const int n_groups =
            std::uniform_int_distribution<int>(config.min_groups, config.max_groups)(rng);
        std::vector<int> sizes;
        if (n_groups > 0) {
            std::discrete_distribution<std::size_t> pick(size_weights.begin(), size_weights.end());
            for (int g = 0; g < n_groups; ++g) {
                sizes.push_back(size_values[pick(rng)]);
            }
        }
        std::optional<Frame> frame;
        for (int attempt = 0; attempt < config.max_retries && !frame; ++attempt) {
            frame = try_frame(config, rng, i, sizes);
        }
        if (!frame) {
            throw Error("synthetic generator: frame " + std::to_string(i) +
                        " could not be packed in " + std::to_string(config.max_retries) +
                        " attempts; enlarge the area or reduce groups");
        }
        frames.push_back(std::move(*frame));
    }
    return make_dataset(std::move(frames));
}

}  // namespace reform
