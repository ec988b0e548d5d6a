#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "reform/io.hpp"

namespace reform {

using nlohmann::json;

namespace {

std::size_t line_of(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

const json& field(const json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object()) {
        throw ParseError(where + ": expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(where + "." + key + ": missing field");
    }
    return *it;
}

double number(const json& v, const std::string& where)
{
    if (!v.is_number()) {
        throw ParseError(where + ": expected a number");
    }
    return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& where)
{
    if (!v.is_number_integer()) {
        throw ParseError(where + ": expected an integer");
    }
    return v.get<std::int64_t>();
}

const json& array(const json& v, const std::string& where)
{
    if (!v.is_array()) {
        throw ParseError(where + ": expected an array");
    }
    return v;
}

Frame parse_frame(const json& jf, const std::string& where)
{
    Frame f;
    f.frame_id = integer(field(jf, "frame_id", where), where + ".frame_id");
    if (auto it = jf.find("timestamp"); it != jf.end() && !it->is_null()) {
        f.timestamp = number(*it, where + ".timestamp");
    }
    const auto& agents = array(field(jf, "agents", where), where + ".agents");
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string aw = where + ".agents[" + std::to_string(i) + "]";
        const auto& ja = agents[i];
        std::optional<double> head;
        if (auto it = ja.find("head_theta"); ja.is_object() && it != ja.end() && !it->is_null()) {
            head = number(*it, aw + ".head_theta");
        }
        try {
            f.agents.push_back(make_pose(integer(field(ja, "id", aw), aw + ".id"),
                                         number(field(ja, "x", aw), aw + ".x"),
                                         number(field(ja, "y", aw), aw + ".y"),
                                         number(field(ja, "body_theta", aw), aw + ".body_theta"),
                                         head));
        } catch (const ValidationError& e) {
            throw ValidationError(aw + ": " + e.what());
        }
    }
    if (auto it = jf.find("groups"); it != jf.end() && !it->is_null()) {
        GroupSet gs;
        const auto& groups = array(*it, where + ".groups");
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const std::string gw = where + ".groups[" + std::to_string(g) + "]";
            std::vector<AgentId> members;
            for (const auto& m : array(groups[g], gw)) {
                members.push_back(integer(m, gw));
            }
            gs.groups.push_back(std::move(members));
        }
        f.truth = std::move(gs);
    }
    return f;
}

}  // namespace

CanonicalDataset make_dataset(std::vector<Frame> frames)
{
    std::stable_sort(frames.begin(), frames.end(),
                     [](const Frame& a, const Frame& b) { return a.frame_id < b.frame_id; });
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (i > 0 && frames[i].frame_id == frames[i - 1].frame_id) {
            throw ValidationError("duplicate frame id " + std::to_string(frames[i].frame_id));
        }
        validate_frame(frames[i]);
    }
    CanonicalDataset ds;
    ds.frames = std::move(frames);
    return ds;
}

CanonicalDataset parse_canonical(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    const int version = static_cast<int>(integer(field(doc, "schema_version", "$"), "$.schema_version"));
    if (version != kSchemaVersion) {
        throw ParseError("unsupported schema_version " + std::to_string(version));
    }
    const auto& jframes = array(field(doc, "frames", "$"), "$.frames");
    std::vector<Frame> frames;
    frames.reserve(jframes.size());
    for (std::size_t i = 0; i < jframes.size(); ++i) {
        frames.push_back(parse_frame(jframes[i], "$.frames[" + std::to_string(i) + "]"));
    }
    return make_dataset(std::move(frames));
}

std::string write_canonical(const CanonicalDataset& dataset)
{
    json frames = json::array();
    for (const auto& f : dataset.frames) {
        json jf;
        jf["frame_id"] = f.frame_id;
        if (f.timestamp) {
            jf["timestamp"] = *f.timestamp;
        }
        json agents = json::array();
        for (const auto& a : f.agents) {
            json ja = {{"id", a.agent_id}, {"x", a.x}, {"y", a.y}, {"body_theta", a.body_theta}};
            if (a.head_theta) {
                ja["head_theta"] = *a.head_theta;
            }
            agents.push_back(std::move(ja));
        }
        jf["agents"] = std::move(agents);
        if (f.truth) {
            jf["groups"] = f.truth->groups;
        }
        frames.push_back(std::move(jf));
    }
    json doc = {{"schema_version", dataset.schema_version}, {"frames", std::move(frames)}};
    return doc.dump(1);
}

CanonicalDataset load_canonical(const std::filesystem::path& path)
{
    const std::string text = read_text_file(path);
    try {
        return parse_canonical(text);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void save_canonical(const CanonicalDataset& dataset, const std::filesystem::path& path)
{
    write_text_file(path, write_canonical(dataset) + "\n");
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw Error("write failed for " + path.string());
    }
}

CanonicalDataset load_dataset(const std::filesystem::path& path, std::string_view format)
{
    if (format == "canonical") {
        return load_canonical(path);
    }
    if (format == "salsa") {
        return load_salsa(path);
    }
    if (format == "babble") {
        return load_babble(path);
    }
    throw Error("unknown dataset format '" + std::string(format) + "'");
}

}  // namespace reform
