#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "reform/io.hpp"

namespace reform {

namespace fs = std::filesystem;

namespace {

struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> cells;
};

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

std::vector<CsvRow> read_csv(const fs::path& path)
{
    if (!fs::exists(path)) {
        throw ParseError("missing file " + path.string());
    }
    std::istringstream in(read_text_file(path));
    std::vector<CsvRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            continue;
        }
        rows.push_back({lineno, split_csv_line(line)});
    }
    return rows;
}

std::string where(const fs::path& path, const CsvRow& row)
{
    return path.filename().string() + ":" + std::to_string(row.line);
}

double to_double(const std::string& s, const std::string& ctx)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError(ctx + ": expected a number, got '" + s + "'");
    }
    return v;
}

std::int64_t to_int(const std::string& s, const std::string& ctx)
{
    std::int64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ParseError(ctx + ": expected an integer, got '" + s + "'");
    }
    return v;
}

void expect_header(const fs::path& path, const std::vector<CsvRow>& rows,
                   const std::vector<std::string>& header)
{
    if (rows.empty() || rows.front().cells != header) {
        std::string want;
        for (const auto& h : header) {
            want += (want.empty() ? "" : ",") + h;
        }
        throw ParseError(path.filename().string() + ": expected header '" + want + "'");
    }
}

// Drops singletons and validates the rest.
GroupSet without_singletons(GroupSet gs)
{
    std::erase_if(gs.groups, [](const std::vector<AgentId>& g) { return g.size() < 2; });
    return gs;
}

}  // namespace

GroupSet parse_group_annotation(std::string_view text)
{
    GroupSet gs;
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) {
            ++i;
        }
    };
    skip_space();
    while (i < text.size()) {
        if (text[i] != '{') {
            throw ParseError("group annotation: expected '{' at offset " + std::to_string(i));
        }
        ++i;
        const auto close = text.find('}', i);
        if (close == std::string_view::npos) {
            throw ParseError("group annotation: unterminated group");
        }
        std::vector<AgentId> members;
        std::string body(text.substr(i, close - i));
        std::istringstream parts(body);
        std::string tok;
        while (std::getline(parts, tok, ',')) {
            members.push_back(to_int(trim(tok), "group annotation"));
        }
        gs.groups.push_back(std::move(members));
        i = close + 1;
        skip_space();
        if (i < text.size() && text[i] == ',') {
            ++i;
            skip_space();
        }
    }
    return gs;
}

CanonicalDataset load_salsa(const fs::path& dir)
{
    const fs::path groups_path = dir / "fformationGT.csv";
    const fs::path geometry_dir = dir / "geometryGT";
    const auto group_rows = read_csv(groups_path);
    if (!fs::is_directory(geometry_dir)) {
        throw ParseError("missing directory " + geometry_dir.string());
    }

    std::map<AgentId, fs::path> people;
    for (const auto& entry : fs::directory_iterator(geometry_dir)) {
        if (entry.path().extension() != ".csv") {
            continue;
        }
        const auto id = to_int(entry.path().stem().string(), entry.path().string());
        people.emplace(id, entry.path());
    }
    if (people.empty()) {
        throw ParseError(geometry_dir.string() + ": no participant files");
    }

    std::vector<Frame> frames(group_rows.size());
    for (std::size_t r = 0; r < group_rows.size(); ++r) {
        const auto& row = group_rows[r];
        const std::string ctx = where(groups_path, row);
        frames[r].frame_id = static_cast<FrameId>(r);
        frames[r].timestamp = to_double(row.cells[0], ctx);
        GroupSet gs;
        for (std::size_t c = 1; c < row.cells.size(); ++c) {
            if (row.cells[c].empty()) {
                continue;
            }
            std::istringstream members(row.cells[c]);
            std::vector<AgentId> g;
            std::string tok;
            while (members >> tok) {
                g.push_back(to_int(tok, ctx));
            }
            gs.groups.push_back(std::move(g));
        }
        frames[r].truth = without_singletons(std::move(gs));
    }

    for (const auto& [id, path] : people) {
        const auto rows = read_csv(path);
        if (rows.size() != group_rows.size()) {
            throw ParseError(path.string() + ": " + std::to_string(rows.size()) +
                             " rows but fformationGT.csv has " + std::to_string(group_rows.size()));
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto& row = rows[r];
            const std::string ctx = where(path, row);
            if (row.cells.size() != 5) {
                throw ParseError(ctx + ": expected 5 columns timestamp,x,y,head_theta,body_theta");
            }
            const double ts = to_double(row.cells[0], ctx);
            if (std::abs(ts - *frames[r].timestamp) > 1e-6) {
                throw ParseError(ctx + ": timestamp does not match fformationGT.csv row");
            }
            frames[r].agents.push_back(make_pose(id, to_double(row.cells[1], ctx),
                                                 to_double(row.cells[2], ctx),
                                                 to_double(row.cells[4], ctx),
                                                 to_double(row.cells[3], ctx)));
        }
    }
    return make_dataset(std::move(frames));
}

CanonicalDataset load_babble(const fs::path& dir)
{
    const fs::path tracking_path = dir / "tracking.csv";
    const fs::path annotation_path = dir / "annotations.csv";
    const auto tracking = read_csv(tracking_path);
    const auto annotations = read_csv(annotation_path);
    expect_header(tracking_path, tracking,
                  {"frame", "timestamp", "participant", "x", "y", "body_theta", "head_theta"});
    expect_header(annotation_path, annotations, {"frame", "groups"});

    std::map<FrameId, Frame> frames;
    for (std::size_t r = 1; r < tracking.size(); ++r) {
        const auto& row = tracking[r];
        const std::string ctx = where(tracking_path, row);
        if (row.cells.size() != 7) {
            throw ParseError(ctx + ": expected 7 columns");
        }
        const FrameId fid = to_int(row.cells[0], ctx);
        Frame& f = frames[fid];
        f.frame_id = fid;
        f.timestamp = to_double(row.cells[1], ctx);
        std::optional<double> head;
        if (!row.cells[6].empty()) {
            head = to_double(row.cells[6], ctx);
        }
        f.agents.push_back(make_pose(to_int(row.cells[2], ctx), to_double(row.cells[3], ctx),
                                     to_double(row.cells[4], ctx), to_double(row.cells[5], ctx),
                                     head));
    }

    std::size_t annotated = 0;
    for (std::size_t r = 1; r < annotations.size(); ++r) {
        const auto& row = annotations[r];
        const std::string ctx = where(annotation_path, row);
        if (row.cells.size() != 2) {
            throw ParseError(ctx + ": expected 2 columns");
        }
        const FrameId fid = to_int(row.cells[0], ctx);
        auto it = frames.find(fid);
        if (it == frames.end()) {
            throw ParseError(ctx + ": frame " + std::to_string(fid) + " has no tracking rows");
        }
        if (it->second.truth) {
            throw ParseError(ctx + ": frame " + std::to_string(fid) + " annotated twice");
        }
        try {
            it->second.truth = without_singletons(parse_group_annotation(row.cells[1]));
        } catch (const ParseError& e) {
            throw ParseError(ctx + ": " + e.what());
        }
        ++annotated;
    }
    if (annotated != frames.size()) {
        throw ParseError(annotation_path.string() + ": " + std::to_string(annotated) +
                         " annotated frames but tracking.csv has " + std::to_string(frames.size()));
    }

    std::vector<Frame> out;
    out.reserve(frames.size());
    for (auto& [_, f] : frames) {
        out.push_back(std::move(f));
    }
    return make_dataset(std::move(out));
}

}  // namespace reform
