#pragma once
// Persistence and rendering: tiling JSON, SVG, CSV, and the plain-text run configuration.

#include "rph/gpsp.hpp"
#include "rph/tiling.hpp"
#include "rph/window.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rph {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

class FormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits so that emitted JSON is stable and free of noise digits.
inline double round_sig(double x, int digits = 12) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

inline std::string format_sig(double x, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

// --- files ----------------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

// --- tiling JSON ------------------------------------------------------------------------------

inline json index_json(const Index4& p) { return json::array({p[0], p[1], p[2], p[3]}); }

inline Index4 index_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw FormatError("vertex must be an array of 4 integers");
    Index4 p;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!j[i].is_number_integer()) throw FormatError("vertex must be an array of 4 integers");
        p.n[i] = j[i].get<std::int64_t>();
    }
    return p;
}

inline FaceKind face_kind_from_name(const std::string& s) {
    if (s == "R") return FaceKind::R;
    if (s == "P") return FaceKind::P;
    if (s == "H") return FaceKind::H;
    if (s == "unknown") return FaceKind::Unknown;
    throw FormatError("unknown face kind '" + s + "'");
}

inline json tiling_to_json(const Tiling& t) {
    std::map<Index4, std::size_t> index;
    json verts = json::array();
    for (std::size_t i = 0; i < t.vertices.size(); ++i) {
        index.emplace(t.vertices[i], i);
        verts.push_back(index_json(t.vertices[i]));
    }
    auto at = [&](const Index4& p) {
        auto it = index.find(p);
        if (it == index.end()) throw FormatError("tiling references a vertex outside its vertex list");
        return it->second;
    };
    json edges = json::array();
    for (const auto& e : t.edges) edges.push_back(json::array({at(e.a), at(e.b)}));
    json faces = json::array();
    for (const auto& f : t.faces) {
        json cyc = json::array();
        for (const auto& p : f.cycle) cyc.push_back(at(p));
        faces.push_back(json{{"kind", face_kind_name(f.kind)},
                             {"vertices", std::move(cyc)},
                             {"orientation", f.orientation},
                             {"boundary", f.boundary}});
    }
    json region = json::array();
    for (const auto& p : t.region) region.push_back(index_json(p));
    return json{{"schema_version", kSchemaVersion}, {"depth", t.depth},       {"vertices", std::move(verts)},
                {"edges", std::move(edges)},        {"faces", std::move(faces)}, {"region", std::move(region)}};
}

inline Tiling tiling_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("schema_version")) throw FormatError("missing schema_version");
        if (j.at("schema_version").get<int>() != kSchemaVersion)
            throw FormatError("unsupported schema_version " + j.at("schema_version").dump());
        Tiling t;
        t.depth = j.value("depth", 0);
        for (const auto& v : j.at("vertices")) t.vertices.push_back(index_from_json(v));
        auto vertex = [&](const json& i) -> const Index4& {
            const auto k = i.get<std::size_t>();
            if (k >= t.vertices.size()) throw FormatError("vertex index out of range");
            return t.vertices[k];
        };
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw FormatError("edge must be a pair of indices");
            t.edges.push_back({vertex(e[0]), vertex(e[1])});
        }
        for (const auto& f : j.at("faces")) {
            Face face;
            face.kind = face_kind_from_name(f.at("kind").get<std::string>());
            for (const auto& i : f.at("vertices")) face.cycle.push_back(vertex(i));
            face.orientation = f.value("orientation", 0);
            face.boundary = f.value("boundary", false);
            t.faces.push_back(std::move(face));
        }
        for (const auto& p : j.at("region")) t.region.push_back(index_from_json(p));
        return t;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed tiling JSON: ") + e.what());
    }
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

inline Tiling parse_tiling(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("not JSON: ") + e.what());
    }
    return tiling_from_json(j);
}

inline Tiling load_tiling(const std::string& path) { return parse_tiling(read_file(path)); }

// --- SVG ------------------------------------------------------------------------------------

inline const char* face_class(FaceKind k) {
    switch (k) {
        case FaceKind::R: return "r";
        case FaceKind::P: return "p";
        case FaceKind::H: return "h";
        default: return "u";
    }
}

namespace detail {

inline std::string svg_header(const Bounds& b, double pad, double scale) {
    std::ostringstream os;
    const double w = (b.x1 - b.x0 + 2 * pad) * scale, h = (b.y1 - b.y0 + 2 * pad) * scale;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_sig(w, 8) << "\" height=\""
       << format_sig(h, 8) << "\" viewBox=\"" << format_sig(b.x0 - pad, 8) << ' ' << format_sig(-b.y1 - pad, 8) << ' '
       << format_sig(b.x1 - b.x0 + 2 * pad, 8) << ' ' << format_sig(b.y1 - b.y0 + 2 * pad, 8) << "\">\n";
    return os.str();
}

}  // namespace detail

/// One polygon per face, y pointing up. Classes r, p, h (u for incomplete faces).
inline std::string tiling_svg(const Tiling& t, double scale = 20.0) {
    std::vector<Vec2> pts;
    for (const auto& v : t.vertices) pts.push_back(par_point(v));
    const auto b = pts.empty() ? detail::Bounds{0, 0, 1, 1} : detail::bounds_of(pts);
    std::ostringstream os;
    os << detail::svg_header(b, 0.5, scale);
    os << "<style>polygon{stroke:#222;stroke-width:0.03;stroke-linejoin:round}"
          ".r{fill:#e4a33b}.p{fill:#3b7be4}.h{fill:#5fb65a}.u{fill:#ccc}</style>\n";
    for (const auto& f : t.faces) {
        os << "<polygon class=\"" << face_class(f.kind) << "\" points=\"";
        for (std::size_t i = 0; i < f.cycle.size(); ++i) {
            const Vec2 p = par_point(f.cycle[i]);
            os << (i ? " " : "") << format_sig(p.x, 8) << ',' << format_sig(0.0 - p.y, 8);
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

/// Perpendicular cloud as dots.
inline std::string cloud_svg(const PerpCloud& c, double scale = 200.0, double radius = 0.006) {
    const auto b = c.points.empty() ? detail::Bounds{-1, -1, 1, 1} : detail::bounds_of(c.points);
    std::ostringstream os;
    os << detail::svg_header(b, 0.05, scale);
    os << "<style>circle{fill:#222}</style>\n";
    for (const auto& p : c.points)
        os << "<circle cx=\"" << format_sig(p.x, 8) << "\" cy=\"" << format_sig(0.0 - p.y, 8) << "\" r=\"" << radius
           << "\"/>\n";
    os << "</svg>\n";
    return os.str();
}

// --- CSV ------------------------------------------------------------------------------------

/// x,y per line, no header.
inline std::string points_csv(const std::vector<Vec2>& pts) {
    std::string out;
    for (const auto& p : pts) out += format_sig(p.x) + ',' + format_sig(p.y) + '\n';
    return out;
}

// --- run configuration ----------------------------------------------------------------------

struct RunConfig {
    std::string seed_patch = "R";  // R, P or H single-tile seed
    Schedule schedule{WheelDiagram::uniform(Chirality::L)};
    int depth = 4;
    std::uint64_t master_seed = 0;
    std::string out;
    double grid_step = 0.02;
    double clip = 0.8;
};

inline constexpr int kMaxDepth = 8;

inline Tiling seed_tiling(const std::string& name) {
    if (name == "R") return seed_rhombus();
    if (name == "P") return seed_pentagon();
    if (name == "H") return seed_hexagon();
    throw ConfigError("seed_patch must be R, P or H, got '" + name + "'");
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& s, const std::string& what) {
    double v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end || !std::isfinite(v)) throw ConfigError(what + ": not a number: '" + s + "'");
    return v;
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end) throw ConfigError(what + ": not an unsigned integer: '" + s + "'");
    return v;
}

}  // namespace detail

/// A schedule is a whitespace or comma separated list of 10-letter wheel strings over {L,R}
/// and RANDOM(pl,pr,pm,pm') entries. Random entries take their stream id from their position.
inline Schedule parse_schedule(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth < 0) throw ConfigError("schedule: unbalanced ')'");
        if (depth == 0 && (ch == ',' || ch == ' ' || ch == '\t' || ch == ';')) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else if (ch != ' ' && ch != '\t') {
            cur += ch;
        }
    }
    if (depth != 0) throw ConfigError("schedule: unbalanced '('");
    if (!cur.empty()) tokens.push_back(std::move(cur));
    if (tokens.empty()) throw ConfigError("schedule must not be empty");

    Schedule s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& tok = tokens[i];
        if (tok.rfind("RANDOM", 0) == 0) {
            RandomRule rr;
            rr.stream = i;
            if (tok != "RANDOM") {
                if (tok.size() < 8 || tok[6] != '(' || tok.back() != ')')
                    throw ConfigError("schedule: expected RANDOM(pl,pr,pm,pm'), got '" + tok + "'");
                std::vector<std::string> parts;
                std::stringstream ss(tok.substr(7, tok.size() - 8));
                for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
                if (parts.size() != 4) throw ConfigError("schedule: RANDOM takes four weights");
                double total = 0;
                for (std::size_t k = 0; k < 4; ++k) {
                    rr.weights[k] = detail::parse_double(parts[k], "RANDOM weight");
                    if (rr.weights[k] < 0) throw ConfigError("schedule: RANDOM weights must be nonnegative");
                    total += rr.weights[k];
                }
                if (!(total > 0)) throw ConfigError("schedule: RANDOM weights sum to zero");
            }
            s.emplace_back(rr);
        } else {
            try {
                s.emplace_back(WheelDiagram::parse(tok));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("schedule: ") + e.what());
            }
        }
    }
    return s;
}

inline std::string schedule_string(const Schedule& s) {
    std::string out;
    for (const auto& e : s) {
        if (!out.empty()) out += ' ';
        out += describe(e);
    }
    return out;
}

/// key = value lines; '#' starts a comment. Unknown keys are errors.
inline RunConfig parse_config(std::string_view text) {
    RunConfig c;
    std::istringstream in{std::string(text)};
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const auto where = "line " + std::to_string(lineno);
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const auto key = detail::trim(std::string_view(line).substr(0, eq));
        const auto val = detail::trim(std::string_view(line).substr(eq + 1));
        try {
            if (key == "seed_patch") {
                seed_tiling(val);
                c.seed_patch = val;
            } else if (key == "schedule") {
                c.schedule = parse_schedule(val);
            } else if (key == "depth") {
                const auto d = detail::parse_u64(val, "depth");
                if (d > static_cast<std::uint64_t>(kMaxDepth))
                    throw ConfigError("depth must be in [0, " + std::to_string(kMaxDepth) + "]");
                c.depth = static_cast<int>(d);
            } else if (key == "master_seed") {
                c.master_seed = detail::parse_u64(val, "master_seed");
            } else if (key == "out") {
                c.out = val;
            } else if (key == "grid_step") {
                c.grid_step = detail::parse_double(val, "grid_step");
                if (c.grid_step < 0.005 || c.grid_step > 0.1) throw ConfigError("grid_step must be in [0.005, 0.1]");
            } else if (key == "clip") {
                c.clip = detail::parse_double(val, "clip");
                if (!(c.clip > 0.0 && c.clip <= 1.0)) throw ConfigError("clip must be in (0, 1]");
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    return c;
}

inline RunConfig load_config(const std::string& path) {
    try {
        return parse_config(read_file(path));
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
}

inline json config_json(const RunConfig& c) {
    return json{{"seed_patch", c.seed_patch}, {"schedule", schedule_string(c.schedule)},
                {"depth", c.depth},           {"master_seed", c.master_seed},
                {"grid_step", round_sig(c.grid_step)}, {"clip", round_sig(c.clip)}};
}

}  // namespace rph
