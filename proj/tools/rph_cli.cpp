// rph: generate, analyze and render RPH tilings.
//
// Exit codes: 0 success, 1 malformed configuration or arguments, 2 validation failure
// (including unreadable or invalid tiling files).

#include "rph/rph.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace rph;

namespace {

constexpr int kOk = 0;
constexpr int kBadConfig = 1;
constexpr int kInvalid = 2;

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

// A file that fails to parse or validate is a validation failure.
Tiling load_valid(const std::string& path) {
    Tiling t = load_tiling(path);
    if (auto rep = validate(t); !rep) throw StructuralFault("invalid tiling: " + rep.message, rep.location);
    return t;
}

json step_json(const StepLog& s) {
    return json{{"iteration", s.iteration}, {"rule", s.rule},       {"stream", s.stream},
                {"rhombi", s.rhombi},       {"candidates", s.candidates}, {"designated", s.designated},
                {"removed", s.removed},     {"vertices", s.vertices}};
}

struct GenerateArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> depth;
    std::optional<std::string> schedule;
    std::string out;
};

int cmd_generate(const GenerateArgs& a) {
    RunConfig cfg = a.config.empty() ? RunConfig{} : load_config(a.config);
    if (a.seed) cfg.master_seed = *a.seed;
    if (a.depth) {
        if (*a.depth < 0 || *a.depth > kMaxDepth) throw ConfigError("--depth out of range");
        cfg.depth = *a.depth;
    }
    if (a.schedule) cfg.schedule = parse_schedule(*a.schedule);
    if (!a.out.empty()) cfg.out = a.out;

    const auto res = run_sequence(seed_tiling(cfg.seed_patch), cfg.schedule, cfg.depth, cfg.master_seed);
    json doc = tiling_to_json(res.tiling);
    json steps = json::array();
    for (const auto& s : res.log) steps.push_back(step_json(s));
    doc["provenance"] = json{{"config", config_json(cfg)}, {"steps", std::move(steps)}};
    emit(cfg.out, dump_json(doc));
    for (const auto& s : res.log)
        std::cerr << "step " << s.iteration << ": rule " << s.rule << " stream " << s.stream << ", " << s.rhombi
                  << " rhombi, removed " << s.removed << ", " << s.vertices << " vertices\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RPH decagonal tilings from generalized point substitution"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "run a GPSP schedule and write the tiling as JSON");
    generate->add_option("--config", gen.config, "plain-text key = value run configuration");
    generate->add_option("--seed", gen.seed, "master seed for RANDOM schedule entries");
    generate->add_option("--depth", gen.depth, "number of GPSP steps");
    generate->add_option("--schedule", gen.schedule, "schedule, e.g. \"LLLLLLLLLL RANDOM(1,1,1,1)\"");
    generate->add_option("--out", gen.out, "output path (stdout when omitted)");

    std::string in_path, out_path;
    AnalysisOptions aopt;
    auto* analyze = app.add_subcommand("analyze", "densities, window, boundary dimension and symmetry as JSON");
    analyze->add_option("file", in_path, "tiling JSON")->required();
    analyze->add_option("--out", out_path, "output path");
    analyze->add_option("--grid-step", aopt.grid_step, "window grid step")->check(CLI::Range(0.005, 0.1));
    analyze->add_option("--clip", aopt.clip, "interior clip factor")->check(CLI::Range(0.05, 1.0));

    auto* classify = app.add_subcommand("classify-wheels", "point group of every wheel diagram as JSON");
    classify->add_option("--out", out_path, "output path");

    std::size_t mc_steps = 10000, check_every = 100;
    std::uint64_t mc_seed = 0;
    auto* flip_mc = app.add_subcommand("flip-mc", "Monte Carlo simpleton flips");
    flip_mc->add_option("file", in_path, "tiling JSON")->required();
    flip_mc->add_option("--steps", mc_steps, "number of flips");
    flip_mc->add_option("--seed", mc_seed, "random seed");
    flip_mc->add_option("--check-every", check_every, "validate every n steps");
    flip_mc->add_option("--out", out_path, "output path for the final tiling");

    bool perp = false;
    auto* svg = app.add_subcommand("export-svg", "render faces (or the perpendicular cloud) as SVG");
    svg->add_option("file", in_path, "tiling JSON")->required();
    svg->add_option("--out", out_path, "output path");
    svg->add_flag("--perp", perp, "draw the perpendicular-space cloud instead of the faces");

    std::string what = "cloud";
    double csv_step = 0.01;
    auto* csv = app.add_subcommand("export-csv", "perpendicular cloud or window boundary as x,y lines");
    csv->add_option("file", in_path, "tiling JSON")->required();
    csv->add_option("--what", what, "cloud or boundary")->check(CLI::IsMember({"cloud", "boundary"}));
    csv->add_option("--grid-step", csv_step, "boundary grid step")->check(CLI::Range(0.005, 0.1));
    csv->add_option("--out", out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadConfig;
    }

    try {
        if (*generate) return cmd_generate(gen);
        if (*analyze) {
            emit(out_path, dump_json(analysis_report(load_valid(in_path), aopt)));
        } else if (*classify) {
            json wheels = json::object();
            for (unsigned b = 0; b < 1024; ++b) {
                const auto w = WheelDiagram::from_bits(b);
                wheels[w.str()] = classify_wheel(w).name();
            }
            json census = json::object();
            for (const auto& [label, n] : wheel_label_census()) census[label] = n;
            emit(out_path, dump_json(json{{"census", std::move(census)}, {"wheels", std::move(wheels)}}));
        } else if (*flip_mc) {
            const auto res = monte_carlo_flips(load_valid(in_path), mc_steps, mc_seed, check_every);
            const auto& tr = res.trace;
            json stats = json::array();
            for (const auto& p : tr.stats)
                stats.push_back(json{{"step", p.step}, {"available", p.available}, {"perp_rms", round_sig(p.perp_rms)}});
            json doc = tiling_to_json(res.tiling);
            doc["trace"] = json{{"steps", tr.moves.size()},
                                {"seed", mc_seed},
                                {"stopped_early", tr.stopped_early},
                                {"validity_checks", tr.validity_checks},
                                {"counts_before", {tr.counts_before.R, tr.counts_before.P, tr.counts_before.H}},
                                {"counts_after", {tr.counts_after.R, tr.counts_after.P, tr.counts_after.H}},
                                {"stats", std::move(stats)}};
            emit(out_path, dump_json(doc));
        } else if (*svg) {
            const auto t = load_valid(in_path);
            emit(out_path, perp ? cloud_svg(perp_cloud(t)) : tiling_svg(t));
        } else if (*csv) {
            const auto cloud = perp_cloud(load_valid(in_path), CloudScope::Supported);
            emit(out_path, points_csv(what == "cloud" ? cloud.points
                                                      : cell_centres(boundary_cells(cloud, csv_step), csv_step)));
        }
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadConfig;
    } catch (const StructuralFault& e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return kInvalid;
    } catch (const FormatError& e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return kInvalid;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    }
}
