#pragma once
// Generalized point substitution: tau^2 expansion, centred-decagon decoration,
// and apex-keyed elimination driven by wheel diagrams or randomized per-rhombus rules.

#include "rph/tiling.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rph {

enum class Chirality : char { L = 'L', R = 'R' };

inline Chirality flip(Chirality c) { return c == Chirality::L ? Chirality::R : Chirality::L; }

/// One chirality flag per acute-apex direction k. An apex with direction k has its edges
/// along k*36 and (k+1)*36 degrees (inward bisector at 18 + 36k degrees). Flag L keeps
/// the counterclockwise candidate and eliminates the clockwise one.
struct WheelDiagram {
    std::array<Chirality, 10> flags{};

    static WheelDiagram uniform(Chirality c) {
        WheelDiagram w;
        w.flags.fill(c);
        return w;
    }

    static WheelDiagram alternating() {
        WheelDiagram w;
        for (std::size_t k = 0; k < 10; ++k) w.flags[k] = k % 2 == 0 ? Chirality::L : Chirality::R;
        return w;
    }

    static WheelDiagram from_bits(unsigned bits) {
        WheelDiagram w;
        for (std::size_t k = 0; k < 10; ++k) w.flags[k] = (bits >> k & 1u) ? Chirality::R : Chirality::L;
        return w;
    }

    static WheelDiagram parse(std::string_view s) {
        if (s.size() != 10) throw std::invalid_argument("wheel diagram must have 10 characters: " + std::string(s));
        WheelDiagram w;
        for (std::size_t k = 0; k < 10; ++k) {
            if (s[k] == 'L') w.flags[k] = Chirality::L;
            else if (s[k] == 'R') w.flags[k] = Chirality::R;
            else throw std::invalid_argument("wheel diagram characters must be L or R: " + std::string(s));
        }
        return w;
    }

    Chirality flag(int k) const { return flags[static_cast<std::size_t>(((k % 10) + 10) % 10)]; }

    unsigned bits() const {
        unsigned b = 0;
        for (std::size_t k = 0; k < 10; ++k)
            if (flags[k] == Chirality::R) b |= 1u << k;
        return b;
    }

    std::string str() const {
        std::string s(10, 'L');
        for (std::size_t k = 0; k < 10; ++k) s[k] = static_cast<char>(flags[k]);
        return s;
    }

    friend bool operator==(const WheelDiagram&, const WheelDiagram&) = default;
};

/// Per-rhombus elimination rule. The rhombus' acute apexes have directions k and k+5
/// (k < 5 is the first apex).
enum class EliminationRule { l, r, m, m_prime };

inline EliminationRule rule_from_flags(Chirality first, Chirality second) {
    if (first == second) return first == Chirality::L ? EliminationRule::l : EliminationRule::r;
    return first == Chirality::L ? EliminationRule::m : EliminationRule::m_prime;
}

inline std::pair<Chirality, Chirality> flags_from_rule(EliminationRule r) {
    switch (r) {
        case EliminationRule::l: return {Chirality::L, Chirality::L};
        case EliminationRule::r: return {Chirality::R, Chirality::R};
        case EliminationRule::m: return {Chirality::L, Chirality::R};
        default: return {Chirality::R, Chirality::L};
    }
}

/// Randomized rule: weights over {l, r, m, m'} and a stream id mixed into the RNG key.
struct RandomRule {
    std::array<double, 4> weights{1.0, 1.0, 1.0, 1.0};
    std::uint64_t stream = 0;
    friend bool operator==(const RandomRule&, const RandomRule&) = default;
};

using ScheduleEntry = std::variant<WheelDiagram, RandomRule>;
using Schedule = std::vector<ScheduleEntry>;

inline std::string describe(const ScheduleEntry& e) {
    if (auto w = std::get_if<WheelDiagram>(&e)) return w->str();
    const auto& r = std::get<RandomRule>(e);
    std::ostringstream os;
    os << "RANDOM(" << r.weights[0] << ',' << r.weights[1] << ',' << r.weights[2] << ',' << r.weights[3] << ')';
    return os.str();
}

// --- counter-based random stream ------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform in [0, 1), a pure function of its key.
inline double stream_uniform(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t iteration,
                             std::uint64_t ordinal) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ iteration);
    h = splitmix64(h ^ ordinal);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline EliminationRule sample_rule(const RandomRule& rr, double u) {
    double total = 0.0;
    for (double w : rr.weights) total += w;
    if (!(total > 0.0)) throw std::invalid_argument("random rule weights must have a positive sum");
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        acc += rr.weights[i] / total;
        if (u < acc) return static_cast<EliminationRule>(i);
    }
    for (std::size_t i = 4; i-- > 0;)
        if (rr.weights[i] > 0) return static_cast<EliminationRule>(i);
    return EliminationRule::l;
}

// --- motif, inflation ---------------------------------------------------------------

/// Centred decagon: [0000] and the rotation orbit of [1100].
inline const std::array<Index4, 11>& motif() {
    static const std::array<Index4, 11> m = [] {
        std::array<Index4, 11> t;
        t[0] = Index4{};
        Index4 s{1, 1, 0, 0};
        for (std::size_t k = 1; k <= 10; ++k) {
            t[k] = s;
            s = rotate36(s);
        }
        return t;
    }();
    return m;
}

/// Steps G1 + G2: every vertex scaled by tau^2 and decorated with the motif.
inline PointSet inflate(const PointSet& vertices) {
    PointSet out;
    out.reserve(vertices.size() * 6);
    for (const auto& v : vertices) {
        const Index4 c = tau2_scale(v);
        for (const auto& m : motif()) out.insert(c + m);
    }
    return out;
}

inline PointSet inflate(const std::vector<Index4>& vertices) {
    return inflate(PointSet(vertices.begin(), vertices.end()));
}

/// Point inflation repeated n times without elimination.
inline PointSet point_inflation_only(const PointSet& seed, int n) {
    PointSet cur = seed;
    for (int i = 0; i < n; ++i) cur = inflate(cur);
    return cur;
}

// --- elimination --------------------------------------------------------------------

struct Rhombus {
    std::array<Index4, 2> apex;  // apex[0] has direction < 5
    std::array<int, 2> dir{};
    friend bool operator==(const Rhombus&, const Rhombus&) = default;
};

/// R faces of a tiling, in canonical lexicographic order of their apex pairs.
inline std::vector<Rhombus> rhombi_of(const Tiling& t) {
    std::vector<Rhombus> out;
    for (const auto& f : t.faces) {
        if (f.kind != FaceKind::R) continue;
        auto ap = acute_apexes(f);
        if (ap.size() != 2) throw StructuralFault("rhombus without two acute apexes", f.cycle.front());
        if (ap[0].second >= 5) std::swap(ap[0], ap[1]);
        out.push_back(Rhombus{{ap[0].first, ap[1].first}, {ap[0].second, ap[1].second}});
    }
    auto key = [](const Rhombus& r) { return std::minmax(r.apex[0], r.apex[1]); };
    std::sort(out.begin(), out.end(), [&](const Rhombus& a, const Rhombus& b) { return key(a) < key(b); });
    return out;
}

/// Chooses the flags (first apex, second apex) for the rhombus with the given ordinal.
using FlagChooser = std::function<std::pair<Chirality, Chirality>(const Rhombus&, std::size_t ordinal)>;

inline FlagChooser wheel_chooser(const WheelDiagram& w) {
    return [w](const Rhombus& r, std::size_t) { return std::pair{w.flag(r.dir[0]), w.flag(r.dir[1])}; };
}

inline FlagChooser random_chooser(const RandomRule& rr, std::uint64_t master_seed, std::uint64_t iteration) {
    return [rr, master_seed, iteration](const Rhombus&, std::size_t ordinal) {
        return flags_from_rule(sample_rule(rr, stream_uniform(master_seed, rr.stream, iteration, ordinal)));
    };
}

/// The two candidates at unit distance from an expanded acute apex:
/// {clockwise (along k), counterclockwise (along k+1)}.
inline std::pair<Index4, Index4> apex_candidates(const Index4& apex, int dir) {
    const Index4 a = tau2_scale(apex);
    return {a + unit_step(dir), a + unit_step(dir + 1)};
}

inline Index4 designated_point(const Index4& apex, int dir, Chirality c) {
    auto [cw, ccw] = apex_candidates(apex, dir);
    return c == Chirality::L ? cw : ccw;
}

struct EliminationResult {
    PointSet points;
    std::size_t designated = 0;
    std::vector<Index4> removed;  // sorted, unique
};

/// Step G3. Every acute apex of every expanded rhombus designates exactly one candidate.
inline EliminationResult eliminate(const PointSet& candidates, const std::vector<Rhombus>& rhombi,
                                   const FlagChooser& choose) {
    EliminationResult res;
    PointSet removed;
    for (std::size_t i = 0; i < rhombi.size(); ++i) {
        const auto& r = rhombi[i];
        const auto [f0, f1] = choose(r, i);
        const std::array<Chirality, 2> fl{f0, f1};
        for (std::size_t a = 0; a < 2; ++a) {
            const Index4 p = designated_point(r.apex[a], r.dir[a], fl[a]);
            if (!candidates.count(p)) throw StructuralFault("designated candidate is missing", p);
            ++res.designated;
            removed.insert(p);
        }
    }
    res.points = candidates;
    for (const auto& p : removed) res.points.erase(p);
    res.removed.assign(removed.begin(), removed.end());
    std::sort(res.removed.begin(), res.removed.end());
    return res;
}

// --- steps and sequences ------------------------------------------------------------

inline Tiling seed_rhombus() {
    const std::vector<Index4> pts{Index4{0, 0, 0, 0}, Index4{1, 0, 0, 0}, Index4{1, 0, 0, -1}, Index4{0, 0, 0, -1}};
    return make_tiling(pts);
}

/// Closed unit-step walk through directions k * 36 degrees, as a single-face seed.
inline Tiling seed_walk(const std::vector<int>& dirs) {
    std::vector<Index4> pts;
    Index4 p{};
    for (int k : dirs) {
        pts.push_back(p);
        p = p + unit_step(k);
    }
    if (p != Index4{}) throw std::invalid_argument("seed walk does not close");
    return make_tiling(pts);
}

inline Tiling seed_pentagon() { return seed_walk({0, 2, 4, 6, 8}); }
inline Tiling seed_hexagon() { return seed_walk({0, 2, 3, 5, 7, 8}); }

struct StepLog {
    int iteration = 0;
    std::string rule;
    std::uint64_t stream = 0;
    std::size_t rhombi = 0;
    std::size_t candidates = 0;
    std::size_t designated = 0;
    std::size_t removed = 0;
    std::size_t vertices = 0;
};

struct StepResult {
    Tiling tiling;
    StepLog log;
    std::vector<Index4> removed;
};

inline FlagChooser chooser_for(const ScheduleEntry& entry, std::uint64_t master_seed, std::uint64_t iteration) {
    if (auto w = std::get_if<WheelDiagram>(&entry)) return wheel_chooser(*w);
    return random_chooser(std::get<RandomRule>(entry), master_seed, iteration);
}

/// One GPSP with an explicit flag chooser. The result is validated; failures throw.
inline StepResult gpsp_step(const Tiling& t, const FlagChooser& choose, std::string rule_name = "custom",
                            int iteration = 0) {
    const auto rhombi = rhombi_of(t);
    const PointSet candidates = inflate(t.vertices);
    auto elim = eliminate(candidates, rhombi, choose);

    std::vector<Index4> region;
    region.reserve(t.region.size());
    for (const auto& p : t.region) region.push_back(tau2_scale(p));

    StepResult out;
    out.tiling = make_tiling(elim.points, std::move(region), t.depth + 1);
    if (auto rep = validate(out.tiling); !rep) throw StructuralFault("GPSP result invalid: " + rep.message, rep.location);
    out.log = StepLog{iteration, std::move(rule_name), 0, rhombi.size(), candidates.size(), elim.designated,
                      elim.removed.size(), out.tiling.vertices.size()};
    out.removed = std::move(elim.removed);
    return out;
}

inline StepResult gpsp_step(const Tiling& t, const ScheduleEntry& entry, std::uint64_t master_seed = 0,
                            int iteration = 0) {
    auto res = gpsp_step(t, chooser_for(entry, master_seed, static_cast<std::uint64_t>(iteration)), describe(entry),
                         iteration);
    if (auto r = std::get_if<RandomRule>(&entry)) res.log.stream = r->stream;
    return res;
}

struct SequenceResult {
    Tiling tiling;
    std::vector<StepLog> log;
    std::vector<Tiling> history;  // seed first; filled when requested
};

/// Applies `steps` GPSPs, cycling through the schedule.
inline SequenceResult run_sequence(const Tiling& seed, const Schedule& schedule, int steps, std::uint64_t master_seed,
                                   bool keep_history = false) {
    if (schedule.empty()) throw std::invalid_argument("schedule must not be empty");
    SequenceResult res;
    res.tiling = seed;
    if (keep_history) res.history.push_back(seed);
    for (int i = 0; i < steps; ++i) {
        const auto& entry = schedule[static_cast<std::size_t>(i) % schedule.size()];
        auto step = gpsp_step(res.tiling, entry, master_seed, i);
        res.log.push_back(step.log);
        res.tiling = std::move(step.tiling);
        if (keep_history) res.history.push_back(res.tiling);
    }
    return res;
}

}  // namespace rph
