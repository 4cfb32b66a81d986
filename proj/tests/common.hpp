#pragma once
// Shared, memoized patches for the test binaries.

#include "rph/rph.hpp"

#include <map>
#include <string>
#include <utility>

namespace rph::testing {

/// Patch after `depth` steps of the schedule from the R seed, cached per process.
inline const Tiling& patch(const std::string& schedule, int depth, const Tiling& seed = seed_rhombus(),
                           const std::string& seed_name = "R") {
    static std::map<std::tuple<std::string, std::string, int>, Tiling> cache;
    const auto key = std::make_tuple(seed_name, schedule, depth);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const Tiling& start = depth > 0 ? patch(schedule, depth - 1, seed, seed_name) : seed;
        Tiling next = depth > 0 ? gpsp_step(start, parse_schedule(schedule)[static_cast<std::size_t>(depth - 1) %
                                                                             parse_schedule(schedule).size()],
                                            0, depth - 1)
                                      .tiling
                                : seed;
        it = cache.emplace(key, std::move(next)).first;
    }
    return it->second;
}

inline const std::string kAllL = "LLLLLLLLLL";
inline const std::string kAllR = "RRRRRRRRRR";
inline const std::string kAlternating = "LRLRLRLRLR";
inline const std::string kFourCycle = "LLLRRRRLLL LLLLLRRRRR LRRLLRLLRR LLRLLLRLRR";

}  // namespace rph::testing
