#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace geitip {

struct StageSize {
    std::string stage;
    std::size_t variables = 0;
    std::size_t equalities = 0;
    std::size_t inequalities = 0;
};

struct RunStats {
    int attempts = 0;        // elimination-search attempts on the main objective
    int lp_calls = 0;        // exact feasibility solves, anywhere in the run
    std::vector<StageSize> stages;
    double wall_seconds = 0;
};

}  // namespace geitip
