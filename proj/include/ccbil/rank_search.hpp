#pragma once

#include "ccbil/bilinear.hpp"

namespace ccb {

struct RankSearchResult {
    std::optional<int> rank;                    // set when found within cap
    std::optional<BilinearAlgorithm> witness;   // a decomposition of that length
    int exhausted_up_to = 0;                    // lengths proven impossible
};

// exact (symmetric) tensor rank by exhaustive search over canonicalized
// elementary tensors, up to cap; guard: q^(2 dim) <= 2^16
RankSearchResult brute_force_rank(AlgebraPtr A, int cap, bool symmetric);

}  // namespace ccb
