#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace ccb {

// one interpolation cell: `count` distinct points of degree d, each thickened
// to multiplicity u
struct PlanCell {
    int d, u, count;
};

struct PlanResult {
    std::vector<PlanCell> cells;  // sorted by (d, u)
    long cost = 0;
    int degree = 0;
};

// cost of one A_q(d,u) cell; nullopt marks the cell unavailable
using CellCost = std::function<std::optional<long>(int d, int u)>;

// minimum-cost choice of n_{d,u} with sum n_{d,u} d u == target (exact) or
// >= target, subject to sum_u n_{d,u} <= budgets[d]; deterministic
std::optional<PlanResult> plan_cells(const std::vector<long>& budgets, int target, bool exact, int max_u,
                                     const CellCost& cost);

}  // namespace ccb
