#include "ccbil/planner.hpp"

#include <algorithm>
#include <limits>

namespace ccb {

namespace {

constexpr long kInf = std::numeric_limits<long>::max() / 4;
// ties in cost break toward fewer thickened points inside one dp run; the
// outer loop then prefers the smallest maximal point degree
constexpr long kScale = 1L << 20;

struct DpRun {
    long combined = kInf;
    int degree = -1;
    std::vector<PlanCell> cells;
};

std::optional<DpRun> run_dp(const std::vector<long>& budgets, int target, bool exact, int max_u,
                            const std::vector<std::vector<std::optional<long>>>& cell_cost, int dmax) {
    int maxdu = 0;
    for (int d = 1; d <= dmax; ++d)
        for (int u = 1; u <= max_u; ++u)
            if (cell_cost[static_cast<size_t>(d)][static_cast<size_t>(u)]) maxdu = std::max(maxdu, d * u);
    if (maxdu == 0) return std::nullopt;
    int cap = exact ? target : target + maxdu;

    std::vector<std::vector<long>> layer(static_cast<size_t>(dmax) + 1);
    std::vector<std::vector<long>> per_degree(static_cast<size_t>(dmax) + 1);
    std::vector<std::vector<std::vector<long>>> cnt_dp(static_cast<size_t>(dmax) + 1);
    std::vector<std::vector<std::vector<int>>> choice(static_cast<size_t>(dmax) + 1);

    std::vector<long> base(static_cast<size_t>(cap) + 1, kInf);
    base[0] = 0;
    std::vector<long> prev = base;
    for (int d = 1; d <= dmax; ++d) {
        long budget = std::min<long>(budgets[static_cast<size_t>(d)], cap / d);
        if (budget < 0) budget = 0;
        auto& dp = cnt_dp[static_cast<size_t>(d)];
        auto& ch = choice[static_cast<size_t>(d)];
        dp.assign(static_cast<size_t>(budget) + 1, std::vector<long>(static_cast<size_t>(cap) + 1, kInf));
        ch.assign(static_cast<size_t>(budget) + 1, std::vector<int>(static_cast<size_t>(cap) + 1, 0));
        dp[0][0] = 0;
        for (long j = 1; j <= budget; ++j)
            for (int deg = 0; deg <= cap; ++deg)
                for (int u = 1; u <= max_u; ++u) {
                    int dd = deg - d * u;
                    if (dd < 0) break;
                    auto c = cell_cost[static_cast<size_t>(d)][static_cast<size_t>(u)];
                    if (!c) continue;
                    long below = dp[static_cast<size_t>(j - 1)][static_cast<size_t>(dd)];
                    if (below >= kInf) continue;
                    if (below + *c < dp[static_cast<size_t>(j)][static_cast<size_t>(deg)]) {
                        dp[static_cast<size_t>(j)][static_cast<size_t>(deg)] = below + *c;
                        ch[static_cast<size_t>(j)][static_cast<size_t>(deg)] = u;
                    }
                }
        auto& best = per_degree[static_cast<size_t>(d)];
        best.assign(static_cast<size_t>(cap) + 1, kInf);
        for (long j = 0; j <= budget; ++j)
            for (int deg = 0; deg <= cap; ++deg)
                best[static_cast<size_t>(deg)] =
                    std::min(best[static_cast<size_t>(deg)], dp[static_cast<size_t>(j)][static_cast<size_t>(deg)]);
        auto& out = layer[static_cast<size_t>(d)];
        out.assign(static_cast<size_t>(cap) + 1, kInf);
        for (int x = 0; x <= cap; ++x)
            for (int y = 0; y <= x; ++y) {
                if (best[static_cast<size_t>(y)] >= kInf || prev[static_cast<size_t>(x - y)] >= kInf) continue;
                out[static_cast<size_t>(x)] =
                    std::min(out[static_cast<size_t>(x)], prev[static_cast<size_t>(x - y)] + best[static_cast<size_t>(y)]);
            }
        prev = out;
    }

    DpRun res;
    if (exact) {
        if (prev[static_cast<size_t>(target)] >= kInf) return std::nullopt;
        res.degree = target;
        res.combined = prev[static_cast<size_t>(target)];
    } else {
        for (int x = target; x <= cap; ++x)
            if (prev[static_cast<size_t>(x)] < res.combined) {
                res.combined = prev[static_cast<size_t>(x)];
                res.degree = x;
            }
        if (res.degree < 0) return std::nullopt;
    }

    int x = res.degree;
    long remaining = res.combined;
    for (int d = dmax; d >= 1; --d) {
        const auto& before = (d == 1) ? base : layer[static_cast<size_t>(d - 1)];
        const auto& best = per_degree[static_cast<size_t>(d)];
        int pick = -1;
        for (int y = 0; y <= x; ++y) {
            if (best[static_cast<size_t>(y)] >= kInf || before[static_cast<size_t>(x - y)] >= kInf) continue;
            if (best[static_cast<size_t>(y)] + before[static_cast<size_t>(x - y)] == remaining) {
                pick = y;
                break;
            }
        }
        if (pick < 0) return std::nullopt;  // cannot happen on a feasible dp
        const auto& dp = cnt_dp[static_cast<size_t>(d)];
        const auto& ch = choice[static_cast<size_t>(d)];
        long jbest = -1;
        for (long j = 0; j < static_cast<long>(dp.size()); ++j)
            if (dp[static_cast<size_t>(j)][static_cast<size_t>(pick)] == best[static_cast<size_t>(pick)]) {
                jbest = j;
                break;
            }
        std::vector<int> mults;
        int deg = pick;
        for (long j = jbest; j > 0; --j) {
            int u = ch[static_cast<size_t>(j)][static_cast<size_t>(deg)];
            mults.push_back(u);
            deg -= d * u;
        }
        std::sort(mults.begin(), mults.end());
        for (size_t i = 0; i < mults.size();) {
            size_t jj = i;
            while (jj < mults.size() && mults[jj] == mults[i]) ++jj;
            res.cells.push_back({d, mults[i], static_cast<int>(jj - i)});
            i = jj;
        }
        remaining -= best[static_cast<size_t>(pick)];
        x -= pick;
    }
    std::sort(res.cells.begin(), res.cells.end(),
              [](const PlanCell& a, const PlanCell& b) { return a.d != b.d ? a.d < b.d : a.u < b.u; });
    return res;
}

}  // namespace

std::optional<PlanResult> plan_cells(const std::vector<long>& budgets, int target, bool exact, int max_u,
                                     const CellCost& cost) {
    int dmax = static_cast<int>(budgets.size()) - 1;
    std::vector<std::vector<std::optional<long>>> cell_cost(static_cast<size_t>(dmax) + 1);
    for (int d = 1; d <= dmax; ++d) {
        cell_cost[static_cast<size_t>(d)].resize(static_cast<size_t>(max_u) + 1);
        if (budgets[static_cast<size_t>(d)] <= 0) continue;
        for (int u = 1; u <= max_u; ++u) {
            auto c = cost(d, u);
            if (c) cell_cost[static_cast<size_t>(d)][static_cast<size_t>(u)] = *c * kScale + d * (u - 1);
        }
    }
    auto full = run_dp(budgets, target, exact, max_u, cell_cost, dmax);
    if (!full) return std::nullopt;
    long want_cost = full->combined / kScale;
    // prefer the smallest maximal point degree among cost-minimal solutions
    for (int dlim = 1; dlim <= dmax; ++dlim) {
        auto sub = run_dp(budgets, target, exact, max_u, cell_cost, dlim);
        if (!sub) continue;
        if (sub->combined / kScale != want_cost) continue;
        PlanResult res;
        res.cells = sub->cells;
        res.cost = want_cost;
        res.degree = sub->degree;
        return res;
    }
    PlanResult res;  // unreachable: dlim == dmax reproduces the full run
    res.cells = full->cells;
    res.cost = want_cost;
    res.degree = full->degree;
    return res;
}

}  // namespace ccb
